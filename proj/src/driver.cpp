#include "eulerchi/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <fmt/format.h>

#include "eulerchi/cech.hpp"
#include "eulerchi/corpus.hpp"
#include "eulerchi/error.hpp"
#include "eulerchi/straight.hpp"

namespace eulerchi {

namespace {

constexpr const char* kIndexing =
    "homological indexing: H_p(X,M) and H_p(d,M) for p in [0, n+1]; H_p = H^{n+1-p} in cohomological indexing";
constexpr const char* kDegrees =
    "zdegree is the degree of the module component of a class in the untwisted complexes: "
    "|t| - p for Koszul, |t| + p for de Rham; no twist by n+1 is applied";

long alternating(int j) { return j % 2 == 0 ? 1 : -1; }

}  // namespace

std::size_t default_workers() {
  if (const char* env = std::getenv("EULERCHI_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, fmt::format("EULERCHI_WORKERS='{}' is not a positive integer", env));
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

bool HomologyReport::any_fail() const { return exit_code(*this) != 0; }

Summary summarize(const std::vector<IdealReport>& ideals) {
  Summary s;
  s.ideals = ideals.size();
  for (const auto& ideal : ideals) {
    if (ideal.additivity) (*ideal.additivity == Verdict::Pass ? s.additivity_pass : s.additivity_fail)++;
    for (const auto& m : ideal.modules) {
      ++s.modules;
      (m.main_theorem == Verdict::Pass ? s.main_pass : s.main_fail)++;
      for (const auto& [var, v] : m.localized) {
        if (v == Verdict::Pass) ++s.localized_pass;
        else if (v == Verdict::Fail) ++s.localized_fail;
        else ++s.localized_not_met;
      }
      if (m.oracle) (*m.oracle == Verdict::Pass ? s.oracle_pass : s.oracle_fail)++;
    }
  }
  return s;
}

int exit_code(const HomologyReport& report) {
  const Summary& s = report.summary;
  return s.main_fail + s.localized_fail + s.additivity_fail + s.oracle_fail == 0 ? 0 : 1;
}

ModuleReport report_module(const StraightModule& m, BoxModule* realized, const OracleResult* box_checks) {
  ModuleReport r;
  const auto& prov = m.provenance();
  r.provenance = prov.describe();
  if (prov.kind == ModuleKind::Localization) {
    r.localized_at = prov.localized_at.mask();
  } else {
    r.j = prov.degree;
  }
  for (Chamber f : all_chambers(m.vars())) r.chambers[f.mask()] = m.dim(f);

  const HomologyTable table = homology_tables(m);
  for (const auto& e : table.entries) (e.kind == ComplexKind::Koszul ? r.koszul : r.derham).push_back(e);
  const EulerCharacteristics chi = euler_characteristics(m, table);
  r.chi_koszul = chi.koszul;
  r.chi_derham = chi.derham;
  r.main_theorem = verify_main_theorem(m, table).verdict;
  for (VarIndex i = 0; i < m.vars(); ++i) r.localized[i] = verify_localized_vanishing(m, table, i).verdict;

  if (realized != nullptr) {
    OracleResult result = cross_check(m, *realized);
    if (box_checks != nullptr && box_checks->verdict != Verdict::Pass) result = *box_checks;
    r.oracle = result.verdict;
    if (result.verdict != Verdict::Pass) r.oracle_detail = result.detail;
  }
  return r;
}

namespace {

OracleResult box_sanity(const BoxRealization& box) {
  OracleResult euler = eulerian_check(box);
  if (euler.verdict != Verdict::Pass) return euler;
  return weyl_relations_check(box);
}

}  // namespace

IdealReport process_ideal(const NormalizedIdeal& input, const RunConfig& config) {
  IdealReport out;
  out.n = config.vars - 1;
  out.radicalized = input.radicalized;

  if (config.modules.kind == ModuleSelector::Kind::Localization) {
    const Chamber t = config.modules.localized_at;
    out.ideal = "";
    StraightModule m = localization_module(t, config.vars, config.field);
    if (config.oracle_radius) {
      // R_{X_T} is the single Cech spot of the principal ideal (X_T).
      SquarefreeIdeal principal = t.mask() == 0 ? SquarefreeIdeal{config.vars - 1, {}}
                                                : make_ideal(config.vars, {t.mask()});
      BoxRealization box = build_box(principal, *config.oracle_radius, config.oracle_limits);
      OracleResult checks = box_sanity(box);
      BoxModule realized = BoxModule::spot(box, principal.gens.empty() ? 0U : 1U);
      out.modules.push_back(report_module(m, &realized, &checks));
    } else {
      out.modules.push_back(report_module(m));
    }
    return out;
  }

  const SquarefreeIdeal& ideal = input.ideal;
  out.ideal = ideal.str();
  CechCohomology cech(ideal, config.field);

  std::vector<int> degrees;
  if (config.modules.kind == ModuleSelector::Kind::Degree) {
    if (config.modules.degree < 0 || config.modules.degree > ideal.num_gens()) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("H^{} requested but ({}) has {} generators",
                                                          config.modules.degree, ideal.str(), ideal.num_gens()));
    }
    degrees.push_back(config.modules.degree);
  } else {
    for (int j = 0; j <= ideal.num_gens(); ++j) degrees.push_back(j);
  }

  std::optional<BoxRealization> box;
  OracleResult checks;
  if (config.oracle_radius) {
    box = build_box(ideal, *config.oracle_radius, config.oracle_limits);
    checks = box_sanity(*box);
  }
  for (int j : degrees) {
    StraightModule m = from_local_cohomology(cech, j);
    if (box) {
      BoxModule realized = BoxModule::local_cohomology(*box, j);
      out.modules.push_back(report_module(m, &realized, &checks));
    } else {
      out.modules.push_back(report_module(m));
    }
  }

  if (config.modules.kind == ModuleSelector::Kind::AllDegrees) {
    long koszul = 0, derham = 0;
    for (const auto& m : out.modules) {
      koszul += alternating(*m.j) * m.chi_koszul;
      derham += alternating(*m.j) * m.chi_derham;
    }
    out.additivity = koszul == 1 && derham == alternating(config.vars) ? Verdict::Pass : Verdict::Fail;
  }
  return out;
}

std::vector<NormalizedIdeal> load_ideals(const RunConfig& config) {
  const bool localization = config.modules.kind == ModuleSelector::Kind::Localization;
  return std::visit(
      [&](const auto& src) -> std::vector<NormalizedIdeal> {
        using S = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<S, NoIdeal>) {
          if (!localization) throw Error(ErrorCode::InvalidArgument, "no ideal source given");
          return {NormalizedIdeal{SquarefreeIdeal{config.vars - 1, {}}, false}};
        } else {
          if (localization) {
            throw Error(ErrorCode::InvalidArgument, "a localization module takes no ideal source");
          }
          if constexpr (std::is_same_v<S, InlineIdeal>) {
            return {parse_ideal(src.text, config.vars, config.strict_squarefree)};
          } else if constexpr (std::is_same_v<S, IdealFile>) {
            std::ifstream in(src.path);
            if (!in) throw Error(ErrorCode::InvalidArgument, fmt::format("cannot open ideal file '{}'", src.path));
            std::vector<NormalizedIdeal> out;
            std::string line;
            while (std::getline(in, line)) {
              auto hash = line.find('#');
              if (hash != std::string::npos) line.erase(hash);
              if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
              out.push_back(parse_ideal(line, config.vars, config.strict_squarefree));
            }
            return out;
          } else {
            std::vector<SquarefreeIdeal> ideals =
                src.sample == 0 ? enumerate_ideals(config.vars) : sample_ideals(config.vars, src.sample, src.seed);
            std::vector<NormalizedIdeal> out;
            for (auto& i : ideals) out.push_back(NormalizedIdeal{std::move(i), false});
            return out;
          }
        }
      },
      config.source);
}

HomologyReport run(const RunConfig& config) {
  if (config.vars < 1 || config.vars > kMaxVars) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("variable count {} out of range", config.vars));
  }
  if (config.oracle_radius && *config.oracle_radius < 3) {
    throw Error(ErrorCode::OutsideInterior, "the oracle needs radius >= 3 so that {-2..1}^{n+1} is interior");
  }
  const auto ideals = load_ideals(config);

  HomologyReport report;
  report.n = config.vars - 1;
  report.field = config.field.name();
  report.ideals.resize(ideals.size());

  std::vector<std::exception_ptr> errors(ideals.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < ideals.size(); k = next++) {
      try {
        report.ideals[k] = process_ideal(ideals[k], config);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(config.workers, 1, std::max<std::size_t>(1, ideals.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  report.summary = summarize(report.ideals);
  return report;
}

std::string verified_line(const HomologyReport& report) {
  return fmt::format("VERIFIED {}/{}", report.summary.main_pass, report.summary.modules);
}

// ---------------------------------------------------------------- json

namespace {

using nlohmann::json;

json entry_json(const HomologyEntry& e) {
  return json{{"p", e.p}, {"t", e.t.entries()}, {"dim", e.dim}, {"zdegree", e.zdegree}};
}

HomologyEntry entry_from(const json& j, ComplexKind kind) {
  return HomologyEntry{kind, j.at("p").get<int>(), ExponentVector(j.at("t").get<std::vector<int>>()),
                       j.at("dim").get<std::size_t>(), j.at("zdegree").get<int>()};
}

Verdict verdict_from(const std::string& s) {
  if (s == "PASS") return Verdict::Pass;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "HYPOTHESIS_NOT_MET") return Verdict::HypothesisNotMet;
  throw Error(ErrorCode::Parse, "unknown verdict '" + s + "'");
}

json module_json(const ModuleReport& m) {
  json j;
  j["provenance"] = m.provenance;
  j["j"] = m.j ? json(*m.j) : json(nullptr);
  j["localized_at"] = m.localized_at ? json(*m.localized_at) : json(nullptr);
  json chambers = json::object();
  for (const auto& [mask, d] : m.chambers) chambers[std::to_string(mask)] = d;
  j["chambers"] = chambers;
  j["koszul"] = json::array();
  for (const auto& e : m.koszul) j["koszul"].push_back(entry_json(e));
  j["derham"] = json::array();
  for (const auto& e : m.derham) j["derham"].push_back(entry_json(e));
  j["chi_koszul"] = m.chi_koszul;
  j["chi_derham"] = m.chi_derham;
  j["main_theorem"] = to_string(m.main_theorem);
  json localized = json::object();
  for (const auto& [var, v] : m.localized) localized[std::to_string(var)] = to_string(v);
  j["localized"] = localized;
  j["oracle"] = m.oracle ? json(to_string(*m.oracle)) : json(nullptr);
  if (m.oracle_detail) j["oracle_detail"] = *m.oracle_detail;
  return j;
}

ModuleReport module_from(const json& j) {
  ModuleReport m;
  m.provenance = j.at("provenance").get<std::string>();
  if (!j.at("j").is_null()) m.j = j.at("j").get<int>();
  if (!j.at("localized_at").is_null()) m.localized_at = j.at("localized_at").get<std::uint32_t>();
  for (const auto& [key, d] : j.at("chambers").items()) m.chambers[std::stoul(key)] = d.get<std::size_t>();
  for (const auto& e : j.at("koszul")) m.koszul.push_back(entry_from(e, ComplexKind::Koszul));
  for (const auto& e : j.at("derham")) m.derham.push_back(entry_from(e, ComplexKind::DeRham));
  m.chi_koszul = j.at("chi_koszul").get<long>();
  m.chi_derham = j.at("chi_derham").get<long>();
  m.main_theorem = verdict_from(j.at("main_theorem").get<std::string>());
  for (const auto& [key, v] : j.at("localized").items()) m.localized[std::stoi(key)] = verdict_from(v.get<std::string>());
  if (!j.at("oracle").is_null()) m.oracle = verdict_from(j.at("oracle").get<std::string>());
  if (j.contains("oracle_detail")) m.oracle_detail = j.at("oracle_detail").get<std::string>();
  return m;
}

json summary_json(const Summary& s) {
  return json{{"ideals", s.ideals},
              {"modules", s.modules},
              {"main_pass", s.main_pass},
              {"main_fail", s.main_fail},
              {"localized_pass", s.localized_pass},
              {"localized_fail", s.localized_fail},
              {"localized_not_met", s.localized_not_met},
              {"additivity_pass", s.additivity_pass},
              {"additivity_fail", s.additivity_fail},
              {"oracle_pass", s.oracle_pass},
              {"oracle_fail", s.oracle_fail}};
}

Summary summary_from(const json& j) {
  Summary s;
  s.ideals = j.at("ideals");
  s.modules = j.at("modules");
  s.main_pass = j.at("main_pass");
  s.main_fail = j.at("main_fail");
  s.localized_pass = j.at("localized_pass");
  s.localized_fail = j.at("localized_fail");
  s.localized_not_met = j.at("localized_not_met");
  s.additivity_pass = j.at("additivity_pass");
  s.additivity_fail = j.at("additivity_fail");
  s.oracle_pass = j.at("oracle_pass");
  s.oracle_fail = j.at("oracle_fail");
  return s;
}

}  // namespace

nlohmann::json to_json(const HomologyReport& report) {
  json j;
  j["n"] = report.n;
  j["field"] = report.field;
  j["indexing"] = kIndexing;
  j["degree_convention"] = kDegrees;
  j["ideals"] = json::array();
  for (const auto& ideal : report.ideals) {
    json b;
    b["n"] = ideal.n;
    b["ideal"] = ideal.ideal;
    b["radicalized"] = ideal.radicalized;
    b["modules"] = json::array();
    for (const auto& m : ideal.modules) b["modules"].push_back(module_json(m));
    b["additivity"] = ideal.additivity ? json(to_string(*ideal.additivity)) : json(nullptr);
    j["ideals"].push_back(std::move(b));
  }
  j["summary"] = summary_json(report.summary);
  return j;
}

HomologyReport report_from_json(const nlohmann::json& j) {
  try {
    HomologyReport r;
    r.n = j.at("n").get<int>();
    r.field = j.at("field").get<std::string>();
    for (const auto& b : j.at("ideals")) {
      IdealReport ideal;
      ideal.n = b.at("n").get<int>();
      ideal.ideal = b.at("ideal").get<std::string>();
      ideal.radicalized = b.at("radicalized").get<bool>();
      for (const auto& m : b.at("modules")) ideal.modules.push_back(module_from(m));
      if (!b.at("additivity").is_null()) ideal.additivity = verdict_from(b.at("additivity").get<std::string>());
      r.ideals.push_back(std::move(ideal));
    }
    r.summary = summary_from(j.at("summary"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, fmt::format("report json: {}", e.what()));
  }
}

// ---------------------------------------------------------------- text

namespace {

std::string module_label(const ModuleReport& m) {
  if (m.j) return fmt::format("{}", *m.j);
  return fmt::format("loc:{}", format_support(m.localized_at.value_or(0)));
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string entries_text(const std::vector<HomologyEntry>& entries) {
  if (entries.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& e : entries) {
    parts.push_back(fmt::format("H_{} = K^{} (strand t = {}, degree {})", e.p, e.dim, e.t.str(), e.zdegree));
  }
  return fmt::format("{}", fmt::join(parts, "; "));
}

}  // namespace

std::string render_csv(const HomologyReport& report) {
  std::string out = "n,ideal,j,class,p,dim,zdegree,chi_koszul,chi_derham,verdict\n";
  for (const auto& ideal : report.ideals) {
    for (const auto& m : ideal.modules) {
      for (ComplexKind kind : {ComplexKind::Koszul, ComplexKind::DeRham}) {
        const auto& entries = kind == ComplexKind::Koszul ? m.koszul : m.derham;
        for (int p = 0; p <= ideal.n + 1; ++p) {
          std::size_t dim = 0;
          std::string zdeg;
          for (const auto& e : entries) {
            if (e.p != p) continue;
            dim += e.dim;
            zdeg = std::to_string(e.zdegree);
          }
          out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", ideal.n, csv_quote(ideal.ideal), module_label(m),
                             to_string(kind), p, dim, zdeg, m.chi_koszul, m.chi_derham, to_string(m.main_theorem));
        }
      }
    }
  }
  return out;
}

std::string render_table(const HomologyReport& report) {
  std::ostringstream os;
  os << fmt::format("# n = {} ({} variables), field {}\n", report.n, report.n + 1, report.field);
  os << "# " << kIndexing << '\n';
  os << "# " << kDegrees << '\n';
  for (const auto& ideal : report.ideals) {
    os << '\n'
       << (ideal.ideal.empty() ? std::string("localization") : fmt::format("ideal ({})", ideal.ideal))
       << (ideal.radicalized ? "  [radical taken]" : "") << '\n';
    for (const auto& m : ideal.modules) {
      os << "  " << m.provenance << '\n';
      std::vector<std::string> chambers;
      for (const auto& [mask, d] : m.chambers) chambers.push_back(fmt::format("{}:{}", format_support(mask), d));
      os << "    chambers      " << fmt::format("{}", fmt::join(chambers, " ")) << '\n';
      os << "    koszul        " << entries_text(m.koszul) << '\n';
      os << "    de rham       " << entries_text(m.derham) << '\n';
      os << fmt::format("    chi           X: {}, d: {}\n", m.chi_koszul, m.chi_derham);
      os << fmt::format("    main theorem  {}\n", to_string(m.main_theorem));
      std::vector<std::string> loc;
      for (const auto& [var, v] : m.localized) loc.push_back(fmt::format("x{} {}", var, to_string(v)));
      os << "    localized     " << fmt::format("{}", fmt::join(loc, ", ")) << '\n';
      if (m.oracle) {
        os << "    oracle        " << to_string(*m.oracle);
        if (m.oracle_detail) os << " (" << *m.oracle_detail << ')';
        os << '\n';
      }
    }
    if (ideal.additivity) os << "  additivity      " << to_string(*ideal.additivity) << '\n';
  }
  const Summary& s = report.summary;
  os << fmt::format("\nsummary: {} ideals, {} modules; main theorem {} pass / {} fail; ", s.ideals, s.modules,
                    s.main_pass, s.main_fail);
  os << fmt::format("localized {} pass / {} fail / {} not applicable; ", s.localized_pass, s.localized_fail,
                    s.localized_not_met);
  os << fmt::format("additivity {} pass / {} fail", s.additivity_pass, s.additivity_fail);
  if (s.oracle_pass + s.oracle_fail > 0) os << fmt::format("; oracle {} pass / {} fail", s.oracle_pass, s.oracle_fail);
  os << '\n';
  return os.str();
}

std::string render(const HomologyReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Table: return render_table(report);
    case OutputFormat::Json: return to_json(report).dump(2) + "\n";
    case OutputFormat::Csv: return render_csv(report);
  }
  return {};
}

}  // namespace eulerchi
