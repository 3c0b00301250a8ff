// Acceptance harness: one PASS/FAIL line per criterion, exit 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "eulerchi/corpus.hpp"
#include "eulerchi/driver.hpp"
#include "eulerchi/homology.hpp"
#include "eulerchi/oracle.hpp"
#include "eulerchi/straight.hpp"

using namespace eulerchi;

namespace {

constexpr std::uint64_t kSampleSeed = 1;
constexpr std::size_t kSampleSize = 100;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

int failures = 0;

void report(int id, const std::string& name, double seconds, double limit, Outcome out) {
  if (limit > 0 && seconds >= limit) out.require(false, fmt::format("took {:.3f}s, limit {}s", seconds, limit));
  if (!out.ok) ++failures;
  fmt::print("{} [{}] {} ({:.3f}s{}){}{}\n", out.ok ? "PASS" : "FAIL", id, name, seconds,
             limit > 0 ? fmt::format(" < {}s", limit) : "", out.note.empty() ? "" : ": ", out.note);
  std::fflush(stdout);
}

double timed(const std::function<void()>& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

long sign(int k) { return k % 2 == 0 ? 1 : -1; }

// Entries gathered from criteria 1-5 for the concentration check.
struct TaggedEntry {
  int vars;
  HomologyEntry entry;
};
std::vector<TaggedEntry> seen_entries;

void collect(int vars, const HomologyTable& t) {
  for (const auto& e : t.entries) seen_entries.push_back({vars, e});
}

void collect(int vars, const ModuleReport& m) {
  for (const auto& e : m.koszul) seen_entries.push_back({vars, e});
  for (const auto& e : m.derham) seen_entries.push_back({vars, e});
}

std::size_t dim_at(const HomologyTable& t, ComplexKind kind, int p) { return t.dims(kind)[p]; }

// Families of nonempty subsets with no containments, counted by brute force.
std::size_t count_antichains(int vars) {
  const std::uint32_t subsets = (1U << vars) - 1;
  std::size_t count = 0;
  for (std::uint64_t family = 0; family < (1ULL << subsets); ++family) {
    bool ok = true;
    for (std::uint32_t a = 0; a < subsets && ok; ++a)
      for (std::uint32_t b = 0; b < subsets && ok; ++b)
        if (a != b && ((family >> a) & 1U) && ((family >> b) & 1U) && ((a + 1) & ~(b + 1)) == 0) ok = false;
    if (ok) ++count;
  }
  return count;
}

RunConfig corpus_config(int vars, std::size_t sample) {
  RunConfig c;
  c.vars = vars;
  c.source = CorpusSource{sample, kSampleSeed};
  c.workers = default_workers();
  return c;
}

}  // namespace

int main() {
  std::vector<HomologyReport> corpus_reports;  // criterion 3, reused by 8 and 9

  {
    Outcome out;
    double t = timed([&] {
      for (int vars = 1; vars <= 4; ++vars) {
        std::vector<std::uint32_t> gens;
        for (int i = 0; i < vars; ++i) gens.push_back(1U << i);
        StraightModule m = from_local_cohomology(make_ideal(vars, gens), vars);
        out.require(m.dims() == injective_hull(vars).dims(), fmt::format("v={}: top module is not E(K)", vars));
        HomologyTable table = homology_tables(m);
        collect(vars, table);
        for (int p = 0; p <= vars; ++p) {
          out.require(dim_at(table, ComplexKind::Koszul, p) == (p == vars ? 1U : 0U),
                      fmt::format("v={}: dim H_{}(X) = {}", vars, p, dim_at(table, ComplexKind::Koszul, p)));
          out.require(dim_at(table, ComplexKind::DeRham, p) == (p == 0 ? 1U : 0U),
                      fmt::format("v={}: dim H_{}(d) = {}", vars, p, dim_at(table, ComplexKind::DeRham, p)));
        }
      }
    });
    report(1, "E(K) fixtures, v = 1..4", t, 1.0, out);
  }

  {
    Outcome out;
    double t = timed([&] {
      StraightModule rx = localization_module(Chamber(0b1), 1);
      HomologyTable table = homology_tables(rx);
      collect(1, table);
      out.require(dim_at(table, ComplexKind::DeRham, 0) == 1, "H_0(d, R_X) != K");
      out.require(dim_at(table, ComplexKind::DeRham, 1) == 1, "H_1(d, R_X) != K");
      out.require(table.chi_derham == 0, "chi(d, R_X) != 0");
      out.require(dim_at(table, ComplexKind::Koszul, 0) == 0 && dim_at(table, ComplexKind::Koszul, 1) == 0,
                  "Koszul homology of R_X is nonzero");
    });
    report(2, "R_X fixtures, n = 0", t, 0.1, out);
  }

  {
    Outcome out;
    std::vector<std::string> counts;
    double t = timed([&] {
      for (int vars = 1; vars <= 5; ++vars) {
        HomologyReport r = run(corpus_config(vars, vars == 5 ? kSampleSize : 0));
        const std::size_t expected = vars == 5 ? kSampleSize : count_antichains(vars);
        out.require(r.ideals.size() == expected,
                    fmt::format("v={}: {} ideals, expected {}", vars, r.ideals.size(), expected));
        counts.push_back(fmt::format("{}", r.ideals.size()));
        for (const auto& ideal : r.ideals) {
          for (const auto& m : ideal.modules) {
            out.require(m.main_theorem == Verdict::Pass,
                        fmt::format("v={}: {} gives chi = ({}, {})", vars, m.provenance, m.chi_koszul, m.chi_derham));
            collect(vars, m);
          }
          out.require(!ideal.modules.empty(), "ideal without modules");
        }
        out.require(verified_line(r) == fmt::format("VERIFIED {0}/{0}", r.summary.modules),
                    fmt::format("v={}: {}", vars, verified_line(r)));
        corpus_reports.push_back(std::move(r));
      }
    });
    report(3,
           fmt::format("main theorem on every corpus ideal and degree, v = 1..4 exhaustive ({} ideals, unit ideal "
                       "excluded), v = 5 sample ({} ideals, seed {})",
                       fmt::join(counts.begin(), counts.end() - 1, ", "), counts.back(), kSampleSeed),
           t, 60.0, out);
  }

  {
    Outcome out;
    std::size_t modules = 0;
    double t = timed([&] {
      for (int vars = 1; vars <= 4; ++vars)
        for (Chamber f : all_chambers(vars)) {
          if (!f.contains(0)) continue;
          StraightModule m = localization_module(f, vars);
          HomologyTable table = homology_tables(m);
          collect(vars, table);
          TheoremVerdict v = verify_localized_vanishing(m, table, 0);
          out.require(v.verdict == Verdict::Pass, fmt::format("{}: {}", m.provenance().describe(), to_string(v.verdict)));
          out.require(table.chi_derham == 0, fmt::format("{}: chi(d) = {}", m.provenance().describe(), table.chi_derham));
          for (auto d : table.dims(ComplexKind::Koszul))
            out.require(d == 0, fmt::format("{}: Koszul homology nonzero", m.provenance().describe()));
          ++modules;
        }
    });
    report(4, fmt::format("localized vanishing for R_(X_T), 0 in T, v <= 4 ({} modules)", modules), t, 1.0, out);
  }

  std::vector<OracleResult> box_eulerian;
  {
    Outcome out;
    std::size_t pairs = 0, checks = 0;
    double t = timed([&] {
      for (int vars = 1; vars <= 3; ++vars)
        for (const SquarefreeIdeal& ideal : enumerate_ideals(vars)) {
          BoxRealization box = build_box(ideal, 4);
          box_eulerian.push_back(eulerian_check(box));
          CechCohomology cech(ideal);
          for (const StraightModule& m : all_local_cohomology(cech)) {
            collect(vars, homology_tables(m));
            OracleResult r = cross_check(m, box, m.provenance().degree);
            out.require(r.verdict == Verdict::Pass, fmt::format("{}: {}", m.provenance().describe(), r.detail));
            out.require(r.skipped.empty(), fmt::format("{}: {} assertions skipped", m.provenance().describe(),
                                                       r.skipped.size()));
            checks += r.checks;
            ++pairs;
          }
        }
    });
    report(5, fmt::format("oracle cross-check at B = 4, v <= 3 ({} modules, {} assertions)", pairs, checks), t, 120.0,
           out);
  }

  {
    Outcome out;
    std::size_t probes = 0;
    double t = timed([&] {
      for (const auto& r : box_eulerian) out.require(r.verdict == Verdict::Pass, r.detail);
      for (int vars = 1; vars <= 4; ++vars)
        for (const SquarefreeIdeal& ideal : enumerate_ideals(vars)) {
          CechCohomology cech(ideal);
          for (const StraightModule& m : all_local_cohomology(cech)) {
            // every chamber is met by a probe in {-2..1}^{n+1}
            std::vector<int> a(vars, -2);
            while (true) {
              ExponentVector e(a);
              out.require(is_eulerian_at(m, e), fmt::format("{} at {}", m.provenance().describe(), e.str()));
              ++probes;
              int k = 0;
              while (k < vars && a[k] == 1) a[k++] = -2;
              if (k == vars) break;
              ++a[k];
            }
          }
        }
    });
    report(6, fmt::format("Eulerian identity on {} boxes and {} chamber probes", box_eulerian.size(), probes), t, 0,
           out);
  }

  {
    Outcome out;
    for (const auto& [vars, e] : seen_entries) {
      if (e.dim == 0) continue;
      if (e.kind == ComplexKind::Koszul) {
        out.require(e.t == ExponentVector::zero(vars) && e.zdegree == -e.p,
                    fmt::format("Koszul H_{} at {} in degree {}", e.p, e.t.str(), e.zdegree));
      } else {
        out.require(e.t == ExponentVector::constant(vars, -1) && e.zdegree == e.p - vars,
                    fmt::format("de Rham H_{} at {} in degree {}", e.p, e.t.str(), e.zdegree));
      }
    }
    report(7, fmt::format("concentration and degrees of {} nonzero entries", seen_entries.size()), 0, 0, out);
  }

  {
    Outcome out;
    std::size_t ideals = 0;
    for (const auto& r : corpus_reports) {
      const int vars = r.n + 1;
      for (const auto& ideal : r.ideals) {
        long x = 0, d = 0;
        for (const auto& m : ideal.modules) {
          x += sign(*m.j) * m.chi_koszul;
          d += sign(*m.j) * m.chi_derham;
        }
        out.require(x == 1 && d == sign(vars),
                    fmt::format("v={} ideal ({}): sums ({}, {})", vars, ideal.ideal, x, d));
        ++ideals;
      }
    }
    report(8, fmt::format("additivity over {} corpus ideals", ideals), 0, 0, out);
  }

  {
    Outcome out;
    double t = timed([&] {
      for (const auto& first : corpus_reports) {
        const int vars = first.n + 1;
        const std::string a = render(first, OutputFormat::Json);
        const std::string b = render(run(corpus_config(vars, vars == 5 ? kSampleSize : 0)), OutputFormat::Json);
        out.require(a == b, fmt::format("v={}: JSON reports differ", vars));
      }
    });
    report(9, "byte-identical JSON across consecutive corpus runs", t, 0, out);
  }

  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
