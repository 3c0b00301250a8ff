// Command-line driver: Koszul and de Rham homology of H^j_I(R) for squarefree
// monomial ideals, with Euler-characteristic verdicts.

#include <fstream>
#include <iostream>
#include <string>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "eulerchi/driver.hpp"
#include "eulerchi/error.hpp"

namespace {

using namespace eulerchi;

ModuleSelector parse_selector(const std::string& text, int vars) {
  ModuleSelector sel;
  if (text == "all") return sel;
  if (text.rfind("loc:", 0) == 0) {
    sel.kind = ModuleSelector::Kind::Localization;
    std::uint32_t mask = 0;
    std::string rest = text.substr(4);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t comma = rest.find(',', pos);
      std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!item.empty() && (item[0] == 'x' || item[0] == 'X')) item.erase(0, 1);
      int i = -1;
      try {
        i = std::stoi(item);
      } catch (const std::exception&) {
      }
      if (i < 0 || i >= vars) throw Error(ErrorCode::Parse, fmt::format("bad variable '{}' in '{}'", item, text));
      mask |= 1U << i;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    sel.localized_at = Chamber(mask);
    return sel;
  }
  try {
    std::size_t used = 0;
    sel.degree = std::stoi(text, &used);
    if (used != text.size() || sel.degree < 0) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, fmt::format("module selector '{}' is not 'all', a degree, or loc:<vars>", text));
  }
  sel.kind = ModuleSelector::Kind::Degree;
  return sel;
}

Field parse_field_option(const std::string& text) {
  if (text == "rational" || text == "Q") return Field::rationals();
  std::string digits = text;
  for (const char* prefix : {"prime:", "F_"}) {
    if (digits.rfind(prefix, 0) == 0) digits = digits.substr(std::string(prefix).size());
  }
  try {
    std::size_t used = 0;
    unsigned long long p = std::stoull(digits, &used);
    if (used == digits.size()) return Field::prime(p);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::Parse, fmt::format("field '{}' is not 'rational' or 'prime:<p>'", text));
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::UnitIdeal:
    case ErrorCode::NonSquarefree:
    case ErrorCode::InvalidArgument:
    case ErrorCode::BoxTooLarge:
    case ErrorCode::OutsideInterior:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszul and de Rham homology of local cohomology of squarefree monomial ideals"};

  int vars = 0;
  std::string ideal_text, ideal_file, module_text = "all", field_text = "rational", format_text = "table";
  std::string output_path;
  bool corpus = false, strict = false, unbounded = false;
  std::size_t sample = 0, workers = 0;
  std::uint64_t seed = 1;
  int oracle = 0;

  app.add_option("--vars", vars, "number of variables n+1")->required()->check(CLI::Range(1, kMaxVars));
  auto* inline_opt = app.add_option("--ideal", ideal_text, "generators, e.g. \"x0*x1, x1^2*x2\"; empty for (0)");
  auto* file_opt = app.add_option("--ideal-file", ideal_file, "file with one ideal per line");
  auto* corpus_opt = app.add_flag("--corpus", corpus, "all squarefree monomial ideals in --vars variables");
  inline_opt->excludes(file_opt)->excludes(corpus_opt);
  file_opt->excludes(corpus_opt);
  app.add_option("--sample", sample, "with --corpus: draw this many ideals instead of all")->needs(corpus_opt);
  app.add_option("--seed", seed, "with --sample: shuffle seed")->needs(corpus_opt);
  app.add_option("--module", module_text, "all | <j> | loc:<i,j,...>");
  app.add_option("--field", field_text, "rational | prime:<p>");
  app.add_option("--oracle", oracle, "cross-check against a box realization of this radius (>= 3)");
  app.add_flag("--oracle-unbounded", unbounded, "lift the oracle's variable and size caps");
  app.add_option("--format", format_text, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--output", output_path, "write the report here instead of stdout");
  app.add_flag("--strict-squarefree", strict, "reject non-squarefree generators instead of taking radicals");
  app.add_option("--workers", workers, "worker threads (default: $EULERCHI_WORKERS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config;
    config.vars = vars;
    if (!inline_opt->empty()) {
      config.source = InlineIdeal{ideal_text};
    } else if (!file_opt->empty()) {
      config.source = IdealFile{ideal_file};
    } else if (corpus) {
      config.source = CorpusSource{sample, seed};
    }
    config.modules = parse_selector(module_text, vars);
    config.field = parse_field_option(field_text);
    if (oracle != 0) config.oracle_radius = oracle;
    if (unbounded) config.oracle_limits = BoxLimits::raised();
    config.format = format_text == "json" ? OutputFormat::Json
                    : format_text == "csv" ? OutputFormat::Csv
                                           : OutputFormat::Table;
    if (!output_path.empty()) config.output_path = output_path;
    config.strict_squarefree = strict;
    config.workers = workers != 0 ? workers : default_workers();

    HomologyReport report = run(config);
    const std::string text = render(report, config.format);
    if (config.output_path) {
      std::ofstream out(*config.output_path, std::ios::binary);
      if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + *config.output_path);
      out << text;
      std::cout << verified_line(report) << '\n';
    } else {
      std::cout << text;
      (config.format == OutputFormat::Table ? std::cout : std::cerr) << verified_line(report) << '\n';
    }
    return exit_code(report);
  } catch (const Error& e) {
    std::cerr << "eulerchi: " << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 1;
  }
}
