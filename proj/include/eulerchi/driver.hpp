#pragma once

// End-to-end runs: ideals in, verification reports out.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "eulerchi/exactlin.hpp"
#include "eulerchi/homology.hpp"
#include "eulerchi/monomial.hpp"
#include "eulerchi/oracle.hpp"

namespace eulerchi {

enum class OutputFormat { Table, Json, Csv };

struct InlineIdeal {
  std::string text;
};
struct IdealFile {
  std::string path;
};
/// Exhaustive when `sample == 0`, otherwise `sample` seeded draws.
struct CorpusSource {
  std::size_t sample = 0;
  std::uint64_t seed = 0;
};
/// Only valid with a localization selector.
struct NoIdeal {};

using IdealSource = std::variant<NoIdeal, InlineIdeal, IdealFile, CorpusSource>;

struct ModuleSelector {
  enum class Kind { AllDegrees, Degree, Localization };
  Kind kind = Kind::AllDegrees;
  int degree = 0;
  Chamber localized_at;
};

struct RunConfig {
  int vars = 0;  // n + 1
  IdealSource source;
  ModuleSelector modules;
  Field field;
  std::optional<int> oracle_radius;
  BoxLimits oracle_limits;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::string> output_path;
  bool strict_squarefree = false;
  std::size_t workers = 1;
};

/// Worker count from EULERCHI_WORKERS, defaulting to the hardware concurrency.
std::size_t default_workers();

struct ModuleReport {
  std::string provenance;
  std::optional<int> j;                     // set for H^j_I(R)
  std::optional<std::uint32_t> localized_at;  // set for R_{X_T}
  std::map<std::uint32_t, std::size_t> chambers;
  std::vector<HomologyEntry> koszul;
  std::vector<HomologyEntry> derham;
  long chi_koszul = 0;
  long chi_derham = 0;
  Verdict main_theorem = Verdict::Fail;
  std::map<int, Verdict> localized;
  std::optional<Verdict> oracle;
  std::optional<std::string> oracle_detail;

  friend bool operator==(const ModuleReport&, const ModuleReport&) = default;
};

struct IdealReport {
  int n = 0;
  std::string ideal;
  bool radicalized = false;
  std::vector<ModuleReport> modules;
  /// Sum_j (-1)^j chi(., H^j_I(R)) checks; only when every degree j was computed.
  std::optional<Verdict> additivity;

  friend bool operator==(const IdealReport&, const IdealReport&) = default;
};

struct Summary {
  std::size_t ideals = 0;
  std::size_t modules = 0;
  std::size_t main_pass = 0;
  std::size_t main_fail = 0;
  std::size_t localized_pass = 0;
  std::size_t localized_fail = 0;
  std::size_t localized_not_met = 0;
  std::size_t additivity_pass = 0;
  std::size_t additivity_fail = 0;
  std::size_t oracle_pass = 0;
  std::size_t oracle_fail = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct HomologyReport {
  int n = 0;
  std::string field = "Q";
  std::vector<IdealReport> ideals;
  Summary summary;

  bool any_fail() const;
  friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

Summary summarize(const std::vector<IdealReport>& ideals);

/// Report block for one module; the box realization is used when given.
ModuleReport report_module(const StraightModule& m, BoxModule* realized = nullptr,
                           const OracleResult* box_checks = nullptr);

IdealReport process_ideal(const NormalizedIdeal& ideal, const RunConfig& config);

/// Resolves the ideal source into a list of normalized ideals.
std::vector<NormalizedIdeal> load_ideals(const RunConfig& config);

/// Throws eulerchi::Error on invalid input.
HomologyReport run(const RunConfig& config);

/// 0 when every verdict is PASS or HYPOTHESIS_NOT_MET, 1 otherwise.
int exit_code(const HomologyReport& report);

std::string render(const HomologyReport& report, OutputFormat format);
std::string render_table(const HomologyReport& report);
std::string render_csv(const HomologyReport& report);
nlohmann::json to_json(const HomologyReport& report);
HomologyReport report_from_json(const nlohmann::json& j);

/// "VERIFIED k/m" over the main-theorem verdicts.
std::string verified_line(const HomologyReport& report);

}  // namespace eulerchi
