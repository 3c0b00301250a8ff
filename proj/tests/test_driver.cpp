#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "eulerchi/driver.hpp"
#include "eulerchi/error.hpp"
#include "json.hpp"

using namespace eulerchi;

namespace {

RunConfig inline_config(int vars, std::string ideal) {
  RunConfig c;
  c.vars = vars;
  c.source = InlineIdeal{std::move(ideal)};
  return c;
}

std::size_t total(const std::vector<HomologyEntry>& entries, int p) {
  std::size_t d = 0;
  for (const auto& e : entries)
    if (e.p == p) d += e.dim;
  return d;
}

ErrorCode code_of(const RunConfig& c) {
  try {
    run(c);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("maximal ideal in two variables") {
  HomologyReport r = run(inline_config(2, "x0,x1"));
  REQUIRE(r.ideals.size() == 1);
  const IdealReport& i = r.ideals[0];
  REQUIRE(i.modules.size() == 3);
  const ModuleReport& top = i.modules[2];
  CHECK(total(top.koszul, 2) == 1);
  CHECK(total(top.derham, 0) == 1);
  CHECK(top.chi_koszul == 1);
  CHECK(top.chi_derham == 1);
  CHECK(top.main_theorem == Verdict::Pass);
  CHECK(i.additivity == Verdict::Pass);
  CHECK(exit_code(r) == 0);
  CHECK(render_table(r).find("PASS") != std::string::npos);
}

TEST_CASE("principal ideal with the oracle") {
  RunConfig c = inline_config(2, "x0*x1");
  c.oracle_radius = 4;
  HomologyReport r = run(c);
  const ModuleReport& h1 = r.ideals[0].modules[1];
  CHECK(h1.chi_koszul == -1);
  CHECK(h1.chi_derham == -1);
  CHECK(h1.main_theorem == Verdict::Pass);
  CHECK(h1.oracle == Verdict::Pass);
  CHECK(verified_line(r) == "VERIFIED 2/2");
}

TEST_CASE("zero ideal") {
  HomologyReport r = run(inline_config(1, ""));
  REQUIRE(r.ideals[0].modules.size() == 1);
  CHECK(r.ideals[0].modules[0].chi_koszul == 1);
  CHECK(r.ideals[0].modules[0].chi_derham == -1);
  CHECK(r.ideals[0].modules[0].main_theorem == Verdict::Pass);
}

TEST_CASE("localization selector") {
  RunConfig c;
  c.vars = 2;
  c.modules.kind = ModuleSelector::Kind::Localization;
  c.modules.localized_at = Chamber(0b01);
  c.oracle_radius = 3;
  HomologyReport r = run(c);
  const ModuleReport& m = r.ideals[0].modules[0];
  CHECK(m.localized_at == 0b01U);
  CHECK(m.localized.at(0) == Verdict::Pass);
  CHECK(m.localized.at(1) == Verdict::HypothesisNotMet);
  CHECK(m.oracle == Verdict::Pass);
  CHECK(m.chi_derham == 0);
  c.source = InlineIdeal{"x0"};
  CHECK(code_of(c) == ErrorCode::InvalidArgument);
}

TEST_CASE("input errors") {
  CHECK(code_of(inline_config(2, "1")) == ErrorCode::UnitIdeal);
  CHECK(code_of(inline_config(2, "x0*")) == ErrorCode::Parse);
  RunConfig strict = inline_config(2, "x0^2");
  strict.strict_squarefree = true;
  CHECK(code_of(strict) == ErrorCode::NonSquarefree);
  RunConfig big = inline_config(4, "x0");
  big.oracle_radius = 3;
  CHECK(code_of(big) == ErrorCode::BoxTooLarge);
  RunConfig small = inline_config(2, "x0");
  small.oracle_radius = 2;
  CHECK(code_of(small) == ErrorCode::OutsideInterior);
  RunConfig none;
  none.vars = 2;
  CHECK(code_of(none) == ErrorCode::InvalidArgument);
  RunConfig degree = inline_config(2, "x0");
  degree.modules.kind = ModuleSelector::Kind::Degree;
  degree.modules.degree = 3;
  CHECK(code_of(degree) == ErrorCode::InvalidArgument);
}

TEST_CASE("radicalized input is flagged") {
  HomologyReport r = run(inline_config(3, "x0^2*x1, x0*x1*x2"));
  CHECK(r.ideals[0].radicalized);
  CHECK(r.ideals[0].ideal == "x0*x1");
}

TEST_CASE("ideal files") {
  const auto path = std::filesystem::temp_directory_path() / "eulerchi_ideals.txt";
  {
    std::ofstream out(path);
    out << "x0*x1, x1*x2\n# comment\n\nx0,x1,x2\n";
  }
  RunConfig c;
  c.vars = 3;
  c.source = IdealFile{path.string()};
  HomologyReport r = run(c);
  CHECK(r.ideals.size() == 2);
  CHECK(exit_code(r) == 0);
  std::filesystem::remove(path);
  CHECK(code_of(c) == ErrorCode::InvalidArgument);
}

TEST_CASE("json round trip and summary recomputation") {
  RunConfig c;
  c.vars = 3;
  c.source = CorpusSource{};
  c.oracle_radius = 3;
  c.workers = 3;
  HomologyReport r = run(c);
  CHECK(r.ideals.size() == 19);
  CHECK(summarize(r.ideals) == r.summary);
  CHECK(r.summary.main_pass == r.summary.modules);
  CHECK(r.summary.oracle_pass == r.summary.modules);
  CHECK(r.summary.additivity_pass == 19);
  const nlohmann::json j = to_json(r);
  CHECK(report_from_json(j) == r);
  CHECK(report_from_json(nlohmann::json::parse(j.dump(2))) == r);
  CHECK(j.contains("indexing"));
  CHECK(j.contains("degree_convention"));
  for (const char* key : {"n", "ideal", "modules", "additivity"}) CHECK(j["ideals"][0].contains(key));
  for (const char* key : {"provenance", "chambers", "koszul", "derham", "chi_koszul", "chi_derham", "main_theorem",
                          "localized", "oracle"})
    CHECK(j["ideals"][0]["modules"][0].contains(key));
  CHECK_THROWS_AS(report_from_json(nlohmann::json::parse(R"({"n": 1})")), Error);
}

TEST_CASE("worker count does not change the report") {
  RunConfig c;
  c.vars = 4;
  c.source = CorpusSource{};
  c.workers = 1;
  const std::string one = render(run(c), OutputFormat::Json);
  c.workers = 4;
  CHECK(render(run(c), OutputFormat::Json) == one);
  CHECK(render(run(c), OutputFormat::Json) == one);
}

TEST_CASE("csv layout") {
  HomologyReport r = run(inline_config(2, "x0*x1"));
  const std::string csv = render_csv(r);
  CHECK(csv.rfind("n,ideal,j,class,p,dim,zdegree,chi_koszul,chi_derham,verdict\n", 0) == 0);
  CHECK(csv.find("1,\"x0*x1\",1,derham,1,2,-1,-1,-1,PASS") != std::string::npos);
}

TEST_CASE("a failing verdict gives exit code 1") {
  HomologyReport r = run(inline_config(2, "x0"));
  CHECK(exit_code(r) == 0);
  r.ideals[0].modules[0].main_theorem = Verdict::Fail;
  r.summary = summarize(r.ideals);
  CHECK(exit_code(r) == 1);
  CHECK(r.any_fail());
}

TEST_CASE("prime field runs agree with rational runs") {
  RunConfig c;
  c.vars = 4;
  c.source = CorpusSource{};
  HomologyReport q = run(c);
  c.field = Field::prime(1000003);
  HomologyReport p = run(c);
  REQUIRE(q.ideals.size() == p.ideals.size());
  for (std::size_t k = 0; k < q.ideals.size(); ++k) CHECK(q.ideals[k].modules == p.ideals[k].modules);
}

TEST_CASE("worker count from the environment") {
  setenv("EULERCHI_WORKERS", "3", 1);
  CHECK(default_workers() == 3);
  setenv("EULERCHI_WORKERS", "zero", 1);
  CHECK_THROWS_AS(default_workers(), Error);
  unsetenv("EULERCHI_WORKERS");
  CHECK(default_workers() >= 1);
}
