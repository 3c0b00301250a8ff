#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eulerchi/error.hpp"
#include "eulerchi/straight.hpp"

using namespace eulerchi;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(EULERCHI_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint32_t permute_mask(std::uint32_t m, const std::vector<int>& perm) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if ((m >> i) & 1U) out |= 1U << perm[i];
  return out;
}

SquarefreeIdeal random_ideal(std::mt19937_64& rng, int vars) {
  std::vector<std::uint32_t> supports;
  const int count = static_cast<int>(rng() % 5);
  for (int g = 0; g < count; ++g) supports.push_back(static_cast<std::uint32_t>(rng() % ((1U << vars) - 1)) + 1);
  return make_ideal(vars, supports);
}

std::vector<std::size_t> d(std::initializer_list<std::size_t> v) { return v; }

}  // namespace

TEST_CASE("from_local_cohomology examples") {
  StraightModule e = from_local_cohomology(make_ideal(2, {0b01, 0b10}), 2);
  CHECK(e.dims() == d({0, 0, 0, 1}));

  StraightModule h = from_local_cohomology(make_ideal(2, {0b01}), 1);
  CHECK(h.dims() == d({0, 1, 0, 0}));
  CHECK(h.u(Chamber(0b01), 0).rows() == 0);
  CHECK(h.u(Chamber(0b01), 0).cols() == 1);

  StraightModule g = from_local_cohomology(make_ideal(2, {0b11}), 1);
  CHECK(g.dims() == d({0, 1, 1, 1}));
  CHECK(g.u(Chamber(0b11), 0) == ExactMatrix{{1}});
  CHECK(g.u(Chamber(0b11), 1) == ExactMatrix{{1}});
  CHECK(g.u(Chamber(0b01), 0).rows() == 0);
}

TEST_CASE("localization_module examples") {
  StraightModule r = localization_module(Chamber(0), 2);
  CHECK(r.dims() == d({1, 0, 0, 0}));
  StraightModule rx = localization_module(Chamber(0b1), 1);
  CHECK(rx.dims() == d({1, 1}));
  CHECK(rx.u(Chamber(0b1), 0) == ExactMatrix{{1}});
  CHECK(localization_module(Chamber(0b11), 2).dims() == d({1, 1, 1, 1}));
}

TEST_CASE("x_action and d_action examples") {
  StraightModule rx = localization_module(Chamber(0b1), 1);
  CHECK(x_action(rx, {-2}, 0) == ExactMatrix{{1}});
  ExactMatrix z = d_action(rx, {0}, 0);
  CHECK(z.rows() == 1);
  CHECK(z.is_zero());
  CHECK(d_action(rx, {-1}, 0) == ExactMatrix{{-1}});

  StraightModule h = from_local_cohomology(make_ideal(2, {0b01}), 1);
  ExactMatrix x = x_action(h, {-1, 0}, 0);
  CHECK(x.rows() == 0);
  CHECK(x.cols() == 1);
  ExactMatrix empty = x_action(h, {0, 0}, 1);
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 0);

  CHECK(d_action(injective_hull(1), {-3}, 0) == ExactMatrix{{-3}});
}

TEST_CASE("injective hull is top local cohomology of the maximal ideal") {
  for (int vars = 1; vars <= 4; ++vars) {
    StraightModule e = injective_hull(vars);
    for (Chamber f : all_chambers(vars)) CHECK(e.dim(f) == (f.size() == vars ? 1U : 0U));
  }
}

TEST_CASE("Eulerian identity on random probes") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int vars = 1 + static_cast<int>(rng() % 3);
    const SquarefreeIdeal ideal = random_ideal(rng, vars);
    CechCohomology cech(ideal);
    for (const StraightModule& m : all_local_cohomology(cech)) {
      for (int probe = 0; probe < 10; ++probe) {
        ExponentVector a = ExponentVector::zero(vars);
        for (int i = 0; i < vars; ++i) a[i] = static_cast<int>(rng() % 7) - 3;
        // independent assembly of sum_i X_i d_i
        const std::size_t n = m.dim(neg_support(a));
        ExactMatrix sum(n, n);
        for (VarIndex i = 0; i < vars; ++i) sum = add(sum, multiply(x_action(m, a.shifted(i, -1), i), d_action(m, a, i)));
        CHECK(sum == ExactMatrix::scalar(n, a.total()));
        CHECK(is_eulerian_at(m, a));
        CHECK(euler_operator(m, a) == sum);
      }
    }
  }
}

TEST_CASE("crossing maps commute") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int vars = 2 + static_cast<int>(rng() % 3);
    CechCohomology cech(random_ideal(rng, vars));
    for (const StraightModule& m : all_local_cohomology(cech))
      for (Chamber f : all_chambers(vars))
        for (VarIndex i = 0; i < vars; ++i)
          for (VarIndex j = i + 1; j < vars; ++j) {
            if (!f.contains(i) || !f.contains(j)) continue;
            CHECK(multiply(m.u(f.without(i), j), m.u(f, i)) == multiply(m.u(f.without(j), i), m.u(f, j)));
          }
  }
}

TEST_CASE("non-commuting crossing maps are rejected") {
  std::vector<std::size_t> dims = {1, 1, 1, 1};
  std::vector<ExactMatrix> u(8);
  u[1 * 2 + 0] = ExactMatrix{{1}};
  u[2 * 2 + 1] = ExactMatrix{{1}};
  u[3 * 2 + 0] = ExactMatrix{{1}};
  u[3 * 2 + 1] = ExactMatrix{{2}};
  try {
    StraightModule bad(2, dims, u, Provenance{});
    FAIL("expected COMMUTATIVITY_FAILURE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CommutativityFailure);
  }
  u[3 * 2 + 1] = ExactMatrix{{1, 0}};
  CHECK_THROWS_AS(StraightModule(2, dims, u, Provenance{}), Error);
}

TEST_CASE("localization with 0 in T has X_0 bijective everywhere") {
  for (int vars = 1; vars <= 4; ++vars)
    for (Chamber t : all_chambers(vars)) {
      if (!t.contains(0)) continue;
      StraightModule m = localization_module(t, vars);
      for (Chamber f : all_chambers(vars)) {
        ExponentVector a = chamber_rep(f, vars);
        CHECK(is_invertible(x_action(m, a, 0)));
        CHECK(is_invertible(x_action(m, a.shifted(0, -2), 0)));
      }
    }
}

TEST_CASE("dims are symmetric under variable permutations") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int vars = 2 + static_cast<int>(rng() % 3);
    const SquarefreeIdeal ideal = random_ideal(rng, vars);
    std::vector<int> perm(vars);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint32_t> permuted;
    for (auto g : ideal.gens) permuted.push_back(permute_mask(g, perm));
    const SquarefreeIdeal image = make_ideal(vars, permuted);
    for (int j = 0; j <= ideal.num_gens(); ++j) {
      StraightModule a = from_local_cohomology(ideal, j);
      StraightModule b = from_local_cohomology(image, j);
      for (Chamber f : all_chambers(vars)) CHECK(a.dim(f) == b.dim(Chamber(permute_mask(f.mask(), perm))));
    }
  }
}

TEST_CASE("redundant generators leave modules unchanged") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int vars = 2 + static_cast<int>(rng() % 3);
    const SquarefreeIdeal ideal = random_ideal(rng, vars);
    if (ideal.gens.empty()) continue;
    std::vector<RawMonomial> raw;
    for (auto g : ideal.gens) {
      RawMonomial m(vars);
      for (int i = 0; i < vars; ++i) m[i] = (g >> i) & 1U;
      raw.push_back(m);
    }
    RawMonomial extra = raw.front();
    for (auto& e : extra) e += 1;
    raw.push_back(extra);
    raw.push_back(raw.front());
    const SquarefreeIdeal same = normalize_ideal(vars, raw).ideal;
    REQUIRE(same == ideal);
    for (int j = 0; j <= ideal.num_gens(); ++j) CHECK(from_local_cohomology(same, j) == from_local_cohomology(ideal, j));
  }
}

TEST_CASE("serialization matches golden files and round-trips") {
  StraightModule g = from_local_cohomology(make_ideal(2, {0b11}), 1);
  CHECK(serialize_module(g) == read_golden("h1_x0x1.txt"));
  CHECK(parse_module(read_golden("h1_x0x1.txt")) == g);

  StraightModule t = from_local_cohomology(make_ideal(3, {0b011, 0b110, 0b101}), 2);
  CHECK(serialize_module(t) == read_golden("h2_triangle.txt"));

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int vars = 1 + static_cast<int>(rng() % 4);
    CechCohomology cech(random_ideal(rng, vars));
    for (const StraightModule& m : all_local_cohomology(cech)) CHECK(parse_module(serialize_module(m)) == m);
  }
  CHECK(parse_module(serialize_module(localization_module(Chamber(0b101), 3))) ==
        localization_module(Chamber(0b101), 3));
  CHECK(parse_module(serialize_module(injective_hull(2, Field::prime(101)))) == injective_hull(2, Field::prime(101)));
}

TEST_CASE("malformed serializations are rejected") {
  for (const char* text : {"", "straight-module 2\n", "straight-module 1\nvars 2\nfield Q\n",
                           "straight-module 1\nvars 1\nfield Q\nprovenance injective-hull\ndims 1 x\nend\n"}) {
    try {
      parse_module(text);
      FAIL("expected PARSE_ERROR");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
}
