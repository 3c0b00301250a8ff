#include <bit>
#include <random>

#include "doctest.h"
#include "eulerchi/cech.hpp"

using namespace eulerchi;

namespace {

SquarefreeIdeal random_ideal(std::mt19937_64& rng, int vars) {
  std::vector<std::uint32_t> supports;
  const int count = static_cast<int>(rng() % 5);
  for (int g = 0; g < count; ++g) {
    std::uint32_t s = static_cast<std::uint32_t>(rng() % ((1U << vars) - 1)) + 1;
    supports.push_back(s);
  }
  return make_ideal(vars, supports);
}

ExponentVector random_degree(std::mt19937_64& rng, int vars) {
  ExponentVector a = ExponentVector::zero(vars);
  for (int i = 0; i < vars; ++i) a[i] = static_cast<int>(rng() % 7) - 3;
  return a;
}

std::vector<std::size_t> dims(const std::vector<HomologyBasis>& h) {
  std::vector<std::size_t> out;
  for (const auto& b : h) out.push_back(b.dim());
  return out;
}

}  // namespace

TEST_CASE("strand examples") {
  SquarefreeIdeal x0 = make_ideal(1, {0b1});
  CechStrand s = strand_complex(x0, {-1});
  CHECK(s.dim(0) == 0);
  CHECK(s.dim(1) == 1);
  CHECK(s.differentials[0].is_zero());

  CechStrand t = strand_complex(x0, {0});
  CHECK(t.dim(0) == 1);
  CHECK(t.dim(1) == 1);
  CHECK(t.differentials[0] == ExactMatrix{{1}});

  SquarefreeIdeal tri = make_ideal(3, {0b011, 0b110, 0b101});
  CechStrand u = strand_complex(tri, {-1, -1, -1});
  CHECK(u.dim(0) == 0);
  CHECK(u.dim(1) == 0);
  CHECK(u.dim(2) == 3);
  CHECK(u.dim(3) == 1);
}

TEST_CASE("strand_cohomology examples") {
  CHECK(dims(strand_cohomology(make_ideal(1, {0b1}), {-1})) == std::vector<std::size_t>{0, 1});
  CHECK(dims(strand_cohomology(make_ideal(2, {0b01, 0b10}), {-1, -1})) == std::vector<std::size_t>{0, 0, 1});
  CHECK(dims(strand_cohomology(make_ideal(2, {0b11}), {0, -1})) == std::vector<std::size_t>{0, 1});
  CHECK(dims(strand_cohomology(make_ideal(2, {}), {0, 0})) == std::vector<std::size_t>{1});
  CHECK(dims(strand_cohomology(make_ideal(2, {}), {0, -1})) == std::vector<std::size_t>{0});
}

TEST_CASE("induced_x_map examples") {
  CHECK(induced_x_map(make_ideal(2, {0b11}), {-1, -1}, 0, 1) == ExactMatrix{{1}});
  ExactMatrix m = induced_x_map(make_ideal(2, {0b01}), {-1, 0}, 0, 1);
  CHECK(m.rows() == 0);
  CHECK(m.cols() == 1);
}

TEST_CASE("sign convention") {
  CHECK(insertion_sign(0, 0b110) == 1);
  CHECK(insertion_sign(2, 0b011) == 1);
  CHECK(insertion_sign(1, 0b001) == -1);
  CHECK(insertion_sign(3, 0b111) == -1);
}

TEST_CASE("strand properties on random ideals and probes") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const int vars = 1 + static_cast<int>(rng() % 4);
    const SquarefreeIdeal ideal = random_ideal(rng, vars);
    const ExponentVector a = random_degree(rng, vars);
    const CechStrand s = strand_complex(ideal, a);
    const std::uint32_t neg = neg_support(a).mask();

    long complex_chi = 0;
    for (int p = 0; p <= ideal.num_gens(); ++p) {
      // independent membership check
      std::size_t expected = 0;
      for (std::uint32_t t = 0; t < (1U << ideal.num_gens()); ++t) {
        if (std::popcount(t) != p) continue;
        std::uint32_t u = 0;
        for (int g = 0; g < ideal.num_gens(); ++g)
          if ((t >> g) & 1U) u |= ideal.gens[g];
        if ((neg & ~u) == 0) ++expected;
      }
      CHECK(s.dim(p) == expected);
      complex_chi += (p % 2 == 0 ? 1L : -1L) * static_cast<long>(expected);
      if (p + 1 < ideal.num_gens()) CHECK(multiply(s.differentials[p + 1], s.differentials[p]).is_zero());
    }

    const auto h = strand_cohomology(ideal, a);
    long chi = 0;
    for (std::size_t j = 0; j < h.size(); ++j) chi += (j % 2 == 0 ? 1L : -1L) * static_cast<long>(h[j].dim());
    CHECK(chi == complex_chi);
    CHECK(dims(h) == dims(strand_cohomology(ideal, chamber_rep(neg_support(a), vars))));

    for (VarIndex i = 0; i < vars; ++i) {
      if (a[i] == -1) continue;
      for (int j = 0; j <= ideal.num_gens(); ++j) {
        ExactMatrix m = induced_x_map(ideal, a, i, j);
        CHECK(m.rows() == m.cols());
        CHECK(is_invertible(m));
      }
    }
  }
}

TEST_CASE("CechCohomology matches direct strand computations") {
  const SquarefreeIdeal ideal = make_ideal(3, {0b011, 0b110});
  const CechCohomology c(ideal);
  for (Chamber f : all_chambers(3)) {
    const auto direct = strand_cohomology(ideal, chamber_rep(f, 3));
    for (int j = 0; j <= ideal.num_gens(); ++j) {
      CHECK(c.dim(f, j) == direct[j].dim());
      for (VarIndex i = 0; i < 3; ++i)
        if (f.contains(i)) CHECK(c.crossing_map(f, i, j) == induced_x_map(ideal, chamber_rep(f, 3), i, j));
    }
  }
}
