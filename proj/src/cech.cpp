#include "eulerchi/cech.hpp"

#include <algorithm>
#include <bit>

#include <fmt/core.h>

#include "eulerchi/error.hpp"

namespace eulerchi {

namespace {

std::size_t index_of(const std::vector<std::uint32_t>& sorted, std::uint32_t subset) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), subset);
  if (it == sorted.end() || *it != subset) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

int insertion_sign(int j, std::uint32_t subset) {
  std::uint32_t below = subset & ((1U << j) - 1U);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

ExactMatrix CechStrand::incoming(int p) const {
  if (p == 0) return ExactMatrix(dim(0), 0);
  return differentials[p - 1];
}

ExactMatrix CechStrand::outgoing(int p) const {
  if (p == num_gens) return ExactMatrix(0, dim(p));
  return differentials[p];
}

CechStrand strand_complex(const SquarefreeIdeal& ideal, const ExponentVector& a) {
  if (a.vars() != ideal.vars()) {
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("multidegree {} does not match {} variables", a.str(), ideal.vars()));
  }
  const int s = ideal.num_gens();
  const std::uint32_t neg = neg_support(a).mask();

  CechStrand strand;
  strand.a = a;
  strand.num_gens = s;
  strand.spots.resize(s + 1);
  for (std::uint32_t t = 0; t < (1U << s); ++t) {
    if ((neg & ~ideal.support_union(t)) == 0) strand.spots[std::popcount(t)].push_back(t);
  }
  for (int p = 0; p < s; ++p) {
    ExactMatrix d(strand.dim(p + 1), strand.dim(p));
    for (std::size_t c = 0; c < strand.dim(p); ++c) {
      const std::uint32_t t = strand.spots[p][c];
      for (int j = 0; j < s; ++j) {
        if ((t >> j) & 1U) continue;
        // supersets of a nonzero spot are nonzero
        std::size_t r = index_of(strand.spots[p + 1], t | (1U << j));
        d(r, c) = insertion_sign(j, t);
      }
    }
    strand.differentials.push_back(std::move(d));
  }
  return strand;
}

namespace {

std::vector<HomologyBasis> cohomology_of(const CechStrand& strand, const Field& field) {
  std::vector<HomologyBasis> out;
  out.reserve(strand.num_gens + 1);
  for (int p = 0; p <= strand.num_gens; ++p) {
    out.push_back(homology_basis(strand.incoming(p), strand.outgoing(p), field));
  }
  return out;
}

}  // namespace

std::vector<HomologyBasis> strand_cohomology(const SquarefreeIdeal& ideal, const ExponentVector& a,
                                             const Field& field) {
  return cohomology_of(strand_complex(ideal, a), field);
}

ExactMatrix spot_inclusion(const CechStrand& src, const CechStrand& tgt, int p) {
  ExactMatrix f(tgt.dim(p), src.dim(p));
  for (std::size_t c = 0; c < src.dim(p); ++c) {
    std::size_t r = index_of(tgt.spots[p], src.spots[p][c]);
    if (r < tgt.dim(p)) f(r, c) = 1;
  }
  return f;
}

ExactMatrix induced_x_map(const SquarefreeIdeal& ideal, const ExponentVector& a, VarIndex i, int j,
                          const Field& field) {
  if (i < 0 || i >= ideal.vars()) throw Error(ErrorCode::InvalidArgument, fmt::format("no variable x{}", i));
  if (j < 0 || j > ideal.num_gens()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("cohomological degree {} out of range", j));
  }
  CechStrand src = strand_complex(ideal, a);
  CechStrand tgt = strand_complex(ideal, a.shifted(i, 1));
  auto src_basis = homology_basis(src.incoming(j), src.outgoing(j), field);
  auto tgt_basis = homology_basis(tgt.incoming(j), tgt.outgoing(j), field);
  return induced_on_homology(spot_inclusion(src, tgt, j), src_basis, tgt_basis, field);
}

CechCohomology::CechCohomology(SquarefreeIdeal ideal, Field field) : ideal_(std::move(ideal)), field_(field) {
  for (Chamber f : all_chambers(ideal_.vars())) {
    strands_.push_back(strand_complex(ideal_, chamber_rep(f, ideal_.vars())));
    bases_.push_back(cohomology_of(strands_.back(), field_));
  }
}

ExactMatrix CechCohomology::crossing_map(Chamber f, VarIndex i, int j) const {
  if (!f.contains(i)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("x{} does not cross out of chamber {}", i, f.str()));
  }
  Chamber g = f.without(i);
  return induced_on_homology(spot_inclusion(strand(f), strand(g), j), basis(f, j), basis(g, j), field_);
}

}  // namespace eulerchi
