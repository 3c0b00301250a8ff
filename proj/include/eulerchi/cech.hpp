#pragma once

// Multidegree strands of the Cech complex C^p = sum_{|T|=p} R_{f_T} on the
// generators of a squarefree monomial ideal, and their cohomology.
//
// At multidegree a the spot T carries K exactly when every negative
// variable of a is inverted in R_{f_T}, i.e. neg_support(a) is contained in
// the union of the supports of f_t, t in T. Differential:
//   d(e_T) = sum_{j not in T} (-1)^{#{t in T : t < j}} e_{T u {j}}.

#include <cstdint>
#include <vector>

#include "eulerchi/exactlin.hpp"
#include "eulerchi/monomial.hpp"

namespace eulerchi {

struct CechStrand {
  ExponentVector a;
  int num_gens = 0;
  /// spots[p]: generator subsets of size p that are nonzero at a, ascending by mask.
  std::vector<std::vector<std::uint32_t>> spots;
  /// differentials[p]: spots[p+1].size() x spots[p].size(), for p in [0, num_gens).
  std::vector<ExactMatrix> differentials;

  std::size_t dim(int p) const { return spots[p].size(); }
  /// The incoming and outgoing maps at spot p (zero-width at the ends).
  ExactMatrix incoming(int p) const;
  ExactMatrix outgoing(int p) const;
};

/// Sign of inserting j into the sorted subset `subset`.
int insertion_sign(int j, std::uint32_t subset);

CechStrand strand_complex(const SquarefreeIdeal& ideal, const ExponentVector& a);

/// j -> basis of H^j(strand at a), for j in [0, num_gens].
std::vector<HomologyBasis> strand_cohomology(const SquarefreeIdeal& ideal, const ExponentVector& a,
                                             const Field& field = {});

/// The chain map between the spot-p terms of two strands that is the
/// identity on spots nonzero in both and zero elsewhere.
ExactMatrix spot_inclusion(const CechStrand& src, const CechStrand& tgt, int p);

/// Matrix of multiplication by X_i: H^j(strand at a) -> H^j(strand at a + e_i).
ExactMatrix induced_x_map(const SquarefreeIdeal& ideal, const ExponentVector& a, VarIndex i, int j,
                          const Field& field = {});

/// All strands and cohomology bases of one ideal at the chamber
/// representatives, computed once and shared by every H^j.
class CechCohomology {
 public:
  CechCohomology(SquarefreeIdeal ideal, Field field = {});

  const SquarefreeIdeal& ideal() const { return ideal_; }
  const Field& field() const { return field_; }
  int vars() const { return ideal_.vars(); }

  const CechStrand& strand(Chamber f) const { return strands_[f.mask()]; }
  const HomologyBasis& basis(Chamber f, int j) const { return bases_[f.mask()][j]; }
  std::size_t dim(Chamber f, int j) const { return basis(f, j).dim(); }

  /// Multiplication by X_i across the crossing a_i = -1 -> 0: H^j at
  /// chamber_rep(f) to H^j at chamber_rep(f \ {i}). Requires i in f.
  ExactMatrix crossing_map(Chamber f, VarIndex i, int j) const;

 private:
  SquarefreeIdeal ideal_;
  Field field_;
  std::vector<CechStrand> strands_;
  std::vector<std::vector<HomologyBasis>> bases_;
};

}  // namespace eulerchi
