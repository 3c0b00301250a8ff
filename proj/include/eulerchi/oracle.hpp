#pragma once

// Brute-force realization of Cech modules on a finite multidegree box.
//
// Every Cech spot R_{f_T} is truncated to the monomials X^a with a in
// [-B, B]^{n+1}, with literal operator tables for X_i (a -> a + e_i,
// coefficient 1) and d_i (a -> a - e_i, coefficient a_i). Images leaving
// the box are dropped, so assertions are only made on the interior
// [-B+1, B-1]^{n+1}. Nothing here uses chambers or straightness.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eulerchi/exactlin.hpp"
#include "eulerchi/homology.hpp"
#include "eulerchi/monomial.hpp"
#include "eulerchi/straight.hpp"

namespace eulerchi {

enum class BoxOp { Multiply, Differentiate };

struct BoxLimits {
  int max_vars = 3;
  std::size_t max_size = 20000;  // bound on (n+1) * (2B+1)^{n+1}

  static BoxLimits raised() { return {kMaxVars, 2000000}; }
};

/// Action of one operator on a spot basis: basis index -> (target index or -1, coefficient).
struct BoxOperator {
  std::vector<std::int64_t> target;
  std::vector<Scalar> coeff;
};

struct BoxSpot {
  std::uint32_t subset = 0;    // generator subset T
  std::uint32_t inverted = 0;  // variables inverted in R_{f_T}
  std::vector<ExponentVector> basis;
  std::vector<std::int64_t> index;  // box cell -> basis index, or -1
  std::vector<BoxOperator> x;       // per variable
  std::vector<BoxOperator> d;       // per variable
};

class BoxRealization {
 public:
  BoxRealization(SquarefreeIdeal ideal, int radius, std::vector<BoxSpot> spots)
      : ideal_(std::move(ideal)), radius_(radius), spots_(std::move(spots)) {}

  const SquarefreeIdeal& ideal() const { return ideal_; }
  int radius() const { return radius_; }
  int vars() const { return ideal_.vars(); }

  /// Spots are indexed by generator-subset mask.
  const std::vector<BoxSpot>& spots() const { return spots_; }
  const BoxSpot& spot(std::uint32_t subset) const { return spots_.at(subset); }
  BoxSpot& mutable_spot(std::uint32_t subset) { return spots_.at(subset); }

  bool in_box(const ExponentVector& a) const;
  bool in_interior(const ExponentVector& a) const;
  std::size_t cell(const ExponentVector& a) const;
  /// Basis index of X^a in a spot, or -1.
  std::int64_t locate(std::uint32_t subset, const ExponentVector& a) const;

 private:
  SquarefreeIdeal ideal_;
  int radius_;
  std::vector<BoxSpot> spots_;
};

/// Throws INVALID_ARGUMENT for a radius below 2, BOX_TOO_LARGE when the box exceeds `limits`.
BoxRealization build_box(const SquarefreeIdeal& ideal, int radius, const BoxLimits& limits = {});

/// A module realized on the box: H^j_I(R) or a single Cech spot R_{f_T}.
/// Caches per-degree bases; not safe to share between threads.
class BoxModule {
 public:
  static BoxModule local_cohomology(const BoxRealization& box, int j);
  static BoxModule spot(const BoxRealization& box, std::uint32_t subset);

  const BoxRealization& box() const { return *box_; }

  /// Basis of the piece at degree b; ambient = spots in `ambient_spots(b)`.
  const HomologyBasis& piece(const ExponentVector& b);
  std::vector<std::uint32_t> ambient_spots(const ExponentVector& b) const;

  /// X_i (b -> b + e_i) or d_i (b -> b - e_i) between chain-level ambients.
  ExactMatrix chain_operator(BoxOp op, VarIndex i, const ExponentVector& b) const;
  /// The same operator induced on the pieces.
  ExactMatrix piece_operator(BoxOp op, VarIndex i, const ExponentVector& b);

  /// p -> dim H_p of the Koszul or de Rham strand at t. Throws OUTSIDE_INTERIOR.
  std::vector<std::size_t> strand_homology(ComplexKind kind, const ExponentVector& t);
  /// Whether every degree touched by the strand at t lies in the interior.
  bool strand_in_interior(ComplexKind kind, const ExponentVector& t) const;

 private:
  BoxModule(const BoxRealization& box, bool single_spot, int degree, std::uint32_t subset)
      : box_(&box), single_spot_(single_spot), degree_(degree), subset_(subset) {}

  const BoxRealization* box_;
  bool single_spot_;
  int degree_;
  std::uint32_t subset_;
  std::map<ExponentVector, HomologyBasis> cache_;
};

/// dim H^j of the Cech strand at a, from the box bases. Throws OUTSIDE_INTERIOR.
std::size_t box_cohomology_strand(const BoxRealization& box, int j, const ExponentVector& a);

std::vector<std::size_t> box_homology_strand(const BoxRealization& box, int j, ComplexKind kind,
                                             const ExponentVector& t);

struct OracleResult {
  Verdict verdict = Verdict::Pass;
  std::string detail;                // first discrepancy or witness
  std::size_t checks = 0;
  std::vector<std::string> skipped;  // assertions touching degrees outside the interior
};

/// (sum_i X_i d_i - |a|) X^a = 0 on every interior basis monomial of every
/// spot, and on the H^j representatives at every interior degree.
OracleResult eulerian_check(const BoxRealization& box);

/// The Weyl relations on every interior basis monomial of every spot.
OracleResult weyl_relations_check(const BoxRealization& box);

/// Compares a straight module with its box realization: chamber dimensions,
/// every homology_tables entry, and exactness of all strands with
/// t in {-2..1}^{n+1} outside the predicted support.
OracleResult cross_check(const StraightModule& m, BoxModule& realized);
OracleResult cross_check(const StraightModule& m, const BoxRealization& box, int j);

}  // namespace eulerchi
