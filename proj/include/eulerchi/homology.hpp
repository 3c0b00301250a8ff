#pragma once

// Koszul complex K(X; M) and de Rham complex K(d; M) of a straight module,
// strand by strand, in homological indexing p in [0, n+1].
//
// Koszul strand at t:  C_p = sum_{|S|=p} M_{t - e_S},  d(e_S m) = sum_{i in S} sgn(i,S) e_{S\i} X_i m
// de Rham strand at t: C_p = sum_{|S|=p} M_{t + e_S},  d(e_S m) = sum_{i in S} sgn(i,S) e_{S\i} d_i m
// with sgn(i,S) = (-1)^{#{s in S : s < i}}.
//
// A Koszul strand is exact as soon as some t_i != 0 (every X_i in it is an
// identity), a de Rham strand as soon as some t_i != -1 (every d_i in it is
// a nonzero scalar). Only t in {-1,0}^{n+1} can carry homology.

#include <cstdint>
#include <string_view>
#include <vector>

#include "eulerchi/exactlin.hpp"
#include "eulerchi/monomial.hpp"
#include "eulerchi/straight.hpp"

namespace eulerchi {

enum class ComplexKind { Koszul, DeRham };

std::string_view to_string(ComplexKind kind);

struct StrandComplex {
  ComplexKind kind = ComplexKind::Koszul;
  ExponentVector t;
  /// subsets[p]: the S with |S| = p, ascending by mask.
  std::vector<std::vector<std::uint32_t>> subsets;
  /// block_dims[p][k]: dimension of the term indexed by subsets[p][k].
  std::vector<std::vector<std::size_t>> block_dims;
  /// differentials[p - 1]: C_p -> C_{p-1}, for p in [1, n+1].
  std::vector<ExactMatrix> differentials;

  int top() const { return static_cast<int>(subsets.size()) - 1; }
  std::size_t dim(int p) const;
};

StrandComplex koszul_strand(const StraightModule& m, const ExponentVector& t);
StrandComplex derham_strand(const StraightModule& m, const ExponentVector& t);

/// p -> dim H_p. Throws COMPLEX_VIOLATION if d o d != 0.
std::vector<std::size_t> strand_homology(const StrandComplex& c, const Field& field = {});

/// True when the bijectivity criterion certifies the strand at t exact.
bool certified_exact(ComplexKind kind, const ExponentVector& t);

/// Z-degree of a class in H_p of the strand at t: the degree of its module component.
int zdegree(ComplexKind kind, const ExponentVector& t, int p);

struct HomologyEntry {
  ComplexKind kind = ComplexKind::Koszul;
  int p = 0;
  ExponentVector t;
  std::size_t dim = 0;
  int zdegree = 0;

  friend bool operator==(const HomologyEntry&, const HomologyEntry&) = default;
};

struct HomologyTable {
  int vars = 0;
  /// Nonzero entries, sorted by (kind, t, p).
  std::vector<HomologyEntry> entries;
  long chi_koszul = 0;
  long chi_derham = 0;

  /// p -> total dimension of H_p for one complex.
  std::vector<std::size_t> dims(ComplexKind kind) const;
};

/// Computes every strand with t in {-1,0}^{n+1}. Throws INTERNAL_INCONSISTENCY
/// if a strand certified exact carries homology.
HomologyTable homology_tables(const StraightModule& m);

struct EulerCharacteristics {
  long koszul = 0;
  long derham = 0;

  friend bool operator==(const EulerCharacteristics&, const EulerCharacteristics&) = default;
};

/// chi(X) = sum_F (-1)^{|F|} d_F and chi(d) = (-1)^{n+1} chi(X).
EulerCharacteristics closed_form_characteristics(const StraightModule& m);

/// From the strand tables, cross-checked against the closed form.
/// Throws INTERNAL_INCONSISTENCY when the two routes disagree.
EulerCharacteristics euler_characteristics(const StraightModule& m);
EulerCharacteristics euler_characteristics(const StraightModule& m, const HomologyTable& table);

enum class Verdict { Pass, Fail, HypothesisNotMet };

std::string_view to_string(Verdict v);

struct TheoremVerdict {
  Verdict verdict = Verdict::Fail;
  long chi_koszul = 0;
  long chi_derham = 0;
};

/// PASS iff chi(d, M) = (-1)^{n+1} chi(X, M).
TheoremVerdict verify_main_theorem(const StraightModule& m);
TheoremVerdict verify_main_theorem(const StraightModule& m, const HomologyTable& table);

/// X_i acts bijectively on M: every crossing map u_{F,i} is invertible.
bool acts_bijectively(const StraightModule& m, VarIndex i);

/// If X_i acts bijectively, PASS iff chi(d, M) = 0 and all Koszul homology vanishes.
TheoremVerdict verify_localized_vanishing(const StraightModule& m, VarIndex i);
TheoremVerdict verify_localized_vanishing(const StraightModule& m, const HomologyTable& table, VarIndex i);

}  // namespace eulerchi
