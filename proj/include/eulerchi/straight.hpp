#pragma once

// Chamber ("straight") representation of the Z^{n+1}-graded modules under
// study. One space V_F per chamber F plus crossing maps u_{F,i} for i in F
// realize the whole module:
//
//   M_a = V_{F(a)}, F(a) = neg_support(a)
//   X_i : M_a -> M_{a+e_i}  is the identity if a_i != -1 and u_{F(a),i} if a_i = -1
//   d_i : M_a -> M_{a-e_i}  is a_i * identity if a_i != 0 and zero if a_i = 0
//
// so the Euler operator sum_i X_i d_i acts on M_a as the scalar |a|.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "eulerchi/cech.hpp"
#include "eulerchi/exactlin.hpp"
#include "eulerchi/monomial.hpp"

namespace eulerchi {

enum class ModuleKind { LocalCohomology, Localization, InjectiveHull };

struct Provenance {
  ModuleKind kind = ModuleKind::LocalCohomology;
  int degree = 0;            // j of H^j_I(R)
  SquarefreeIdeal ideal;     // for LocalCohomology
  Chamber localized_at;      // T of R_{X_T}

  std::string describe() const;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

class StraightModule {
 public:
  /// `u` is indexed by chamber mask * vars + i; entries with i not in F are ignored.
  /// Throws SHAPE_MISMATCH on bad shapes, COMMUTATIVITY_FAILURE when crossing maps do not commute.
  StraightModule(int vars, std::vector<std::size_t> dims, std::vector<ExactMatrix> u, Provenance provenance,
                 Field field = {});

  int vars() const { return vars_; }
  int n() const { return vars_ - 1; }
  const Field& field() const { return field_; }
  const Provenance& provenance() const { return provenance_; }

  std::size_t dim(Chamber f) const { return dims_[f.mask()]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// The crossing map u_{F,i}: V_F -> V_{F \ {i}}, for i in F.
  const ExactMatrix& u(Chamber f, VarIndex i) const;

  friend bool operator==(const StraightModule&, const StraightModule&) = default;

 private:
  int vars_;
  std::vector<std::size_t> dims_;
  std::vector<ExactMatrix> u_;
  Provenance provenance_;
  Field field_;
};

/// H^j_I(R) with d_F = dim H^j(strand at chamber_rep(F)).
StraightModule from_local_cohomology(const SquarefreeIdeal& ideal, int j, const Field& field = {});
StraightModule from_local_cohomology(const CechCohomology& cech, int j);
/// H^0..H^s from one shared set of strand computations.
std::vector<StraightModule> all_local_cohomology(const CechCohomology& cech);

/// R_{X_T}: d_F = 1 for F inside T, every crossing map between nonzero chambers is [1].
StraightModule localization_module(Chamber t, int vars, const Field& field = {});

/// E(K) = H^{n+1}_{(X_0..X_n)}(R).
StraightModule injective_hull(int vars, const Field& field = {});

ExactMatrix x_action(const StraightModule& m, const ExponentVector& a, VarIndex i);
ExactMatrix d_action(const StraightModule& m, const ExponentVector& a, VarIndex i);

/// The matrix of sum_i X_i d_i on M_a.
ExactMatrix euler_operator(const StraightModule& m, const ExponentVector& a);

/// Checks that the Euler operator is |a| * identity at `a`.
bool is_eulerian_at(const StraightModule& m, const ExponentVector& a);

void write_module(std::ostream& os, const StraightModule& m);
std::string serialize_module(const StraightModule& m);
/// Throws PARSE_ERROR on malformed input.
StraightModule read_module(std::istream& is);
StraightModule parse_module(const std::string& text);

}  // namespace eulerchi
