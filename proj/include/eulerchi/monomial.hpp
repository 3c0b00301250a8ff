#pragma once

// Multidegrees, chambers and squarefree monomial ideals in K[X_0..X_n].

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eulerchi {

/// Number of supported variables; chambers and supports are bitmasks.
inline constexpr int kMaxVars = 16;

using VarIndex = int;

/// A multidegree a in Z^{n+1}.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<int> entries) : entries_(std::move(entries)) {}
  ExponentVector(std::initializer_list<int> entries) : entries_(entries) {}

  static ExponentVector zero(int vars) { return ExponentVector(std::vector<int>(vars, 0)); }
  static ExponentVector constant(int vars, int value) { return ExponentVector(std::vector<int>(vars, value)); }

  int vars() const { return static_cast<int>(entries_.size()); }
  int operator[](VarIndex i) const { return entries_[i]; }
  int& operator[](VarIndex i) { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  /// The Z-degree |a|.
  int total() const;

  ExponentVector shifted(VarIndex i, int by) const {
    ExponentVector b = *this;
    b.entries_[i] += by;
    return b;
  }

  std::string str() const;

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<int> entries_;
};

/// A subset F of {0..n}, stored as a bitmask (bit i set iff i in F).
class Chamber {
 public:
  constexpr Chamber() = default;
  constexpr explicit Chamber(std::uint32_t mask) : mask_(mask) {}

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool contains(VarIndex i) const { return (mask_ >> i) & 1U; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool subset_of(Chamber other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr Chamber with(VarIndex i) const { return Chamber(mask_ | (1U << i)); }
  constexpr Chamber without(VarIndex i) const { return Chamber(mask_ & ~(1U << i)); }

  std::string str() const;

  friend constexpr auto operator<=>(Chamber, Chamber) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// All chambers of {0..vars-1} in binary-counter order.
std::vector<Chamber> all_chambers(int vars);

Chamber neg_support(const ExponentVector& a);

/// a_i = -1 for i in F, 0 otherwise.
ExponentVector chamber_rep(Chamber f, int vars);

struct SquarefreeIdeal {
  int n = 0;                        // variables are X_0..X_n
  std::vector<std::uint32_t> gens;  // variable supports, an antichain

  int vars() const { return n + 1; }
  int num_gens() const { return static_cast<int>(gens.size()); }
  /// Union of the generator supports indexed by the bitmask `subset`.
  std::uint32_t support_union(std::uint32_t subset) const;

  std::string str() const;

  friend bool operator==(const SquarefreeIdeal&, const SquarefreeIdeal&) = default;
};

/// A monomial X^e given by its exponents.
using RawMonomial = std::vector<int>;

struct NormalizedIdeal {
  SquarefreeIdeal ideal;
  bool radicalized = false;  // some input generator was not squarefree
};

/// Radical supports, duplicates and non-minimal supports removed, sorted by
/// mask. Throws UNIT_IDEAL for a constant generator; with `strict`, throws
/// NON_SQUAREFREE for a non-squarefree generator.
NormalizedIdeal normalize_ideal(int vars, const std::vector<RawMonomial>& raw_gens, bool strict = false);

SquarefreeIdeal make_ideal(int vars, std::vector<std::uint32_t> supports);

/// Parses "x0*x1, x0^2*x2". Empty text is the zero ideal.
std::vector<RawMonomial> parse_monomials(std::string_view text, int vars);

NormalizedIdeal parse_ideal(std::string_view text, int vars, bool strict = false);

std::string format_support(std::uint32_t support);

}  // namespace eulerchi
