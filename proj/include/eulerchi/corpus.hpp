#pragma once

#include <cstdint>
#include <vector>

#include "eulerchi/monomial.hpp"

namespace eulerchi {

/// Every squarefree monomial ideal in `vars` variables other than the unit
/// ideal: all antichains of nonempty subsets, the zero ideal first, then by
/// generator count and generator masks.
std::vector<SquarefreeIdeal> enumerate_ideals(int vars);

/// `count` distinct nonzero ideals drawn from enumerate_ideals(vars) by a
/// seeded shuffle; the same seed always yields the same list.
std::vector<SquarefreeIdeal> sample_ideals(int vars, std::size_t count, std::uint64_t seed);

inline constexpr int kMaxExhaustiveVars = 5;

}  // namespace eulerchi
