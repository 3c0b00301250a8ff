#include "eulerchi/corpus.hpp"

#include <algorithm>
#include <random>

#include <fmt/core.h>

#include "eulerchi/error.hpp"

namespace eulerchi {

namespace {

void extend(int vars, std::uint32_t next, std::vector<std::uint32_t>& chosen,
            std::vector<std::vector<std::uint32_t>>& out) {
  const std::uint32_t limit = 1U << vars;
  if (next == limit) {
    out.push_back(chosen);
    return;
  }
  extend(vars, next + 1, chosen, out);
  bool comparable = std::any_of(chosen.begin(), chosen.end(), [next](std::uint32_t g) {
    return (g & ~next) == 0 || (next & ~g) == 0;
  });
  if (!comparable) {
    chosen.push_back(next);
    extend(vars, next + 1, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<SquarefreeIdeal> enumerate_ideals(int vars) {
  if (vars < 1 || vars > kMaxExhaustiveVars) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("exhaustive enumeration supports 1..{} variables, got {}", kMaxExhaustiveVars, vars));
  }
  std::vector<std::vector<std::uint32_t>> antichains;
  std::vector<std::uint32_t> chosen;
  extend(vars, 1, chosen, antichains);
  std::sort(antichains.begin(), antichains.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<SquarefreeIdeal> out;
  out.reserve(antichains.size());
  for (auto& gens : antichains) out.push_back(SquarefreeIdeal{vars - 1, std::move(gens)});
  return out;
}

std::vector<SquarefreeIdeal> sample_ideals(int vars, std::size_t count, std::uint64_t seed) {
  auto all = enumerate_ideals(vars);
  all.erase(all.begin());  // the zero ideal
  // Fisher-Yates with raw engine output so the order does not depend on the
  // standard library's distribution implementations.
  std::mt19937_64 rng(seed);
  for (std::size_t i = all.size(); i > 1; --i) {
    std::size_t k = static_cast<std::size_t>(rng() % i);
    std::swap(all[i - 1], all[k]);
  }
  all.resize(std::min(count, all.size()));
  return all;
}

}  // namespace eulerchi
