#include "eulerchi/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <fmt/core.h>
#include <fmt/format.h>

#include "eulerchi/error.hpp"

namespace eulerchi {

int ExponentVector::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

std::string ExponentVector::str() const { return fmt::format("({})", fmt::join(entries_, ",")); }

std::string Chamber::str() const { return format_support(mask_); }

std::vector<Chamber> all_chambers(int vars) {
  std::vector<Chamber> out;
  out.reserve(std::size_t{1} << vars);
  for (std::uint32_t m = 0; m < (1U << vars); ++m) out.emplace_back(m);
  return out;
}

Chamber neg_support(const ExponentVector& a) {
  std::uint32_t mask = 0;
  for (int i = 0; i < a.vars(); ++i)
    if (a[i] <= -1) mask |= 1U << i;
  return Chamber(mask);
}

ExponentVector chamber_rep(Chamber f, int vars) {
  std::vector<int> a(vars, 0);
  for (int i = 0; i < vars; ++i)
    if (f.contains(i)) a[i] = -1;
  return ExponentVector(std::move(a));
}

std::uint32_t SquarefreeIdeal::support_union(std::uint32_t subset) const {
  std::uint32_t u = 0;
  for (int t = 0; t < num_gens(); ++t)
    if ((subset >> t) & 1U) u |= gens[t];
  return u;
}

std::string format_support(std::uint32_t support) {
  std::vector<std::string> parts;
  for (int i = 0; i < 32; ++i)
    if ((support >> i) & 1U) parts.push_back(fmt::format("{}", i));
  return fmt::format("{{{}}}", fmt::join(parts, ","));
}

std::string SquarefreeIdeal::str() const {
  if (gens.empty()) return "0";
  std::vector<std::string> parts;
  for (auto g : gens) {
    std::vector<std::string> vars_in;
    for (int i = 0; i < vars(); ++i)
      if ((g >> i) & 1U) vars_in.push_back(fmt::format("x{}", i));
    parts.push_back(fmt::format("{}", fmt::join(vars_in, "*")));
  }
  return fmt::format("{}", fmt::join(parts, ","));
}

SquarefreeIdeal make_ideal(int vars, std::vector<std::uint32_t> supports) {
  if (vars < 1 || vars > kMaxVars) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("variable count {} out of range", vars));
  }
  const std::uint32_t all = (1U << vars) - 1;
  for (auto s : supports) {
    if (s == 0) throw Error(ErrorCode::UnitIdeal, "a generator is a nonzero constant");
    if ((s & ~all) != 0) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("support {} uses a variable beyond x{}", format_support(s), vars - 1));
    }
  }
  std::sort(supports.begin(), supports.end());
  supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
  std::vector<std::uint32_t> minimal;
  for (auto s : supports) {
    bool redundant = std::any_of(supports.begin(), supports.end(),
                                 [s](std::uint32_t t) { return t != s && (t & ~s) == 0; });
    if (!redundant) minimal.push_back(s);
  }
  return SquarefreeIdeal{vars - 1, std::move(minimal)};
}

NormalizedIdeal normalize_ideal(int vars, const std::vector<RawMonomial>& raw_gens, bool strict) {
  NormalizedIdeal out;
  std::vector<std::uint32_t> supports;
  for (const auto& mono : raw_gens) {
    if (static_cast<int>(mono.size()) != vars) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("monomial has {} exponents, expected {}", mono.size(), vars));
    }
    std::uint32_t s = 0;
    for (int i = 0; i < vars; ++i) {
      if (mono[i] < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in a generator");
      if (mono[i] > 0) s |= 1U << i;
      if (mono[i] > 1) {
        if (strict) throw Error(ErrorCode::NonSquarefree, fmt::format("x{}^{} is not squarefree", i, mono[i]));
        out.radicalized = true;
      }
    }
    supports.push_back(s);
  }
  out.ideal = make_ideal(vars, std::move(supports));
  return out;
}

namespace {

class MonomialParser {
 public:
  MonomialParser(std::string_view text, int vars) : text_(text), vars_(vars) {}

  std::vector<RawMonomial> parse() {
    std::vector<RawMonomial> out;
    skip_space();
    if (at_end()) return out;
    while (true) {
      out.push_back(monomial());
      skip_space();
      if (at_end()) break;
      expect(',');
    }
    return out;
  }

 private:
  RawMonomial monomial() {
    RawMonomial e(vars_, 0);
    skip_space();
    if (peek() == '1') {
      ++pos_;
      return e;
    }
    while (true) {
      factor(e);
      skip_space();
      if (peek() == '*') {
        ++pos_;
      } else if (std::tolower(static_cast<unsigned char>(peek())) != 'x') {
        break;
      }
    }
    return e;
  }

  void factor(RawMonomial& e) {
    skip_space();
    if (std::tolower(static_cast<unsigned char>(peek())) != 'x') fail("expected a variable like x0");
    ++pos_;
    int index = number();
    if (index >= vars_) fail(fmt::format("variable x{} out of range for {} variables", index, vars_));
    int power = 1;
    skip_space();
    if (peek() == '^') {
      ++pos_;
      power = number();
    }
    e[index] += power;
  }

  int number() {
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1000000) fail("number too large");
    }
    return static_cast<int>(v);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, fmt::format("{} at position {} in \"{}\"", msg, pos_, text_));
  }

  std::string_view text_;
  int vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<RawMonomial> parse_monomials(std::string_view text, int vars) {
  if (vars < 1 || vars > kMaxVars) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("variable count {} out of range", vars));
  }
  auto first = text.find_first_not_of(" \t\r\n");
  auto last = text.find_last_not_of(" \t\r\n");
  if (first != std::string_view::npos && text.substr(first, last - first + 1) == "0") return {};
  return MonomialParser(text, vars).parse();
}

NormalizedIdeal parse_ideal(std::string_view text, int vars, bool strict) {
  return normalize_ideal(vars, parse_monomials(text, vars), strict);
}

}  // namespace eulerchi
