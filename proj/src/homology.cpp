#include "eulerchi/homology.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

#include <fmt/core.h>

#include "eulerchi/cech.hpp"
#include "eulerchi/error.hpp"

namespace eulerchi {

std::string_view to_string(ComplexKind kind) { return kind == ComplexKind::Koszul ? "koszul" : "derham"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::HypothesisNotMet: return "HYPOTHESIS_NOT_MET";
  }
  return "FAIL";
}

std::size_t StrandComplex::dim(int p) const {
  std::size_t d = 0;
  for (auto b : block_dims[p]) d += b;
  return d;
}

namespace {

ExponentVector term_degree(ComplexKind kind, const ExponentVector& t, std::uint32_t s) {
  ExponentVector b = t;
  for (int i = 0; i < t.vars(); ++i)
    if ((s >> i) & 1U) b[i] += kind == ComplexKind::Koszul ? -1 : 1;
  return b;
}

StrandComplex build_strand(const StraightModule& m, const ExponentVector& t, ComplexKind kind) {
  const int vars = m.vars();
  if (t.vars() != vars) {
    throw Error(ErrorCode::ShapeMismatch, fmt::format("strand {} does not match {} variables", t.str(), vars));
  }
  StrandComplex c;
  c.kind = kind;
  c.t = t;
  c.subsets.resize(vars + 1);
  c.block_dims.resize(vars + 1);
  for (std::uint32_t s = 0; s < (1U << vars); ++s) {
    int p = std::popcount(s);
    c.subsets[p].push_back(s);
    c.block_dims[p].push_back(m.dim(neg_support(term_degree(kind, t, s))));
  }

  for (int p = 1; p <= vars; ++p) {
    // block offsets in C_{p-1}
    std::vector<std::size_t> row_offset(c.subsets[p - 1].size() + 1, 0);
    for (std::size_t k = 0; k < c.subsets[p - 1].size(); ++k) row_offset[k + 1] = row_offset[k] + c.block_dims[p - 1][k];
    ExactMatrix d(c.dim(p - 1), c.dim(p));
    std::size_t col = 0;
    for (std::size_t k = 0; k < c.subsets[p].size(); ++k) {
      const std::uint32_t s = c.subsets[p][k];
      const ExponentVector b = term_degree(kind, t, s);
      for (VarIndex i = 0; i < vars; ++i) {
        if (!((s >> i) & 1U)) continue;
        const std::uint32_t face = s & ~(1U << i);
        const int sign = insertion_sign(i, face);
        ExactMatrix block = kind == ComplexKind::Koszul ? x_action(m, b, i) : d_action(m, b, i);
        auto pos = std::lower_bound(c.subsets[p - 1].begin(), c.subsets[p - 1].end(), face);
        const std::size_t row = row_offset[pos - c.subsets[p - 1].begin()];
        for (std::size_t r = 0; r < block.rows(); ++r)
          for (std::size_t q = 0; q < block.cols(); ++q)
            if (sgn(block(r, q)) != 0) d(row + r, col + q) = sign * block(r, q);
      }
      col += c.block_dims[p][k];
    }
    c.differentials.push_back(d.reduced(m.field()));
  }
  return c;
}

}  // namespace

StrandComplex koszul_strand(const StraightModule& m, const ExponentVector& t) {
  return build_strand(m, t, ComplexKind::Koszul);
}

StrandComplex derham_strand(const StraightModule& m, const ExponentVector& t) {
  return build_strand(m, t, ComplexKind::DeRham);
}

std::vector<std::size_t> strand_homology(const StrandComplex& c, const Field& field) {
  const int top = c.top();
  std::vector<std::size_t> ranks(top + 2, 0);  // ranks[p] = rank of C_p -> C_{p-1}
  for (int p = 1; p <= top; ++p) {
    const ExactMatrix& d = c.differentials[p - 1];
    if (p < top && !multiply(d, c.differentials[p], field).is_zero()) {
      throw Error(ErrorCode::ComplexViolation,
                  fmt::format("{} strand at {}: d o d != 0 at spot {}", to_string(c.kind), c.t.str(), p + 1));
    }
    ranks[p] = rank(d, field);
  }
  std::vector<std::size_t> h(top + 1);
  for (int p = 0; p <= top; ++p) h[p] = c.dim(p) - ranks[p] - ranks[p + 1];
  return h;
}

bool certified_exact(ComplexKind kind, const ExponentVector& t) {
  const int critical = kind == ComplexKind::Koszul ? 0 : -1;
  return std::any_of(t.entries().begin(), t.entries().end(), [&](int x) { return x != critical; });
}

int zdegree(ComplexKind kind, const ExponentVector& t, int p) {
  return kind == ComplexKind::Koszul ? t.total() - p : t.total() + p;
}

std::vector<std::size_t> HomologyTable::dims(ComplexKind kind) const {
  std::vector<std::size_t> out(vars + 1, 0);
  for (const auto& e : entries)
    if (e.kind == kind) out[e.p] += e.dim;
  return out;
}

HomologyTable homology_tables(const StraightModule& m) {
  HomologyTable table;
  table.vars = m.vars();
  for (ComplexKind kind : {ComplexKind::Koszul, ComplexKind::DeRham}) {
    for (Chamber f : all_chambers(m.vars())) {
      const ExponentVector t = chamber_rep(f, m.vars());
      const StrandComplex c = build_strand(m, t, kind);
      const auto h = strand_homology(c, m.field());
      for (int p = 0; p <= c.top(); ++p) {
        if (h[p] == 0) continue;
        if (certified_exact(kind, t)) {
          throw Error(ErrorCode::InternalInconsistency,
                      fmt::format("{} strand at {} is certified exact but has H_{} of dimension {}", to_string(kind),
                                  t.str(), p, h[p]));
        }
        table.entries.push_back(HomologyEntry{kind, p, t, h[p], zdegree(kind, t, p)});
      }
    }
  }
  std::sort(table.entries.begin(), table.entries.end(), [](const HomologyEntry& a, const HomologyEntry& b) {
    return std::tie(a.kind, a.t, a.p) < std::tie(b.kind, b.t, b.p);
  });
  for (const auto& e : table.entries) {
    long signed_dim = (e.p % 2 == 0 ? 1L : -1L) * static_cast<long>(e.dim);
    (e.kind == ComplexKind::Koszul ? table.chi_koszul : table.chi_derham) += signed_dim;
  }
  return table;
}

EulerCharacteristics closed_form_characteristics(const StraightModule& m) {
  long alternating = 0;
  for (Chamber f : all_chambers(m.vars())) {
    alternating += (f.size() % 2 == 0 ? 1L : -1L) * static_cast<long>(m.dim(f));
  }
  const long sign = m.vars() % 2 == 0 ? 1 : -1;
  return {alternating, sign * alternating};
}

EulerCharacteristics euler_characteristics(const StraightModule& m, const HomologyTable& table) {
  EulerCharacteristics strand{table.chi_koszul, table.chi_derham};
  EulerCharacteristics closed = closed_form_characteristics(m);
  if (!(strand == closed)) {
    throw Error(ErrorCode::InternalInconsistency,
                fmt::format("{}: strand route gives chi = ({}, {}), closed form gives ({}, {})",
                            m.provenance().describe(), strand.koszul, strand.derham, closed.koszul, closed.derham));
  }
  return strand;
}

EulerCharacteristics euler_characteristics(const StraightModule& m) {
  return euler_characteristics(m, homology_tables(m));
}

TheoremVerdict verify_main_theorem(const StraightModule& m, const HomologyTable& table) {
  const long sign = m.vars() % 2 == 0 ? 1 : -1;
  TheoremVerdict v;
  v.chi_koszul = table.chi_koszul;
  v.chi_derham = table.chi_derham;
  v.verdict = v.chi_derham == sign * v.chi_koszul ? Verdict::Pass : Verdict::Fail;
  return v;
}

TheoremVerdict verify_main_theorem(const StraightModule& m) { return verify_main_theorem(m, homology_tables(m)); }

bool acts_bijectively(const StraightModule& m, VarIndex i) {
  for (Chamber f : all_chambers(m.vars())) {
    if (f.contains(i) && !is_invertible(m.u(f, i), m.field())) return false;
  }
  return true;
}

TheoremVerdict verify_localized_vanishing(const StraightModule& m, const HomologyTable& table, VarIndex i) {
  if (i < 0 || i >= m.vars()) throw Error(ErrorCode::InvalidArgument, fmt::format("no variable x{}", i));
  TheoremVerdict v;
  v.chi_koszul = table.chi_koszul;
  v.chi_derham = table.chi_derham;
  if (!acts_bijectively(m, i)) {
    v.verdict = Verdict::HypothesisNotMet;
    return v;
  }
  const auto koszul = table.dims(ComplexKind::Koszul);
  const bool koszul_vanishes = std::all_of(koszul.begin(), koszul.end(), [](std::size_t d) { return d == 0; });
  v.verdict = koszul_vanishes && table.chi_derham == 0 ? Verdict::Pass : Verdict::Fail;
  return v;
}

TheoremVerdict verify_localized_vanishing(const StraightModule& m, VarIndex i) {
  return verify_localized_vanishing(m, homology_tables(m), i);
}

}  // namespace eulerchi
