#include "eulerchi/oracle.hpp"

#include <algorithm>
#include <bit>

#include <fmt/core.h>

#include "eulerchi/cech.hpp"
#include "eulerchi/error.hpp"

namespace eulerchi {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

ExponentVector cell_degree(std::size_t cell, int vars, int radius) {
  const std::size_t side = 2 * radius + 1;
  std::vector<int> a(vars);
  for (int i = vars - 1; i >= 0; --i) {
    a[i] = static_cast<int>(cell % side) - radius;
    cell /= side;
  }
  return ExponentVector(std::move(a));
}

}  // namespace

bool BoxRealization::in_box(const ExponentVector& a) const {
  return std::all_of(a.entries().begin(), a.entries().end(), [&](int x) { return x >= -radius_ && x <= radius_; });
}

bool BoxRealization::in_interior(const ExponentVector& a) const {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [&](int x) { return x >= -radius_ + 1 && x <= radius_ - 1; });
}

std::size_t BoxRealization::cell(const ExponentVector& a) const {
  const std::size_t side = 2 * radius_ + 1;
  std::size_t c = 0;
  for (int i = 0; i < a.vars(); ++i) c = c * side + static_cast<std::size_t>(a[i] + radius_);
  return c;
}

std::int64_t BoxRealization::locate(std::uint32_t subset, const ExponentVector& a) const {
  if (!in_box(a)) return -1;
  return spots_.at(subset).index[cell(a)];
}

BoxRealization build_box(const SquarefreeIdeal& ideal, int radius, const BoxLimits& limits) {
  const int vars = ideal.vars();
  if (radius < 2) throw Error(ErrorCode::InvalidArgument, fmt::format("box radius {} is below 2", radius));
  if (vars > limits.max_vars) {
    throw Error(ErrorCode::BoxTooLarge,
                fmt::format("{} variables exceed the oracle limit of {}", vars, limits.max_vars));
  }
  const std::size_t side = 2 * radius + 1;
  // overflow-safe check of vars * side^vars <= max_size
  std::size_t size = vars;
  for (int i = 0; i < vars; ++i) {
    if (size > limits.max_size / side) {
      throw Error(ErrorCode::BoxTooLarge, fmt::format("box of radius {} in {} variables exceeds size cap {}", radius,
                                                      vars, limits.max_size));
    }
    size *= side;
  }
  const std::size_t cells = ipow(side, vars);
  std::vector<ExponentVector> degrees;
  degrees.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c) degrees.push_back(cell_degree(c, vars, radius));

  const int s = ideal.num_gens();
  std::vector<BoxSpot> spots(std::size_t{1} << s);
  for (std::uint32_t t = 0; t < (1U << s); ++t) {
    BoxSpot& spot = spots[t];
    spot.subset = t;
    spot.inverted = ideal.support_union(t);
    spot.index.assign(cells, -1);
    for (std::size_t c = 0; c < cells; ++c) {
      if ((neg_support(degrees[c]).mask() & ~spot.inverted) == 0) {
        spot.index[c] = static_cast<std::int64_t>(spot.basis.size());
        spot.basis.push_back(degrees[c]);
      }
    }
  }

  BoxRealization box(ideal, radius, std::move(spots));
  for (std::uint32_t t = 0; t < (1U << s); ++t) {
    BoxSpot& spot = box.mutable_spot(t);
    const std::size_t size_t_ = spot.basis.size();
    spot.x.assign(vars, BoxOperator{std::vector<std::int64_t>(size_t_, -1), std::vector<Scalar>(size_t_)});
    spot.d.assign(vars, BoxOperator{std::vector<std::int64_t>(size_t_, -1), std::vector<Scalar>(size_t_)});
    for (std::size_t k = 0; k < size_t_; ++k) {
      const ExponentVector& a = spot.basis[k];
      for (VarIndex i = 0; i < vars; ++i) {
        // X_i X^a = X^{a+e_i}
        spot.x[i].coeff[k] = 1;
        spot.x[i].target[k] = box.locate(t, a.shifted(i, 1));
        // d_i X^a = a_i X^{a-e_i}
        spot.d[i].coeff[k] = a[i];
        spot.d[i].target[k] = a[i] == 0 ? -1 : box.locate(t, a.shifted(i, -1));
      }
    }
  }
  return box;
}

BoxModule BoxModule::local_cohomology(const BoxRealization& box, int j) {
  if (j < 0 || j > box.ideal().num_gens()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("H^{} requested for {} generators", j, box.ideal().num_gens()));
  }
  return BoxModule(box, false, j, 0);
}

BoxModule BoxModule::spot(const BoxRealization& box, std::uint32_t subset) {
  if (subset >= box.spots().size()) throw Error(ErrorCode::InvalidArgument, "no such Cech spot");
  return BoxModule(box, true, std::popcount(subset), subset);
}

namespace {

std::vector<std::uint32_t> spots_at(const BoxRealization& box, int p, const ExponentVector& b) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < box.spots().size(); ++t) {
    if (std::popcount(t) == p && box.locate(t, b) >= 0) out.push_back(t);
  }
  return out;
}

std::size_t position(const std::vector<std::uint32_t>& list, std::uint32_t t) {
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), t) - list.begin());
}

// Literal Cech differential at degree b: X^b in R_{f_T} to X^b in R_{f_{T u k}}.
ExactMatrix box_cech_differential(const BoxRealization& box, int p, const ExponentVector& b) {
  auto src = spots_at(box, p, b);
  auto tgt = spots_at(box, p + 1, b);
  ExactMatrix d(tgt.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    for (int k = 0; k < box.ideal().num_gens(); ++k) {
      if ((src[c] >> k) & 1U) continue;
      std::size_t r = position(tgt, src[c] | (1U << k));
      if (r == tgt.size()) {
        throw Error(ErrorCode::InternalInconsistency, "box Cech differential leaves the module");
      }
      d(r, c) = insertion_sign(k, src[c]);
    }
  }
  return d;
}

}  // namespace

std::vector<std::uint32_t> BoxModule::ambient_spots(const ExponentVector& b) const {
  if (single_spot_) {
    if (box_->locate(subset_, b) >= 0) return {subset_};
    return {};
  }
  return spots_at(*box_, degree_, b);
}

const HomologyBasis& BoxModule::piece(const ExponentVector& b) {
  auto it = cache_.find(b);
  if (it != cache_.end()) return it->second;
  if (!box_->in_box(b)) throw Error(ErrorCode::OutsideInterior, fmt::format("degree {} is outside the box", b.str()));
  HomologyBasis basis;
  if (single_spot_) {
    std::size_t d = ambient_spots(b).size();
    basis = HomologyBasis{d, ExactMatrix::identity(d), ExactMatrix::identity(d)};
  } else {
    const std::size_t ambient = ambient_spots(b).size();
    ExactMatrix d_in = degree_ == 0 ? ExactMatrix(ambient, 0) : box_cech_differential(*box_, degree_ - 1, b);
    ExactMatrix d_out =
        degree_ == box_->ideal().num_gens() ? ExactMatrix(0, ambient) : box_cech_differential(*box_, degree_, b);
    basis = homology_basis(d_in, d_out);
  }
  return cache_.emplace(b, std::move(basis)).first->second;
}

ExactMatrix BoxModule::chain_operator(BoxOp op, VarIndex i, const ExponentVector& b) const {
  const ExponentVector image = b.shifted(i, op == BoxOp::Multiply ? 1 : -1);
  auto src = ambient_spots(b);
  auto tgt = ambient_spots(image);
  ExactMatrix m(tgt.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const BoxSpot& spot = box_->spot(src[c]);
    const std::size_t k = static_cast<std::size_t>(box_->locate(src[c], b));
    const BoxOperator& table = op == BoxOp::Multiply ? spot.x[i] : spot.d[i];
    const std::int64_t target = table.target[k];
    if (target < 0) continue;
    if (!(spot.basis[target] == image)) {
      throw Error(ErrorCode::InternalInconsistency,
                  fmt::format("operator table sends {} to {} instead of {}", b.str(), spot.basis[target].str(),
                              image.str()));
    }
    m(position(tgt, src[c]), c) = table.coeff[k];
  }
  return m;
}

ExactMatrix BoxModule::piece_operator(BoxOp op, VarIndex i, const ExponentVector& b) {
  const ExponentVector image = b.shifted(i, op == BoxOp::Multiply ? 1 : -1);
  const HomologyBasis& src = piece(b);
  const HomologyBasis& tgt = piece(image);
  return induced_on_homology(chain_operator(op, i, b), src, tgt);
}

namespace {

ExponentVector strand_term(ComplexKind kind, const ExponentVector& t, std::uint32_t s) {
  ExponentVector b = t;
  for (int i = 0; i < t.vars(); ++i)
    if ((s >> i) & 1U) b[i] += kind == ComplexKind::Koszul ? -1 : 1;
  return b;
}

}  // namespace

bool BoxModule::strand_in_interior(ComplexKind kind, const ExponentVector& t) const {
  for (std::uint32_t s = 0; s < (1U << t.vars()); ++s) {
    if (!box_->in_interior(strand_term(kind, t, s))) return false;
  }
  return true;
}

std::vector<std::size_t> BoxModule::strand_homology(ComplexKind kind, const ExponentVector& t) {
  const int vars = box_->vars();
  if (t.vars() != vars) throw Error(ErrorCode::ShapeMismatch, "strand degree has the wrong length");
  if (!strand_in_interior(kind, t)) {
    throw Error(ErrorCode::OutsideInterior, fmt::format("{} strand at {} leaves the interior of the radius-{} box",
                                                        to_string(kind), t.str(), box_->radius()));
  }
  const BoxOp op = kind == ComplexKind::Koszul ? BoxOp::Multiply : BoxOp::Differentiate;
  StrandComplex c;
  c.kind = kind;
  c.t = t;
  c.subsets.resize(vars + 1);
  c.block_dims.resize(vars + 1);
  for (std::uint32_t s = 0; s < (1U << vars); ++s) {
    const int p = std::popcount(s);
    c.subsets[p].push_back(s);
    c.block_dims[p].push_back(piece(strand_term(kind, t, s)).dim());
  }
  for (int p = 1; p <= vars; ++p) {
    std::vector<std::size_t> row_offset{0};
    for (auto d : c.block_dims[p - 1]) row_offset.push_back(row_offset.back() + d);
    ExactMatrix d(c.dim(p - 1), c.dim(p));
    std::size_t col = 0;
    for (std::size_t k = 0; k < c.subsets[p].size(); ++k) {
      const std::uint32_t s = c.subsets[p][k];
      const ExponentVector b = strand_term(kind, t, s);
      for (VarIndex i = 0; i < vars; ++i) {
        if (!((s >> i) & 1U)) continue;
        const std::uint32_t face = s & ~(1U << i);
        const ExactMatrix block = piece_operator(op, i, b);
        const std::size_t row = row_offset[position(c.subsets[p - 1], face)];
        const int sign = insertion_sign(i, face);
        for (std::size_t r = 0; r < block.rows(); ++r)
          for (std::size_t q = 0; q < block.cols(); ++q) d(row + r, col + q) = sign * block(r, q);
      }
      col += c.block_dims[p][k];
    }
    c.differentials.push_back(std::move(d));
  }
  return eulerchi::strand_homology(c);
}

std::size_t box_cohomology_strand(const BoxRealization& box, int j, const ExponentVector& a) {
  if (!box.in_interior(a)) {
    throw Error(ErrorCode::OutsideInterior, fmt::format("degree {} is outside the interior", a.str()));
  }
  return BoxModule::local_cohomology(box, j).piece(a).dim();
}

std::vector<std::size_t> box_homology_strand(const BoxRealization& box, int j, ComplexKind kind,
                                             const ExponentVector& t) {
  return BoxModule::local_cohomology(box, j).strand_homology(kind, t);
}

namespace {

std::vector<ExponentVector> interior_degrees(const BoxRealization& box) {
  std::vector<ExponentVector> out;
  const std::size_t cells = ipow(2 * box.radius() + 1, box.vars());
  for (std::size_t c = 0; c < cells; ++c) {
    ExponentVector a = cell_degree(c, box.vars(), box.radius());
    if (box.in_interior(a)) out.push_back(std::move(a));
  }
  return out;
}

// Sparse vector on one spot basis.
using SpotVector = std::map<std::int64_t, Scalar>;

SpotVector act(const BoxOperator& op, const SpotVector& v) {
  SpotVector out;
  for (const auto& [k, c] : v) {
    if (sgn(op.coeff[k]) == 0 || op.target[k] < 0) continue;
    out[op.target[k]] += c * op.coeff[k];
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

SpotVector combine(const SpotVector& a, const SpotVector& b, int sign) {
  SpotVector out = a;
  for (const auto& [k, c] : b) out[k] += sign * c;
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

std::string spot_witness(const BoxRealization& box, std::uint32_t t, const ExponentVector& a) {
  return fmt::format("spot T = {} (generators of I = ({})), monomial X^{}", format_support(t), box.ideal().str(),
                     a.str());
}

}  // namespace

OracleResult eulerian_check(const BoxRealization& box) {
  OracleResult result;
  auto fail = [&](std::string detail) {
    result.verdict = Verdict::Fail;
    result.detail = std::move(detail);
    return result;
  };

  for (const BoxSpot& spot : box.spots()) {
    for (std::size_t k = 0; k < spot.basis.size(); ++k) {
      const ExponentVector& a = spot.basis[k];
      if (!box.in_interior(a)) continue;
      SpotVector v{{static_cast<std::int64_t>(k), Scalar(1)}};
      SpotVector euler;
      for (VarIndex i = 0; i < box.vars(); ++i) {
        const std::int64_t down = spot.d[i].target[k];
        if (down < 0 && sgn(spot.d[i].coeff[k]) != 0) {
          return fail(fmt::format("d_{} drops a nonzero term at {}", i, spot_witness(box, spot.subset, a)));
        }
        euler = combine(euler, act(spot.x[i], act(spot.d[i], v)), 1);
      }
      euler = combine(euler, SpotVector{{static_cast<std::int64_t>(k), Scalar(a.total())}}, -1);
      ++result.checks;
      if (!euler.empty()) return fail(fmt::format("(eps - |a|) X^a != 0 at {}", spot_witness(box, spot.subset, a)));
    }
  }

  const auto degrees = interior_degrees(box);
  for (int j = 0; j <= box.ideal().num_gens(); ++j) {
    BoxModule module = BoxModule::local_cohomology(box, j);
    for (const auto& a : degrees) {
      const HomologyBasis& basis = module.piece(a);
      if (basis.dim() == 0) continue;
      const std::size_t ambient = basis.ambient_dim;
      ExactMatrix euler(ambient, ambient);
      for (VarIndex i = 0; i < box.vars(); ++i) {
        euler = add(euler, multiply(module.chain_operator(BoxOp::Multiply, i, a.shifted(i, -1)),
                                    module.chain_operator(BoxOp::Differentiate, i, a)));
      }
      euler = add(euler, ExactMatrix::scalar(ambient, -a.total()));
      ++result.checks;
      if (!multiply(euler, basis.representatives).is_zero()) {
        return fail(fmt::format("(eps - |a|) kills no H^{} representative at degree {} for I = ({})", j, a.str(),
                                box.ideal().str()));
      }
    }
  }
  return result;
}

OracleResult weyl_relations_check(const BoxRealization& box) {
  OracleResult result;
  for (const BoxSpot& spot : box.spots()) {
    for (std::size_t k = 0; k < spot.basis.size(); ++k) {
      const ExponentVector& a = spot.basis[k];
      if (!box.in_interior(a)) continue;
      const SpotVector v{{static_cast<std::int64_t>(k), Scalar(1)}};
      for (VarIndex i = 0; i < box.vars(); ++i) {
        for (VarIndex j = 0; j < box.vars(); ++j) {
          ++result.checks;
          SpotVector bracket = combine(act(spot.d[i], act(spot.x[j], v)), act(spot.x[j], act(spot.d[i], v)), -1);
          SpotVector expected = i == j ? v : SpotVector{};
          std::string what;
          if (bracket != expected) what = fmt::format("[d_{}, X_{}]", i, j);
          if (i != j) {
            if (!combine(act(spot.x[i], act(spot.x[j], v)), act(spot.x[j], act(spot.x[i], v)), -1).empty())
              what = fmt::format("[X_{}, X_{}]", i, j);
            if (!combine(act(spot.d[i], act(spot.d[j], v)), act(spot.d[j], act(spot.d[i], v)), -1).empty())
              what = fmt::format("[d_{}, d_{}]", i, j);
          }
          if (!what.empty()) {
            result.verdict = Verdict::Fail;
            result.detail = fmt::format("{} fails at {}", what, spot_witness(box, spot.subset, a));
            return result;
          }
        }
      }
    }
  }
  return result;
}

OracleResult cross_check(const StraightModule& m, BoxModule& realized) {
  const BoxRealization& box = realized.box();
  const int vars = m.vars();
  if (box.vars() != vars) throw Error(ErrorCode::ShapeMismatch, "module and box have different variable counts");
  if (box.radius() < 3) {
    throw Error(ErrorCode::OutsideInterior,
                fmt::format("radius {} box interior does not contain {{-2..1}}^{}", box.radius(), vars));
  }
  OracleResult result;
  auto fail = [&](std::string detail) {
    result.verdict = Verdict::Fail;
    result.detail = fmt::format("{}: {}", m.provenance().describe(), detail);
    return result;
  };

  for (Chamber f : all_chambers(vars)) {
    const ExponentVector a = chamber_rep(f, vars);
    const std::size_t got = realized.piece(a).dim();
    ++result.checks;
    if (got != m.dim(f)) return fail(fmt::format("chamber {} has dim {} but the box gives {}", f.str(), m.dim(f), got));
  }

  const HomologyTable table = homology_tables(m);
  const std::size_t probes = ipow(4, vars);
  for (std::size_t code = 0; code < probes; ++code) {
    std::vector<int> entries(vars);
    std::size_t rest = code;
    for (int i = vars - 1; i >= 0; --i) {
      entries[i] = static_cast<int>(rest % 4) - 2;
      rest /= 4;
    }
    const ExponentVector t(std::move(entries));
    for (ComplexKind kind : {ComplexKind::Koszul, ComplexKind::DeRham}) {
      if (!realized.strand_in_interior(kind, t)) {
        result.skipped.push_back(fmt::format("{} strand at {}", to_string(kind), t.str()));
        continue;
      }
      std::vector<std::size_t> expected(vars + 1, 0);
      for (const auto& e : table.entries)
        if (e.kind == kind && e.t == t) expected[e.p] = e.dim;
      const auto got = realized.strand_homology(kind, t);
      ++result.checks;
      for (int p = 0; p <= vars; ++p) {
        if (got[p] == expected[p]) continue;
        return fail(fmt::format("{} H_{} at strand {}: pipeline {} vs box {}", to_string(kind), p, t.str(),
                                expected[p], got[p]));
      }
      if (certified_exact(kind, t)) {
        for (int p = 0; p <= vars; ++p)
          if (got[p] != 0) return fail(fmt::format("{} strand {} is not exact in the box", to_string(kind), t.str()));
      }
    }
  }
  return result;
}

OracleResult cross_check(const StraightModule& m, const BoxRealization& box, int j) {
  BoxModule realized = BoxModule::local_cohomology(box, j);
  return cross_check(m, realized);
}

}  // namespace eulerchi
