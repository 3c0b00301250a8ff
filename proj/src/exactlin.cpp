#include "eulerchi/exactlin.hpp"

#include <ostream>
#include <utility>

#include <fmt/core.h>

#include "eulerchi/error.hpp"

namespace eulerchi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::ComplexViolation: return "COMPLEX_VIOLATION";
    case ErrorCode::UnitIdeal: return "UNIT_IDEAL";
    case ErrorCode::NonSquarefree: return "NON_SQUAREFREE";
    case ErrorCode::CommutativityFailure: return "COMMUTATIVITY_FAILURE";
    case ErrorCode::InternalInconsistency: return "INTERNAL_INCONSISTENCY";
    case ErrorCode::BoxTooLarge: return "BOX_TOO_LARGE";
    case ErrorCode::OutsideInterior: return "OUTSIDE_INTERIOR";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t residue(const Scalar& x, std::uint64_t p) {
  std::uint64_t num = mpz_fdiv_ui(x.get_num_mpz_t(), p);
  std::uint64_t den = mpz_fdiv_ui(x.get_den_mpz_t(), p);
  if (den == 0) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("denominator of {} vanishes mod {}", x.get_str(), p));
  }
  return mulmod(num, powmod(den, p - 2, p), p);
}

Scalar from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return Scalar(z);
}

struct RationalOps {
  using value_type = Scalar;

  static bool is_zero(const Scalar& x) { return sgn(x) == 0; }
  value_type in(const Scalar& x) const { return x; }
  Scalar out(const value_type& x) const { return x; }
  void normalize_row(value_type* row, std::size_t from, std::size_t cols) const {
    Scalar inv = 1 / row[from];
    for (std::size_t c = from; c < cols; ++c) {
      if (!is_zero(row[c])) row[c] *= inv;
    }
  }
  // row -= factor * pivot_row on the listed columns
  void axpy(value_type* row, const value_type& factor, const value_type* pivot_row,
            const std::vector<std::size_t>& support) const {
    Scalar tmp;
    for (std::size_t c : support) {
      tmp = factor * pivot_row[c];
      row[c] -= tmp;
    }
  }
};

struct PrimeOps {
  using value_type = std::uint64_t;
  std::uint64_t p;

  static bool is_zero(std::uint64_t x) { return x == 0; }
  value_type in(const Scalar& x) const { return residue(x, p); }
  Scalar out(value_type x) const { return from_u64(x); }
  void normalize_row(value_type* row, std::size_t from, std::size_t cols) const {
    std::uint64_t inv = powmod(row[from], p - 2, p);
    for (std::size_t c = from; c < cols; ++c) row[c] = mulmod(row[c], inv, p);
  }
  void axpy(value_type* row, value_type factor, const value_type* pivot_row,
            const std::vector<std::size_t>& support) const {
    for (std::size_t c : support) {
      std::uint64_t t = mulmod(factor, pivot_row[c], p);
      row[c] = row[c] >= t ? row[c] - t : row[c] + p - t;
    }
  }
};

// Gaussian elimination with pivot rows normalized to 1. With `full` the
// result is reduced row echelon form, otherwise plain row echelon form.
template <class Ops>
struct Eliminator {
  using T = typename Ops::value_type;

  Ops ops;
  std::size_t rows;
  std::size_t cols;
  std::vector<T> a;

  Eliminator(Ops o, const ExactMatrix& m) : ops(o), rows(m.rows()), cols(m.cols()), a(m.rows() * m.cols()) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = ops.in(m(r, c));
  }

  T* row(std::size_t r) { return a.data() + r * cols; }

  std::vector<std::size_t> run(bool full) {
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> support;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < rows; ++c) {
      std::size_t r = prow;
      while (r < rows && Ops::is_zero(a[r * cols + c])) ++r;
      if (r == rows) continue;
      if (r != prow) {
        for (std::size_t k = c; k < cols; ++k) std::swap(a[r * cols + k], a[prow * cols + k]);
      }
      ops.normalize_row(row(prow), c, cols);
      support.clear();
      for (std::size_t k = c; k < cols; ++k) {
        if (!Ops::is_zero(a[prow * cols + k])) support.push_back(k);
      }
      for (std::size_t other = full ? 0 : prow + 1; other < rows; ++other) {
        if (other == prow) continue;
        T* target = row(other);
        if (Ops::is_zero(target[c])) continue;
        T factor = target[c];
        ops.axpy(target, factor, row(prow), support);
      }
      pivots.push_back(c);
      ++prow;
    }
    return pivots;
  }

  ExactMatrix result() const {
    ExactMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = ops.out(a[r * cols + c]);
    return m;
  }
};

template <class Fn>
auto with_ops(const Field& field, Fn&& fn) {
  if (field.is_rational()) return fn(RationalOps{});
  return fn(PrimeOps{field.modulus()});
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 62) || !is_prime(p)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} is not a supported prime modulus", p));
  }
  Field f;
  f.modulus_ = p;
  return f;
}

Scalar Field::reduce(const Scalar& x) const {
  if (is_rational()) return x;
  return from_u64(residue(x, modulus_));
}

std::string Field::name() const { return is_rational() ? "Q" : fmt::format("F_{}", modulus_); }

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) { return scalar(n, 1); }

ExactMatrix ExactMatrix::scalar(std::size_t n, const Scalar& value) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::reduced(const Field& field) const {
  if (field.is_rational()) return *this;
  ExactMatrix m = *this;
  for (auto& x : m.data_) x = field.reduce(x);
  return m;
}

std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c).get_str();
  }
  return os << "] (" << m.rows() << 'x' << m.cols() << ')';
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b, const Field& field) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("cannot multiply {}x{} by {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
  }
  ExactMatrix out(a.rows(), b.cols());
  Scalar tmp;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) == 0) continue;
        tmp = aik * b(k, j);
        out(i, j) += tmp;
      }
    }
  }
  return out.reduced(field);
}

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b, const Field& field) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("cannot add {}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
  }
  ExactMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out.reduced(field);
}

ExactMatrix scale(const ExactMatrix& a, const Scalar& s, const Field& field) {
  ExactMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= s;
  return out.reduced(field);
}

RowEchelon rref(const ExactMatrix& m, const Field& field) {
  return with_ops(field, [&](auto ops) {
    Eliminator elim(ops, m);
    auto pivots = elim.run(true);
    return RowEchelon{elim.result(), std::move(pivots)};
  });
}

std::size_t rank(const ExactMatrix& m, const Field& field) {
  if (m.empty()) return 0;
  return with_ops(field, [&](auto ops) {
    Eliminator elim(ops, m);
    return elim.run(false).size();
  });
}

namespace {

std::vector<std::size_t> free_columns(const std::vector<std::size_t>& pivots, std::size_t cols) {
  std::vector<std::size_t> free;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (next < pivots.size() && pivots[next] == c) {
      ++next;
    } else {
      free.push_back(c);
    }
  }
  return free;
}

// Kernel vector for free column f: 1 at f, -R[row][f] at each pivot column.
ExactMatrix kernel_from_rref(const RowEchelon& e, const std::vector<std::size_t>& free, std::size_t cols,
                             const Field& field) {
  ExactMatrix k(cols, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const Scalar& v = e.reduced(r, free[j]);
      if (sgn(v) != 0) k(e.pivots[r], j) = field.reduce(-v);
    }
  }
  return k;
}

}  // namespace

ExactMatrix kernel_basis(const ExactMatrix& m, const Field& field) {
  RowEchelon e = rref(m, field);
  auto free = free_columns(e.pivots, m.cols());
  return kernel_from_rref(e, free, m.cols(), field);
}

bool is_invertible(const ExactMatrix& m, const Field& field) {
  return m.rows() == m.cols() && rank(m, field) == m.rows();
}

HomologyBasis homology_basis(const ExactMatrix& d_in, const ExactMatrix& d_out, const Field& field) {
  const std::size_t ambient = d_in.rows();
  if (d_out.cols() != ambient) {
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("incoming map has {} rows but outgoing map has {} columns", ambient, d_out.cols()));
  }
  if (!multiply(d_out, d_in, field).is_zero()) {
    throw Error(ErrorCode::ComplexViolation, "outgoing map composed with incoming map is nonzero");
  }

  // Cycles: coordinates of ker(d_out) are the values at the free columns.
  RowEchelon out_echelon = rref(d_out, field);
  auto free = free_columns(out_echelon.pivots, ambient);
  ExactMatrix cycles = kernel_from_rref(out_echelon, free, ambient, field);

  // Boundaries expressed in cycle coordinates; rref of the transpose gives
  // a basis of that subspace with distinct pivot positions.
  ExactMatrix boundary_coords(free.size(), d_in.cols());
  for (std::size_t q = 0; q < free.size(); ++q)
    for (std::size_t c = 0; c < d_in.cols(); ++c) boundary_coords(q, c) = d_in(free[q], c);
  RowEchelon bnd = rref(boundary_coords.transpose(), field);
  auto quotient_positions = free_columns(bnd.pivots, free.size());

  const std::size_t h = quotient_positions.size();
  HomologyBasis basis;
  basis.ambient_dim = ambient;
  basis.representatives = ExactMatrix(ambient, h);
  basis.project = ExactMatrix(h, ambient);
  for (std::size_t m = 0; m < h; ++m) {
    std::size_t q = quotient_positions[m];
    for (std::size_t r = 0; r < ambient; ++r) basis.representatives(r, m) = cycles(r, q);
    basis.project(m, free[q]) = 1;
    for (std::size_t row = 0; row < bnd.pivots.size(); ++row) {
      const Scalar& v = bnd.reduced(row, q);
      if (sgn(v) != 0) basis.project(m, free[bnd.pivots[row]]) = field.reduce(-v);
    }
  }
  return basis;
}

ExactMatrix induced_on_homology(const ExactMatrix& f, const HomologyBasis& src, const HomologyBasis& tgt,
                                const Field& field) {
  if (f.cols() != src.ambient_dim || f.rows() != tgt.ambient_dim) {
    throw Error(ErrorCode::ShapeMismatch,
                fmt::format("map is {}x{} but homology ambients are {} -> {}", f.rows(), f.cols(),
                            src.ambient_dim, tgt.ambient_dim));
  }
  return multiply(tgt.project, multiply(f, src.representatives, field), field);
}

}  // namespace eulerchi
