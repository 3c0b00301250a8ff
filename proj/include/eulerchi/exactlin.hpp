#pragma once

// Exact dense linear algebra over Q (GMP rationals) or a prime field F_p.
//
// Matrices always store GMP rationals. Under a prime field every stored
// entry is a canonical residue in [0, p); arithmetic is reduced after
// each operation. Pivoting is deterministic: the first nonzero entry in
// the current column, scanning rows top to bottom.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eulerchi {

using Scalar = mpq_class;

/// The coefficient field. `modulus == 0` means the rationals.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field{}; }
  static Field prime(std::uint64_t p);

  bool is_rational() const { return modulus_ == 0; }
  std::uint64_t modulus() const { return modulus_; }

  /// Canonical representative of `x` in this field.
  Scalar reduce(const Scalar& x) const;

  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint64_t modulus_ = 0;
};

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ExactMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static ExactMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix scalar(std::size_t n, const Scalar& value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_identity() const;
  ExactMatrix transpose() const;
  ExactMatrix reduced(const Field& field) const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const ExactMatrix& m);

/// Product over `field`. Throws SHAPE_MISMATCH when inner dimensions differ.
ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b, const Field& field = {});
ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b, const Field& field = {});
ExactMatrix scale(const ExactMatrix& a, const Scalar& s, const Field& field = {});

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
  ExactMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(const ExactMatrix& m, const Field& field = {});

std::size_t rank(const ExactMatrix& m, const Field& field = {});

/// Columns form a basis of the right kernel, one column per free variable of rref(m).
ExactMatrix kernel_basis(const ExactMatrix& m, const Field& field = {});

/// True when `m` is square with full rank.
bool is_invertible(const ExactMatrix& m, const Field& field = {});

/// ker(d_out) / im(d_in) at one spot of a complex, with explicit bases.
struct HomologyBasis {
  std::size_t ambient_dim = 0;
  ExactMatrix representatives;  // ambient_dim x h, columns are cycles
  ExactMatrix project;          // h x ambient_dim, cycle -> class coordinates

  std::size_t dim() const { return representatives.cols(); }
};

/// `d_in` maps into the spot (ambient_dim rows), `d_out` maps out of it
/// (ambient_dim columns). Throws SHAPE_MISMATCH or COMPLEX_VIOLATION.
HomologyBasis homology_basis(const ExactMatrix& d_in, const ExactMatrix& d_out, const Field& field = {});

/// Matrix of the map induced by `f` in the given homology bases:
/// tgt.project * f * src.representatives.
ExactMatrix induced_on_homology(const ExactMatrix& f, const HomologyBasis& src, const HomologyBasis& tgt,
                                const Field& field = {});

}  // namespace eulerchi
