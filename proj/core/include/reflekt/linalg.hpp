#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "reflekt/scalar.hpp"

namespace reflekt {

using Vector = std::vector<Scalar>;

/// Backend shared by every entry; throws BackendMismatch otherwise. An empty
/// vector reports `fallback`.
Backend common_backend(std::span<const Scalar> values, Backend fallback = Backend::rational);

Vector make_vector(std::initializer_list<long> values, Backend backend = Backend::rational);
Vector zeros(std::size_t n, Backend backend);
Vector unit_vector(std::size_t n, std::size_t index, Backend backend);  // 0-based index

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
Vector add(std::span<const Scalar> a, std::span<const Scalar> b);
Vector subtract(std::span<const Scalar> a, std::span<const Scalar> b);
Vector scale(std::span<const Scalar> a, const Scalar& factor);
Vector convert(std::span<const Scalar> a, Backend backend);

/// Componentwise equality (exact, or per-entry tolerance for floats).
bool approx_equal(std::span<const Scalar> a, std::span<const Scalar> b,
                  double tol = kDefaultTolerance);

/// Dense row-major matrix whose entries all share one backend.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Backend backend);

  static Matrix identity(std::size_t n, Backend backend);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols, Backend backend);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Backend backend() const { return backend_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const;

  void append_row(std::span<const Scalar> values);

  /// Columns [first, first + count) as a new matrix.
  Matrix column_block(std::size_t first, std::size_t count) const;

  Vector operator*(std::span<const Scalar> x) const;
  Matrix operator*(const Matrix& other) const;
  Matrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Backend backend_ = Backend::rational;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

/// Reduced row echelon form. Exact in rational mode; partial pivoting with
/// entries below `tol` treated as zero in float mode.
RrefResult rref(const Matrix& m, double tol = kDefaultTolerance);

std::size_t rank(const Matrix& m, double tol = kDefaultTolerance);

/// cols - rank.
std::size_t kernel_dim(const Matrix& m, double tol = kDefaultTolerance);

/**
 * n-1 independent rows b_j with <b_j, a> = 0, so {v : B v = 0} = span{a}.
 *
 * Rows follow the elementary pattern a_p e_j - a_j e_p for j != p, where p is
 * the first nonzero coordinate (largest magnitude in float mode); each row is
 * sign-normalized so its first nonzero entry is positive.
 */
Matrix orthogonal_complement_basis(std::span<const Scalar> a);

}  // namespace reflekt
