#include "reflekt/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "reflekt/errors.hpp"

namespace reflekt {

namespace {

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": size " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

}  // namespace

Backend common_backend(std::span<const Scalar> values, Backend fallback) {
  if (values.empty()) return fallback;
  Backend b = values.front().backend();
  for (const auto& v : values) {
    if (v.backend() != b) throw BackendMismatch("vector mixes rational and float entries");
  }
  return b;
}

Vector make_vector(std::initializer_list<long> values, Backend backend) {
  Vector out;
  out.reserve(values.size());
  for (long v : values) out.push_back(Scalar::integer(v, backend));
  return out;
}

Vector zeros(std::size_t n, Backend backend) { return Vector(n, Scalar::zero(backend)); }

Vector unit_vector(std::size_t n, std::size_t index, Backend backend) {
  if (index >= n) throw DimensionError("unit vector index out of range");
  Vector e = zeros(n, backend);
  e[index] = Scalar::one(backend);
  return e;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  check_same_size(a.size(), b.size(), "dot");
  if (a.empty()) return Scalar(0);
  Scalar acc = Scalar::zero(a.front().backend());
  for (std::size_t i = 0; i < a.size(); ++i) acc.add_mul(a[i], b[i]);
  return acc;
}

Vector add(std::span<const Scalar> a, std::span<const Scalar> b) {
  check_same_size(a.size(), b.size(), "add");
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector subtract(std::span<const Scalar> a, std::span<const Scalar> b) {
  check_same_size(a.size(), b.size(), "subtract");
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vector scale(std::span<const Scalar> a, const Scalar& factor) {
  Vector out(a.begin(), a.end());
  for (auto& v : out) v *= factor;
  return out;
}

Vector convert(std::span<const Scalar> a, Backend backend) {
  Vector out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(v.convert(backend));
  return out;
}

bool approx_equal(std::span<const Scalar> a, std::span<const Scalar> b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (compare(a[i], b[i], tol) != 0) return false;
  }
  return true;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Backend backend)
    : rows_(rows), cols_(cols), backend_(backend), data_(rows * cols, Scalar::zero(backend)) {}

Matrix Matrix::identity(std::size_t n, Backend backend) {
  Matrix m(n, n, backend);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(backend);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols, Backend backend) {
  Matrix m(0, cols, backend);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return Vector(s.begin(), s.end());
}

void Matrix::append_row(std::span<const Scalar> values) {
  check_same_size(values.size(), cols_, "append_row");
  if (common_backend(values, backend_) != backend_) {
    throw BackendMismatch("row backend differs from matrix backend");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw DimensionError("column block out of range");
  Matrix out(rows_, count, backend_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  }
  return out;
}

Vector Matrix::operator*(std::span<const Scalar> x) const {
  check_same_size(x.size(), cols_, "matrix-vector product");
  Vector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = Scalar::zero(backend_);
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (a.sign(0.0) != 0) acc.add_mul(a, x[c]);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  check_same_size(cols_, other.rows_, "matrix product");
  if (backend_ != other.backend_) throw BackendMismatch("matrix product across backends");
  Matrix out(rows_, other.cols_, backend_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (a.sign(0.0) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c).add_mul(a, other(k, c));
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_, backend_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

RrefResult rref(const Matrix& m, double tol) {
  Matrix a = m;
  const bool exact = m.backend() == Backend::rational;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    if (exact) {
      for (std::size_t r = row; r < a.rows(); ++r) {
        if (a(r, col).sign() != 0) {
          best = r;
          break;
        }
      }
    } else {
      double best_abs = tol;
      for (std::size_t r = row; r < a.rows(); ++r) {
        double v = std::fabs(a(r, col).to_double());
        if (v > best_abs) {
          best_abs = v;
          best = r;
        }
      }
    }
    if (best == a.rows()) {
      if (!exact) {
        for (std::size_t r = row; r < a.rows(); ++r) a(r, col) = Scalar::zero(a.backend());
      }
      continue;
    }
    if (best != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(best, c), a(row, c));
    }
    Scalar inv = Scalar::one(a.backend()) / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    a(row, col) = Scalar::one(a.backend());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      Scalar factor = a(r, col);
      if (factor.sign(exact ? 0.0 : tol) == 0) {
        a(r, col) = Scalar::zero(a.backend());
        continue;
      }
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (a(row, c).sign(0.0) != 0) a(r, c).sub_mul(factor, a(row, c));
      }
      a(r, col) = Scalar::zero(a.backend());
    }
    pivots.push_back(col);
    ++row;
  }
  if (!exact) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        if (a(r, c).is_zero(tol)) a(r, c) = Scalar::zero(a.backend());
      }
    }
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m, double tol) { return rref(m, tol).pivots.size(); }

std::size_t kernel_dim(const Matrix& m, double tol) { return m.cols() - rank(m, tol); }

Matrix orthogonal_complement_basis(std::span<const Scalar> a) {
  const Backend backend = common_backend(a);
  const std::size_t n = a.size();
  std::size_t p = n;
  if (backend == Backend::rational) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].sign() != 0) {
        p = i;
        break;
      }
    }
  } else {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = std::fabs(a[i].to_double());
      if (v > best) {
        best = v;
        p = i;
      }
    }
  }
  if (p == n) throw InvalidArgument("orthogonal complement of the zero vector");

  Matrix out(0, n, backend);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p) continue;
    Vector row = zeros(n, backend);
    row[j] = a[p];
    row[p] = -a[j];
    for (const auto& v : row) {
      int s = v.sign(0.0);
      if (s == 0) continue;
      if (s < 0) {
        for (auto& w : row) w = -w;
      }
      break;
    }
    out.append_row(row);
  }
  return out;
}

}  // namespace reflekt
