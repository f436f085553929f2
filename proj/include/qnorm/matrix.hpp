#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"

namespace qnorm {

/// Row-major dense matrix over an arbitrary ring element type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  Matrix transposed() const {
    if (data_.empty()) return Matrix();
    Matrix t(cols_, rows_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Ring R>
Matrix<typename R::Element> identity_matrix(const R& ring, std::size_t n) {
  Matrix<typename R::Element> m(n, n, ring.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

template <Ring R>
Matrix<typename R::Element> multiply(const R& ring, const Matrix<typename R::Element>& a,
                                     const Matrix<typename R::Element>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix<typename R::Element> c(a.rows(), b.cols(), ring.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (ring.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
    }
  return c;
}

template <Ring R>
std::vector<typename R::Element> apply(const R& ring, const Matrix<typename R::Element>& a,
                                       const std::vector<typename R::Element>& x) {
  if (a.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape");
  std::vector<typename R::Element> y(a.rows(), ring.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] = y[i] + a(i, j) * x[j];
  return y;
}

/// Coefficients of det(s*I - A), ascending in s, by Berkowitz's algorithm.
/// Division-free, so it is valid over any commutative ring, including
/// étale algebras with zero divisors and the local ring.
template <Ring R>
std::vector<typename R::Element> characteristic_polynomial(
    const R& ring, const Matrix<typename R::Element>& a) {
  using E = typename R::Element;
  const std::size_t n = a.rows();
  if (a.cols() != n) fail(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
  // Descending coefficients of the charpoly of the leading k x k block.
  std::vector<E> acc{ring.one()};
  for (std::size_t k = 0; k < n; ++k) {
    // Toeplitz column: 1, -a_kk, -R C, -R M C, ..., -R M^{k-1} C.
    std::vector<E> toeplitz;
    toeplitz.reserve(k + 2);
    toeplitz.push_back(ring.one());
    toeplitz.push_back(-a(k, k));
    std::vector<E> col(k, ring.zero());
    for (std::size_t i = 0; i < k; ++i) col[i] = a(i, k);
    for (std::size_t power = 0; power < k; ++power) {
      E dot = ring.zero();
      for (std::size_t j = 0; j < k; ++j) dot = dot + a(k, j) * col[j];
      toeplitz.push_back(-dot);
      if (power + 1 < k) {
        std::vector<E> next(k, ring.zero());
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) next[i] = next[i] + a(i, j) * col[j];
        col = std::move(next);
      }
    }
    std::vector<E> next(k + 2, ring.zero());
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= i && j < acc.size(); ++j)
        next[i] = next[i] + toeplitz[i - j] * acc[j];
    acc = std::move(next);
  }
  return std::vector<E>(acc.rbegin(), acc.rend());
}

template <Ring R>
typename R::Element determinant(const R& ring, const Matrix<typename R::Element>& a) {
  const auto cp = characteristic_polynomial(ring, a);
  return a.rows() % 2 == 0 ? cp.front() : -cp.front();
}

/// Solves A X = B by Gaussian elimination that only ever divides by units.
/// Over a field or a local ring this succeeds exactly when det A is a unit;
/// otherwise signals NotAUnit.
template <Ring R>
Matrix<typename R::Element> solve(const R& ring, Matrix<typename R::Element> a,
                                  Matrix<typename R::Element> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) fail(ErrorCode::DimensionMismatch, "linear solve shape");
  const std::size_t m = b.cols();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t r = c; r < n; ++r) {
      if (ring.is_unit(a(r, c))) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) fail(ErrorCode::NotAUnit, "matrix is not invertible over the base");
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(pivot, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(b(c, j), b(pivot, j));
    }
    const auto inv = ring.inverse(a(c, c));
    for (std::size_t j = 0; j < n; ++j) a(c, j) = a(c, j) * inv;
    for (std::size_t j = 0; j < m; ++j) b(c, j) = b(c, j) * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || ring.is_zero(a(r, c))) continue;
      const auto factor = a(r, c);
      for (std::size_t j = 0; j < n; ++j) a(r, j) = a(r, j) - factor * a(c, j);
      for (std::size_t j = 0; j < m; ++j) b(r, j) = b(r, j) - factor * b(c, j);
    }
  }
  return b;
}

}  // namespace qnorm
