#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"
#include "qnorm/etale.hpp"
#include "qnorm/matrix.hpp"

namespace qnorm {

/// Coordinates of a vector in a quadratic space.
template <Ring R>
using QVector = std::vector<typename R::Element>;

/// Nondegenerate quadratic space given by a symmetric Gram matrix G,
/// with q(v) = v^T G v and <v, w> = v^T G w (so <v, v> = q(v)).
template <Ring R>
class QuadraticSpace {
 public:
  using Scalar = typename R::Element;
  using Vector = QVector<R>;

  QuadraticSpace(R ring, Matrix<Scalar> gram) : ring_(std::move(ring)), gram_(std::move(gram)) {
    if (gram_.rows() == 0 || gram_.rows() != gram_.cols())
      fail(ErrorCode::DimensionMismatch, "Gram matrix must be square and nonempty");
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = i + 1; j < rank(); ++j)
        if (!(gram_(i, j) == gram_(j, i))) fail(ErrorCode::Degenerate, "Gram matrix is not symmetric");
    if (!ring_.is_unit(determinant(ring_, gram_)))
      fail(ErrorCode::Degenerate, "Gram determinant is not a unit");
  }

  const R& ring() const { return ring_; }
  const Matrix<Scalar>& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

  Scalar bilinear(const Vector& v, const Vector& w) const {
    check(v);
    check(w);
    Scalar acc = ring_.zero();
    for (std::size_t i = 0; i < rank(); ++i) {
      if (ring_.is_zero(v[i])) continue;
      Scalar row = ring_.zero();
      for (std::size_t j = 0; j < rank(); ++j) row = row + gram_(i, j) * w[j];
      acc = acc + v[i] * row;
    }
    return acc;
  }

  Scalar evaluate(const Vector& v) const { return bilinear(v, v); }

  Vector zero_vector() const { return Vector(rank(), ring_.zero()); }
  Vector basis_vector(std::size_t i) const {
    Vector e = zero_vector();
    e.at(i) = ring_.one();
    return e;
  }

  void check(const Vector& v) const {
    if (v.size() != rank()) fail(ErrorCode::DimensionMismatch, "vector length does not match the rank");
  }

 private:
  R ring_;
  Matrix<Scalar> gram_;
};

template <class T>
std::vector<T> scale(const T& c, const std::vector<T>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(c * x);
  return out;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector sum of different lengths");
  std::vector<T> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

template <class T>
std::vector<T> subtract(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector difference of different lengths");
  std::vector<T> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

template <Ring R>
typename R::Element evaluate(const QuadraticSpace<R>& space, const QVector<R>& v) {
  return space.evaluate(v);
}

template <Ring R>
typename R::Element bilinear(const QuadraticSpace<R>& space, const QVector<R>& v, const QVector<R>& w) {
  return space.bilinear(v, w);
}

/// q_E = q tensored with E: same Gram matrix, entries embedded in E.
template <ScalarDomain D>
QuadraticSpace<EtaleAlgebra<D>> base_change(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg) {
  const auto& g = space.gram();
  Matrix<AlgebraElement<D>> gram(g.rows(), g.cols(), alg.zero());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) gram(i, j) = alg.embed(g(i, j));
  return QuadraticSpace<EtaleAlgebra<D>>(alg, std::move(gram));
}

template <ScalarDomain D>
QVector<EtaleAlgebra<D>> embed_vector(const EtaleAlgebra<D>& alg, const QVector<D>& v) {
  QVector<EtaleAlgebra<D>> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(alg.embed(x));
  return out;
}

template <Ring R>
struct Diagonalization {
  /// Column k is the k-th orthogonal basis vector.
  Matrix<typename R::Element> basis;
  std::vector<typename R::Element> diagonal;
};

/// Symmetric Gaussian elimination with unit pivots. When no basis vector
/// has a unit value, a pair (b_i, b_j) with <b_i, b_j> a unit is replaced
/// by (b_i + b_j, b_i - b_j).
template <Ring R>
Diagonalization<R> diagonalize(const QuadraticSpace<R>& space) {
  const R& ring = space.ring();
  const std::size_t m = space.rank();
  std::vector<QVector<R>> basis;
  for (std::size_t i = 0; i < m; ++i) basis.push_back(space.basis_vector(i));

  for (std::size_t k = 0; k < m; ++k) {
    std::size_t pivot = m;
    for (std::size_t i = k; i < m && pivot == m; ++i)
      if (ring.is_unit(space.evaluate(basis[i]))) pivot = i;
    if (pivot == m) {
      for (std::size_t i = k; i < m && pivot == m; ++i)
        for (std::size_t j = i + 1; j < m && pivot == m; ++j) {
          if (!ring.is_unit(space.bilinear(basis[i], basis[j]))) continue;
          auto sum = add(basis[i], basis[j]);
          auto diff = subtract(basis[i], basis[j]);
          if (!ring.is_unit(space.evaluate(sum))) continue;
          basis[i] = std::move(sum);
          basis[j] = std::move(diff);
          pivot = i;
        }
    }
    if (pivot == m) fail(ErrorCode::Degenerate, "no unit pivot while diagonalizing");
    std::swap(basis[k], basis[pivot]);
    const auto inv = ring.inverse(space.evaluate(basis[k]));
    for (std::size_t r = k + 1; r < m; ++r) {
      const auto c = space.bilinear(basis[r], basis[k]);
      if (ring.is_zero(c)) continue;
      basis[r] = subtract(basis[r], scale(c * inv, basis[k]));
    }
  }

  Diagonalization<R> out{Matrix<typename R::Element>(m, m, ring.zero()), {}};
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) out.basis(i, k) = basis[k][i];
    out.diagonal.push_back(space.evaluate(basis[k]));
  }
  return out;
}

/// A vector with unit q-value: the first vector of the diagonal basis.
template <Ring R>
QVector<R> anisotropic_vector(const QuadraticSpace<R>& space) {
  for (std::size_t i = 0; i < space.rank(); ++i) {
    auto e = space.basis_vector(i);
    if (space.ring().is_unit(space.evaluate(e))) return e;
  }
  return diagonalize(space).basis.col(0);
}

/// tau_w(x) = x - (2<x, w>/q(w)) w.
template <Ring R>
QVector<R> reflection(const QuadraticSpace<R>& space, const QVector<R>& w, const QVector<R>& x) {
  const R& ring = space.ring();
  const auto qw = space.evaluate(w);
  if (!ring.is_unit(qw)) fail(ErrorCode::IsotropicMirror, "reflection in a vector with non-unit value");
  const auto s = ring.from_int(2) * space.bilinear(x, w) * ring.inverse(qw);
  return subtract(x, scale(s, w));
}

/// Matrix of tau_w in the standard basis (column j = tau_w(e_j)).
template <Ring R>
Matrix<typename R::Element> reflection_matrix(const QuadraticSpace<R>& space, const QVector<R>& w) {
  const std::size_t m = space.rank();
  Matrix<typename R::Element> out(m, m, space.ring().zero());
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = reflection(space, w, space.basis_vector(j));
    for (std::size_t i = 0; i < m; ++i) out(i, j) = col[i];
  }
  return out;
}

}  // namespace qnorm
