#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"
#include "qnorm/local_ring.hpp"
#include "qnorm/matrix.hpp"
#include "qnorm/polynomial.hpp"

namespace qnorm {

namespace detail {
template <ScalarDomain D>
struct EtaleData {
  D base;
  Polynomial<D> modulus;
};
}  // namespace detail

template <ScalarDomain D>
class EtaleAlgebra;

/// Element of base[t]/(f), held by its canonical representative of degree < n.
template <ScalarDomain D>
class AlgebraElement {
 public:
  using Data = detail::EtaleData<D>;

  AlgebraElement(std::shared_ptr<const Data> parent, Polynomial<D> rep)
      : parent_(std::move(parent)), rep_(std::move(rep)) {
    if (rep_.degree() >= parent_->modulus.degree()) rep_ = divmod_monic(rep_, parent_->modulus).remainder;
  }

  const Polynomial<D>& representative() const { return rep_; }
  const std::shared_ptr<const Data>& parent() const { return parent_; }
  std::size_t degree() const { return static_cast<std::size_t>(parent_->modulus.degree()); }
  /// Coefficient of t^i in the representative.
  typename D::Element coeff(std::size_t i) const { return rep_.coeff(i); }

  AlgebraElement operator-() const { return AlgebraElement(parent_, -rep_); }
  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    check_parents(a, b);
    return AlgebraElement(a.parent_, a.rep_ + b.rep_);
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    check_parents(a, b);
    return AlgebraElement(a.parent_, a.rep_ - b.rep_);
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    check_parents(a, b);
    if (a.rep_.is_zero() || b.rep_.is_zero()) return AlgebraElement(a.parent_, Polynomial<D>(a.parent_->base));
    return AlgebraElement(a.parent_, divmod_monic(a.rep_ * b.rep_, a.parent_->modulus).remainder);
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return same_parent(a, b) && a.rep_ == b.rep_;
  }

  static bool same_parent(const AlgebraElement& a, const AlgebraElement& b) {
    return a.parent_ == b.parent_ || a.parent_->modulus == b.parent_->modulus;
  }

 private:
  static void check_parents(const AlgebraElement& a, const AlgebraElement& b) {
    if (!same_parent(a, b)) fail(ErrorCode::AlgebraMismatch, "elements of different algebras");
  }

  std::shared_ptr<const Data> parent_;
  Polynomial<D> rep_;
};

/// base[t]/(f) with f monic and separable (residue-separable over the
/// local ring). Not assumed to be a field: zero divisors surface as
/// ZeroDivisor from inverse().
template <ScalarDomain D>
class EtaleAlgebra {
 public:
  using Element = AlgebraElement<D>;
  using Base = D;
  using Scalar = typename D::Element;
  static constexpr bool is_field = false;
  static constexpr bool is_local = false;

  explicit EtaleAlgebra(Polynomial<D> modulus) {
    if (modulus.degree() < 1) fail(ErrorCode::InvalidModulus, "modulus must have degree >= 1");
    if (!modulus.is_monic()) fail(ErrorCode::InvalidModulus, "modulus must be monic");
    if (!is_separable(modulus)) fail(ErrorCode::NotSeparable, "modulus is not separable");
    D base = modulus.domain();
    data_ = std::make_shared<const detail::EtaleData<D>>(
        detail::EtaleData<D>{std::move(base), std::move(modulus)});
  }

  const D& base() const { return data_->base; }
  const Polynomial<D>& modulus() const { return data_->modulus; }
  std::size_t degree() const { return static_cast<std::size_t>(data_->modulus.degree()); }
  const std::shared_ptr<const detail::EtaleData<D>>& data() const { return data_; }

  Element zero() const { return Element(data_, Polynomial<D>(base())); }
  Element one() const { return embed(base().one()); }
  Element from_int(long long n) const { return embed(base().from_int(n)); }
  Element embed(const Scalar& c) const { return Element(data_, Polynomial<D>::constant(base(), c)); }
  /// The class of t.
  Element generator() const { return Element(data_, Polynomial<D>::variable(base())); }
  Element element(Polynomial<D> rep) const { return Element(data_, std::move(rep)); }
  Element element(std::vector<Scalar> coeffs) const {
    return Element(data_, Polynomial<D>(base(), std::move(coeffs)));
  }

  bool is_zero(const Element& a) const { return a.representative().is_zero(); }

  bool is_unit(const Element& a) const {
    check(a);
    if constexpr (D::is_field) {
      if (a.representative().is_zero()) return false;
      return gcd(a.representative(), modulus()).degree() == 0;
    } else {
      static_assert(D::is_local);
      const auto reduced = base().reduce(a.representative());
      if (reduced.is_zero()) return false;
      return gcd(reduced, base().reduce(modulus())).degree() == 0;
    }
  }

  /// Field base: extended Euclid against the modulus. Local base: solve the
  /// multiplication matrix against e_0 with unit pivots.
  Element inverse(const Element& a) const {
    check(a);
    if (a.representative().is_zero()) fail(ErrorCode::ZeroDivisor, "inverse of zero");
    if constexpr (D::is_field) {
      const auto eg = extended_gcd(a.representative(), modulus());
      if (eg.gcd.degree() > 0) fail(ErrorCode::ZeroDivisor, "element shares a factor with the modulus");
      return element(eg.s);
    } else {
      Matrix<Scalar> rhs(degree(), 1, base().zero());
      rhs(0, 0) = base().one();
      try {
        const auto x = solve(base(), multiplication_matrix(a), std::move(rhs));
        return element(x.col(0));
      } catch (const MathError& e) {
        if (e.code() != ErrorCode::NotAUnit) throw;
        fail(ErrorCode::ZeroDivisor, "element is not a unit of the algebra");
      }
    }
  }

  /// Column j holds the coordinates of a * t^j.
  Matrix<Scalar> multiplication_matrix(const Element& a) const {
    check(a);
    const std::size_t n = degree();
    Matrix<Scalar> m(n, n, base().zero());
    Element column = a;
    const Element t = generator();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) m(i, j) = column.coeff(i);
      if (j + 1 < n) column = column * t;
    }
    return m;
  }

  void check(const Element& a) const {
    if (a.parent() != data_ && !(a.parent()->modulus == data_->modulus))
      fail(ErrorCode::AlgebraMismatch, "element belongs to a different algebra");
  }

  friend bool operator==(const EtaleAlgebra& a, const EtaleAlgebra& b) {
    return a.data_ == b.data_ || a.modulus() == b.modulus();
  }

 private:
  std::shared_ptr<const detail::EtaleData<D>> data_;
};

/// Determinant of multiplication by a.
template <ScalarDomain D>
typename D::Element norm(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a) {
  return determinant(alg.base(), alg.multiplication_matrix(a));
}

/// Res(f, rep(a)); the independent route to the norm for monic f.
template <ScalarDomain D>
typename D::Element norm_by_resultant(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a) {
  alg.check(a);
  return resultant(alg.modulus(), a.representative());
}

template <ScalarDomain D>
typename D::Element trace(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a) {
  const auto m = alg.multiplication_matrix(a);
  auto acc = alg.base().zero();
  for (std::size_t i = 0; i < m.rows(); ++i) acc = acc + m(i, i);
  return acc;
}

/// Row i holds the coordinates of a^i in the basis 1, t, ..., t^{n-1}.
template <ScalarDomain D>
Matrix<typename D::Element> power_basis_matrix(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a) {
  alg.check(a);
  const std::size_t n = alg.degree();
  Matrix<typename D::Element> m(n, n, alg.base().zero());
  auto power = alg.one();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = power.coeff(j);
    if (i + 1 < n) power = power * a;
  }
  return m;
}

/// True iff 1, a, ..., a^{n-1} is a basis, i.e. det of the power basis
/// matrix is a unit of the base.
/// Over the local ring the determinant is a unit iff its residue is
/// nonzero, so the test runs on the residue algebra.
template <ScalarDomain D>
bool is_primitive(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a) {
  if constexpr (D::is_local) {
    alg.check(a);
    const auto residue_modulus = alg.base().reduce(alg.modulus());
    const EtaleAlgebra<typename D::ResidueDomain> residue(residue_modulus);
    return is_primitive(residue, residue.element(alg.base().reduce(a.representative())));
  } else {
    return alg.base().is_unit(determinant(alg.base(), power_basis_matrix(alg, a)));
  }
}

/// Characteristic polynomial of multiplication by a; for a primitive
/// element this is its minimal polynomial.
template <ScalarDomain D>
Polynomial<D> characteristic_polynomial(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a) {
  return Polynomial<D>(alg.base(), characteristic_polynomial(alg.base(), alg.multiplication_matrix(a)));
}

template <ScalarDomain D>
Polynomial<D> minimal_polynomial(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a) {
  if (!is_primitive(alg, a)) fail(ErrorCode::NotPrimitive, "minimal polynomial of a non-primitive element");
  return characteristic_polynomial(alg, a);
}

/// f(a) for a polynomial over the base.
template <ScalarDomain D>
AlgebraElement<D> evaluate_in(const EtaleAlgebra<D>& alg, const Polynomial<D>& f, const AlgebraElement<D>& a) {
  return evaluate_at(f, a, alg.zero(), [&](const typename D::Element& c) { return alg.embed(c); });
}

/// n x m matrix whose column j is the coefficient vector of w_j.
template <ScalarDomain D>
Matrix<typename D::Element> expand_coordinates(const EtaleAlgebra<D>& alg,
                                               const std::vector<AlgebraElement<D>>& w) {
  const std::size_t n = alg.degree();
  Matrix<typename D::Element> m(n, w.size(), alg.base().zero());
  for (std::size_t j = 0; j < w.size(); ++j) {
    alg.check(w[j]);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = w[j].coeff(i);
  }
  return m;
}

/// Columns of the coordinate matrix read as polynomials in t.
template <ScalarDomain D>
std::vector<Polynomial<D>> contract(const D& base, const Matrix<typename D::Element>& coords) {
  std::vector<Polynomial<D>> out;
  out.reserve(coords.cols());
  for (std::size_t j = 0; j < coords.cols(); ++j) out.emplace_back(base, coords.col(j));
  return out;
}

/// Coordinates w_{i,j} with w_j = sum_i w_{i,j} alpha^i. Requires alpha
/// primitive.
template <ScalarDomain D>
Matrix<typename D::Element> coordinates_in_power_basis(const EtaleAlgebra<D>& alg,
                                                       const AlgebraElement<D>& alpha,
                                                       const std::vector<AlgebraElement<D>>& w) {
  const auto basis = power_basis_matrix(alg, alpha);
  try {
    return solve(alg.base(), basis.transposed(), expand_coordinates(alg, w));
  } catch (const MathError& e) {
    if (e.code() != ErrorCode::NotAUnit) throw;
    fail(ErrorCode::NotPrimitive, "power basis of a non-primitive element");
  }
}

/// E = S / mS for S over the local ring.
inline EtaleAlgebra<RationalField> reduce_mod_maximal(const EtaleAlgebra<LocalRing>& alg) {
  return EtaleAlgebra<RationalField>(alg.base().reduce(alg.modulus()));
}

inline AlgebraElement<RationalField> reduce_element(const EtaleAlgebra<RationalField>& residue_alg,
                                                    const AlgebraElement<LocalRing>& a) {
  return residue_alg.element(LocalRing{}.reduce(a.representative()));
}

/// Coefficient-wise constant lift from the residue algebra.
inline AlgebraElement<LocalRing> lift_element(const EtaleAlgebra<LocalRing>& alg,
                                              const AlgebraElement<RationalField>& a) {
  return alg.element(map_coefficients(a.representative(), alg.base(),
                                      [](const Rational& c) { return LocalFunction(c); }));
}

}  // namespace qnorm
