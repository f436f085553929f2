#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"
#include "qnorm/matrix.hpp"

namespace qnorm {

/// Dense univariate polynomial, coefficients in ascending degree with no
/// trailing zeros (the zero polynomial has no coefficients).
template <Ring D>
class Polynomial {
 public:
  using Scalar = typename D::Element;

  explicit Polynomial(D domain) : dom_(std::move(domain)) {}
  Polynomial(D domain, std::vector<Scalar> coeffs)
      : dom_(std::move(domain)), c_(std::move(coeffs)) {
    trim();
  }

  static Polynomial constant(const D& domain, const Scalar& c) { return Polynomial(domain, {c}); }
  static Polynomial monomial(const D& domain, const Scalar& c, std::size_t k) {
    std::vector<Scalar> coeffs(k + 1, domain.zero());
    coeffs[k] = c;
    return Polynomial(domain, std::move(coeffs));
  }
  /// The indeterminate t.
  static Polynomial variable(const D& domain) { return monomial(domain, domain.one(), 1); }

  const D& domain() const { return dom_; }
  const std::vector<Scalar>& coefficients() const { return c_; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : dom_.zero(); }
  Scalar leading() const { return c_.empty() ? dom_.zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == dom_.one(); }

  Polynomial operator-() const {
    std::vector<Scalar> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(-x);
    return Polynomial(dom_, std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), a.dom_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = out[i] + b.c_[i];
    return Polynomial(a.dom_, std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial(a.dom_);
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, a.dom_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.dom_.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(a.dom_, std::move(out));
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& p) {
    std::vector<Scalar> out;
    out.reserve(p.c_.size());
    for (const auto& x : p.c_) out.push_back(s * x);
    return Polynomial(p.dom_, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Horner evaluation at a base scalar.
  Scalar operator()(const Scalar& x) const {
    Scalar acc = dom_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && dom_.is_zero(c_.back())) c_.pop_back();
  }

  D dom_;
  std::vector<Scalar> c_;
};

template <Ring D>
typename D::Element evaluate(const Polynomial<D>& f, const typename D::Element& x) {
  return f(x);
}

/// Horner evaluation of f at an element of a ring that embeds D (e.g. an
/// étale algebra over D); `embed` maps base scalars into that ring.
template <Ring D, class Target, class Embed>
auto evaluate_at(const Polynomial<D>& f, const Target& x, const Target& zero, Embed embed) {
  Target acc = zero;
  const auto& c = f.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + embed(*it);
  return acc;
}

template <Ring D>
Polynomial<D> derivative(const Polynomial<D>& f) {
  const auto& c = f.coefficients();
  if (c.size() <= 1) return Polynomial<D>(f.domain());
  std::vector<typename D::Element> out;
  out.reserve(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i)
    out.push_back(f.domain().from_int(static_cast<long long>(i)) * c[i]);
  return Polynomial<D>(f.domain(), std::move(out));
}

template <Ring D>
struct DivMod {
  Polynomial<D> quotient;
  Polynomial<D> remainder;
};

/// Long division. Over a ring the divisor must be monic; over a field any
/// nonzero divisor is accepted (its leading coefficient is inverted).
template <Ring D>
DivMod<D> divmod_monic(const Polynomial<D>& dividend, const Polynomial<D>& divisor) {
  const D& dom = dividend.domain();
  if (divisor.is_zero()) fail(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  typename D::Element lead_inv = dom.one();
  if (!divisor.is_monic()) {
    if constexpr (D::is_field) {
      lead_inv = dom.inverse(divisor.leading());
    } else {
      fail(ErrorCode::NonMonicDivisor, "divisor is not monic over a non-field base");
    }
  }
  const int dd = divisor.degree();
  std::vector<typename D::Element> rem = dividend.coefficients();
  if (dividend.degree() < dd) return {Polynomial<D>(dom), dividend};
  std::vector<typename D::Element> quot(static_cast<std::size_t>(dividend.degree() - dd + 1), dom.zero());
  const auto& dc = divisor.coefficients();
  for (int k = dividend.degree(); k >= dd; --k) {
    const auto top = rem[static_cast<std::size_t>(k)];
    if (dom.is_zero(top)) continue;
    const auto q = top * lead_inv;
    quot[static_cast<std::size_t>(k - dd)] = q;
    for (int j = 0; j <= dd; ++j) {
      auto& slot = rem[static_cast<std::size_t>(k - dd + j)];
      slot = slot - q * dc[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial<D>(dom, std::move(quot)), Polynomial<D>(dom, std::move(rem))};
}

template <Ring D>
Polynomial<D> operator%(const Polynomial<D>& a, const Polynomial<D>& b) {
  return divmod_monic(a, b).remainder;
}

template <Ring D>
  requires(D::is_field)
Polynomial<D> make_monic(const Polynomial<D>& f) {
  if (f.is_zero() || f.is_monic()) return f;
  return f.domain().inverse(f.leading()) * f;
}

template <Ring D>
struct ExtendedGcd {
  Polynomial<D> gcd;
  Polynomial<D> s;  // s*a + t*b = gcd
  Polynomial<D> t;
};

/// Extended Euclid with monic normalization of every remainder, which keeps
/// rational coefficient growth in check.
template <Ring D>
  requires(D::is_field)
ExtendedGcd<D> extended_gcd(const Polynomial<D>& a, const Polynomial<D>& b) {
  const D& dom = a.domain();
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::UndefinedGcd, "gcd(0, 0)");
  using P = Polynomial<D>;
  P r0 = a, r1 = b;
  P s0 = P::constant(dom, dom.one()), s1(dom);
  P t0(dom), t1 = P::constant(dom, dom.one());
  while (!r1.is_zero()) {
    const auto inv = dom.inverse(r1.leading());
    r1 = inv * r1;
    s1 = inv * s1;
    t1 = inv * t1;
    auto [q, r] = divmod_monic(r0, r1);
    P s2 = s0 - q * s1;
    P t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const auto inv = dom.inverse(r0.leading());
  return {inv * r0, inv * s0, inv * t0};
}

template <Ring D>
  requires(D::is_field)
Polynomial<D> gcd(const Polynomial<D>& a, const Polynomial<D>& b) {
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::UndefinedGcd, "gcd(0, 0)");
  Polynomial<D> r0 = make_monic(a), r1 = make_monic(b);
  while (!r1.is_zero()) {
    Polynomial<D> r = divmod_monic(r0, r1).remainder;
    r0 = std::move(r1);
    r1 = make_monic(r);
  }
  return make_monic(r0);
}

/// Field: gcd(f, f') = 1. Local ring: the residue reduction is separable.
template <Ring D>
bool is_separable(const Polynomial<D>& f) {
  if (f.is_zero()) fail(ErrorCode::UndefinedSeparability, "separability of the zero polynomial");
  if constexpr (D::is_field) {
    return gcd(f, derivative(f)).degree() == 0;
  } else if constexpr (D::is_local) {
    return is_separable(f.domain().reduce(f));
  } else {
    static_assert(D::is_field || D::is_local, "separability needs a field or a local base");
  }
}

/// Sylvester matrix of (f, g), f's shifted rows first.
template <Ring D>
Matrix<typename D::Element> sylvester_matrix(const Polynomial<D>& f, const Polynomial<D>& g) {
  const D& dom = f.domain();
  const auto n = static_cast<std::size_t>(f.degree());
  const auto m = static_cast<std::size_t>(g.degree());
  Matrix<typename D::Element> s(n + m, n + m, dom.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s(i, i + k) = f.coeff(n - k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s(m + i, i + k) = g.coeff(m - k);
  return s;
}

/// Res(f, g) for monic nonconstant f: the Sylvester determinant, equal to
/// the product of g over the roots of f.
template <Ring D>
typename D::Element resultant(const Polynomial<D>& f, const Polynomial<D>& g) {
  if (!f.is_monic()) fail(ErrorCode::NonMonicDivisor, "resultant needs a monic first argument");
  if (f.degree() < 1) fail(ErrorCode::NonMonicDivisor, "resultant needs a nonconstant first argument");
  if (g.is_zero()) return f.domain().zero();
  return determinant(f.domain(), sylvester_matrix(f, g));
}

/// Applies a coefficient map into another domain.
template <Ring From, Ring To, class Map>
Polynomial<To> map_coefficients(const Polynomial<From>& f, const To& target, Map map) {
  std::vector<typename To::Element> out;
  out.reserve(f.coefficients().size());
  for (const auto& c : f.coefficients()) out.push_back(map(c));
  return Polynomial<To>(target, std::move(out));
}

}  // namespace qnorm
