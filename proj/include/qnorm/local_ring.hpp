#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "qnorm/polynomial.hpp"
#include "qnorm/scalar.hpp"

namespace qnorm {

using RationalPolynomial = Polynomial<RationalField>;

/// num(x)/den(x) with den(0) != 0: an element of Q[x] localized at the
/// origin. Stored as coprime integer polynomials with no common content and
/// den(0) > 0, so equality is structural.
class LocalFunction {
 public:
  using IntPoly = std::vector<mpz_class>;

  LocalFunction() : den_{mpz_class(1)} {}
  LocalFunction(long long c)  // NOLINT: constants embed implicitly
      : LocalFunction(Rational(c)) {}
  LocalFunction(const Rational& c);  // NOLINT
  explicit LocalFunction(const RationalPolynomial& num);
  /// Signals NotAUnit when den(0) = 0 after cancellation.
  LocalFunction(const RationalPolynomial& num, const RationalPolynomial& den);

  /// The coordinate function x.
  static LocalFunction variable();

  /// Reduced numerator and denominator, scaled so that den(0) = 1.
  RationalPolynomial numerator() const;
  RationalPolynomial denominator() const;

  /// Value at the origin: the residue class modulo the maximal ideal.
  Rational residue() const;
  bool is_zero() const { return num_.empty(); }
  bool is_unit() const { return !num_.empty() && num_.front() != 0; }
  /// Largest degree of the stored numerator and denominator.
  int height_degree() const;

  LocalFunction operator-() const;
  friend LocalFunction operator+(const LocalFunction& a, const LocalFunction& b);
  friend LocalFunction operator-(const LocalFunction& a, const LocalFunction& b);
  friend LocalFunction operator*(const LocalFunction& a, const LocalFunction& b);
  /// Division by a unit of the local ring; NotAUnit otherwise.
  friend LocalFunction operator/(const LocalFunction& a, const LocalFunction& b);
  friend bool operator==(const LocalFunction& a, const LocalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  LocalFunction(IntPoly num, IntPoly den, bool cancel);

  IntPoly num_;  // empty for zero
  IntPoly den_;
};

/// Q[x] localized at (x): a local domain with residue field Q.
class LocalRing {
 public:
  using Element = LocalFunction;
  using ResidueDomain = RationalField;
  static constexpr bool is_field = false;
  static constexpr bool is_local = true;

  Element zero() const { return LocalFunction(0); }
  Element one() const { return LocalFunction(1); }
  Element from_int(long long n) const { return LocalFunction(n); }
  bool is_zero(const Element& x) const { return x.is_zero(); }
  bool is_unit(const Element& x) const { return x.is_unit(); }
  Element inverse(const Element& x) const { return one() / x; }

  /// Square class of the residue; NotAUnit for non-units.
  bool is_square(const Element& x) const;
  /// c0 + c1*x with c0, c1 height-bounded rationals.
  Element sample(DeterministicSampler& s) const;
  /// "[n0,n1,...]" or "[n0,...]/[d0,...]" (ascending coefficients in x).
  std::string format(const Element& x) const;
  Element parse(std::string_view text) const;
  std::string tag() const { return "Qx0"; }

  ResidueDomain residue_domain() const { return {}; }
  Rational residue(const Element& x) const { return x.residue(); }
  Element lift(const Rational& c) const { return LocalFunction(c); }
  /// Coefficient-wise residue reduction of a polynomial over the ring.
  template <class Poly>
  Polynomial<RationalField> reduce(const Poly& f) const {
    return map_coefficients(f, RationalField{}, [](const LocalFunction& c) { return c.residue(); });
  }

  friend bool operator==(const LocalRing&, const LocalRing&) { return true; }
};

std::string format_rational_polynomial(const RationalPolynomial& p);
RationalPolynomial parse_rational_polynomial(std::string_view text);

}  // namespace qnorm
