#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"

namespace qnorm {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design of literals
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Accepts "p", "p/q", with optional sign and surrounding blanks.
  static Rational parse(std::string_view text);

 private:
  mpq_class v_;
};

class RationalField {
 public:
  using Element = Rational;
  static constexpr bool is_field = true;
  static constexpr bool is_local = false;

  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  Element from_int(long long n) const { return Rational(n); }
  bool is_zero(const Element& x) const { return x.is_zero(); }
  bool is_unit(const Element& x) const { return !x.is_zero(); }
  Element inverse(const Element& x) const { return Rational(1) / x; }

  /// Numerator and denominator both perfect squares, numerator nonnegative.
  bool is_square(const Element& x) const;
  /// p/q with |p| <= height and 1 <= q <= height.
  Element sample(DeterministicSampler& s) const;
  std::string format(const Element& x) const { return x.str(); }
  Element parse(std::string_view text) const { return Rational::parse(text); }
  std::string tag() const { return "Q"; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Element of Z/pZ; carries its modulus so it can be combined on its own.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Fp operator+(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a, const Fp& b);
  friend Fp operator*(const Fp& a, const Fp& b);
  friend Fp operator/(const Fp& a, const Fp& b);
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  Fp pow(std::uint64_t e) const;
  Fp inverse() const;

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

/// Z/pZ for an odd prime p. Construction rejects p = 2 and composites.
class PrimeField {
 public:
  using Element = Fp;
  static constexpr bool is_field = true;
  static constexpr bool is_local = false;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Element zero() const { return Fp(0, p_); }
  Element one() const { return Fp(1, p_); }
  Element from_int(long long n) const;
  Element element(std::uint64_t v) const { return Fp(v, p_); }
  bool is_zero(const Element& x) const { return x.is_zero(); }
  bool is_unit(const Element& x) const { return !x.is_zero(); }
  Element inverse(const Element& x) const { return x.inverse(); }

  /// Euler's criterion; 0 counts as a square.
  bool is_square(const Element& x) const;
  Element sample(DeterministicSampler& s) const { return Fp(s.below(p_), p_); }
  /// "v mod p".
  std::string format(const Element& x) const;
  /// Accepts "v mod p" (p must match), or a bare integer reduced mod p.
  Element parse(std::string_view text) const;
  std::string tag() const { return "Fp:" + std::to_string(p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

}  // namespace qnorm
