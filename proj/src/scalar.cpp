#include "qnorm/scalar.hpp"

#include <cctype>
#include <string>

namespace qnorm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::NonMonicDivisor: return "NonMonicDivisor";
    case ErrorCode::UndefinedGcd: return "UndefinedGcd";
    case ErrorCode::UndefinedSeparability: return "UndefinedSeparability";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::IsotropicMirror: return "IsotropicMirror";
    case ErrorCode::NotAnIsometry: return "NotAnIsometry";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::RankOneUnsupported: return "RankOneUnsupported";
    case ErrorCode::UnitConditionViolated: return "UnitConditionViolated";
    case ErrorCode::NonUnitInput: return "NonUnitInput";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::NonzeroRemainder: return "NonzeroRemainder";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ParseError("malformed integer in \"" + std::string(whole) + "\"");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed integer in \"" + std::string(whole) + "\"");
  }
  std::string buf(s);
  if (buf.front() == '+') buf.erase(0, 1);
  return mpz_class(buf, 10);
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) fail(ErrorCode::ZeroDivisor, "rational with zero denominator");
  v_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroDivisor, "division by zero rational");
  return Rational(mpq_class(a.v_ / b.v_));
}

std::string Rational::str() const { return v_.get_str(10); }

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational");
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(mpq_class(parse_integer(s, text)));
  const mpz_class num = parse_integer(s.substr(0, slash), text);
  const mpz_class den = parse_integer(s.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

bool RationalField::is_square(const Element& x) const {
  if (x.sign() < 0) return false;
  const mpz_class num = x.numerator();
  const mpz_class den = x.denominator();
  return mpz_perfect_square_p(num.get_mpz_t()) != 0 &&
         mpz_perfect_square_p(den.get_mpz_t()) != 0;
}

RationalField::Element RationalField::sample(DeterministicSampler& s) const {
  const std::int64_t num = s.small_int();
  const std::int64_t den = s.small_positive();
  return Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
}

// --- prime field ---------------------------------------------------------

namespace {

void check_same_modulus(const Fp& a, const Fp& b) {
  if (a.modulus() != b.modulus())
    fail(ErrorCode::AlgebraMismatch, "prime field elements with different moduli");
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace

Fp operator+(const Fp& a, const Fp& b) {
  check_same_modulus(a, b);
  const std::uint64_t p = a.p_;
  const std::uint64_t s = a.v_ + b.v_;  // p < 2^63 keeps this exact
  return Fp(s >= p ? s - p : s, p);
}

Fp operator-(const Fp& a, const Fp& b) {
  check_same_modulus(a, b);
  return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.p_ - (b.v_ - a.v_), a.p_);
}

Fp operator*(const Fp& a, const Fp& b) {
  check_same_modulus(a, b);
  return Fp(mulmod(a.v_, b.v_, a.p_), a.p_);
}

Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

Fp Fp::pow(std::uint64_t e) const {
  std::uint64_t result = 1 % p_;
  std::uint64_t base = v_;
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, p_);
    base = mulmod(base, base, p_);
    e >>= 1U;
  }
  return Fp(result, p_);
}

Fp Fp::inverse() const {
  if (v_ == 0) fail(ErrorCode::ZeroDivisor, "inverse of 0 mod " + std::to_string(p_));
  return pow(p_ - 2);
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p == 2) fail(ErrorCode::InvalidModulus, "characteristic 2 is not supported");
  if (p < 3 || p >= (std::uint64_t{1} << 62))
    fail(ErrorCode::InvalidModulus, "prime modulus out of range: " + std::to_string(p));
  const mpz_class z(std::to_string(p), 10);
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    fail(ErrorCode::InvalidModulus, std::to_string(p) + " is not prime");
}

PrimeField::Element PrimeField::from_int(long long n) const {
  const auto p = static_cast<long long>(p_);
  long long r = n % p;
  if (r < 0) r += p;
  return Fp(static_cast<std::uint64_t>(r), p_);
}

bool PrimeField::is_square(const Element& x) const {
  if (x.is_zero()) return true;
  return x.pow((p_ - 1) / 2).value() == 1;
}

std::string PrimeField::format(const Element& x) const {
  return std::to_string(x.value()) + " mod " + std::to_string(p_);
}

PrimeField::Element PrimeField::parse(std::string_view text) const {
  std::string_view s = trim(text);
  const auto pos = s.find("mod");
  mpz_class value;
  if (pos != std::string_view::npos) {
    const mpz_class p = parse_integer(s.substr(pos + 3), text);
    if (p != mpz_class(std::to_string(p_), 10))
      throw ParseError("modulus mismatch in \"" + std::string(text) + "\", expected mod " +
                       std::to_string(p_));
    value = parse_integer(s.substr(0, pos), text);
  } else if (s.find('/') != std::string_view::npos) {
    const Rational r = Rational::parse(s);
    const mpz_class pz(std::to_string(p_), 10);
    mpz_class den = r.denominator() % pz;
    if (den == 0) throw ParseError("denominator divisible by p in \"" + std::string(text) + "\"");
    mpz_class num = r.numerator() % pz;
    if (num < 0) num += pz;
    return Fp(num.get_ui(), p_) / Fp(den.get_ui(), p_);
  } else {
    value = parse_integer(s, text);
  }
  const mpz_class pz(std::to_string(p_), 10);
  mpz_class r = value % pz;
  if (r < 0) r += pz;
  return Fp(r.get_ui(), p_);
}

}  // namespace qnorm
