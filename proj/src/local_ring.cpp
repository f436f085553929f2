#include "qnorm/local_ring.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qnorm {

namespace {

const RationalField kQ{};

bool is_one(const RationalPolynomial& p) { return p.degree() == 0 && p.coeff(0) == Rational(1); }

using IntPoly = LocalFunction::IntPoly;

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void divide_exact(IntPoly& p, const mpz_class& c) {
  if (c == 1) return;
  for (auto& x : p) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
}

void make_primitive(IntPoly& p) {
  if (p.empty()) return;
  mpz_class g = content(p);
  if (p.back() < 0) g = -g;
  divide_exact(p, g);
}

/// Denominators cleared, content removed.
IntPoly primitive_part(const RationalPolynomial& p) {
  mpz_class lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  IntPoly out;
  for (const auto& c : p.coefficients()) out.push_back(c.numerator() * (lcm / c.denominator()));
  make_primitive(out);
  return out;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly out = a.size() >= b.size() ? a : b;
  const IntPoly& other = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < other.size(); ++i) out[i] += other[i];
  trim(out);
  return out;
}

IntPoly negate(IntPoly p) {
  for (auto& c : p) c = -c;
  return p;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1 && a[0] == 1) return b;
  if (b.size() == 1 && b[0] == 1) return a;
  IntPoly out(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(out);
  return out;
}

/// a / b for b dividing a in Z[x] (b primitive, so the quotient is integral).
IntPoly divide_exact(IntPoly a, const IntPoly& b) {
  if (b.size() == 1) {
    divide_exact(a, b[0]);
    return a;
  }
  if (a.size() < b.size()) {
    ensure(a.empty(), "inexact polynomial division");
    return {};
  }
  IntPoly q(a.size() - b.size() + 1, mpz_class(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::size_t top = k + b.size() - 1;
    if (a[top] == 0) continue;
    ensure(mpz_divisible_p(a[top].get_mpz_t(), b.back().get_mpz_t()) != 0, "inexact polynomial division");
    mpz_divexact(q[k].get_mpz_t(), a[top].get_mpz_t(), b.back().get_mpz_t());
    for (std::size_t i = 0; i < b.size(); ++i) mpz_submul(a[k + i].get_mpz_t(), q[k].get_mpz_t(), b[i].get_mpz_t());
  }
  trim(a);
  ensure(a.empty(), "inexact polynomial division");
  trim(q);
  return q;
}

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}

std::vector<std::uint64_t> reduce_mod(const IntPoly& p) {
  std::vector<std::uint64_t> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), kPrime));
  return out;
}

/// Degree of gcd(a, b) mod the prime.
int modular_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto strip = [](std::vector<std::uint64_t>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  strip(a);
  strip(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const std::uint64_t inv = powmod(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      const std::uint64_t f = mulmod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + kPrime - mulmod(f, b[i])) % kPrime;
      strip(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// Primitive remainder sequence over the integers.
IntPoly integer_gcd(IntPoly a, IntPoly b) {
  make_primitive(a);
  make_primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const mpz_class lead = b.back();
    while (a.size() >= b.size()) {
      const mpz_class f = a.back();
      const std::size_t shift = a.size() - b.size();
      for (auto& c : a) c *= lead;
      for (std::size_t i = 0; i < b.size(); ++i) mpz_submul(a[shift + i].get_mpz_t(), f.get_mpz_t(), b[i].get_mpz_t());
      trim(a);
      if (a.empty()) break;
    }
    make_primitive(a);
    std::swap(a, b);
  }
  make_primitive(a);
  return a;
}

std::optional<IntPoly> try_divide(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) {
    if (a.empty()) return IntPoly{};
    return std::nullopt;
  }
  IntPoly q(a.size() - b.size() + 1, mpz_class(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::size_t top = k + b.size() - 1;
    if (a[top] == 0) continue;
    if (mpz_divisible_p(a[top].get_mpz_t(), b.back().get_mpz_t()) == 0) return std::nullopt;
    mpz_divexact(q[k].get_mpz_t(), a[top].get_mpz_t(), b.back().get_mpz_t());
    for (std::size_t i = 0; i < b.size(); ++i) mpz_submul(a[k + i].get_mpz_t(), q[k].get_mpz_t(), b[i].get_mpz_t());
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

mpz_class evaluate(const IntPoly& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc *= x;
    acc += p[i];
  }
  return acc;
}

mpz_class max_norm(const IntPoly& p) {
  mpz_class m = 0;
  for (const auto& c : p)
    if (abs(c) > m) m = abs(c);
  return m;
}

/// Heuristic gcd: evaluate at a large integer, take the integer gcd and
/// read the polynomial back from its balanced base-xi digits. Accepted
/// only when it divides both inputs.
std::optional<IntPoly> heuristic_gcd(const IntPoly& a, const IntPoly& b) {
  mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    mpz_class gamma;
    const mpz_class va = evaluate(a, xi), vb = evaluate(b, xi);
    mpz_gcd(gamma.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    IntPoly g;
    const mpz_class half = xi / 2;
    while (gamma != 0) {
      mpz_class digit;
      mpz_fdiv_r(digit.get_mpz_t(), gamma.get_mpz_t(), xi.get_mpz_t());
      if (digit > half) digit -= xi;
      g.push_back(digit);
      gamma -= digit;
      mpz_divexact(gamma.get_mpz_t(), gamma.get_mpz_t(), xi.get_mpz_t());
    }
    trim(g);
    make_primitive(g);
    if (!g.empty() && try_divide(a, g) && try_divide(b, g)) return g;
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

/// Primitive gcd in Z[x]; {1} when coprime. A modular image of degree zero
/// proves coprimality, which is the common case.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.size() <= 1 || b.size() <= 1) return {mpz_class(1)};
  const bool leads_survive =
      mpz_fdiv_ui(a.back().get_mpz_t(), kPrime) != 0 && mpz_fdiv_ui(b.back().get_mpz_t(), kPrime) != 0;
  if (leads_survive && modular_gcd_degree(reduce_mod(a), reduce_mod(b)) == 0) return {mpz_class(1)};
  IntPoly pa = a, pb = b;
  make_primitive(pa);
  make_primitive(pb);
  if (auto g = heuristic_gcd(pa, pb)) return *g;
  return integer_gcd(std::move(pa), std::move(pb));
}

bool is_one(const IntPoly& p) { return p.size() == 1 && p[0] == 1; }

RationalPolynomial to_rational(const IntPoly& p, const mpz_class& scale) {
  std::vector<Rational> coeffs;
  coeffs.reserve(p.size());
  for (const auto& c : p) coeffs.emplace_back(c, scale);
  return RationalPolynomial(kQ, std::move(coeffs));
}

}  // namespace

LocalFunction::LocalFunction(IntPoly num, IntPoly den, bool cancel) : num_(std::move(num)), den_(std::move(den)) {
  trim(num_);
  trim(den_);
  if (den_.empty()) fail(ErrorCode::ZeroDivisor, "zero denominator");
  if (num_.empty()) {
    den_ = {mpz_class(1)};
    return;
  }
  if (cancel) {
    const IntPoly g = poly_gcd(num_, den_);
    if (!is_one(g)) {
      num_ = divide_exact(std::move(num_), g);
      den_ = divide_exact(std::move(den_), g);
    }
  }
  if (den_.front() == 0) fail(ErrorCode::NotAUnit, "denominator vanishes at the origin");
  mpz_class c = content(den_);
  if (c != 1) {
    const mpz_class cn = content(num_);
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cn.get_mpz_t());
  }
  if (den_.front() < 0) c = -c;
  if (c != 1) {
    divide_exact(num_, c);
    divide_exact(den_, c);
  }
}

LocalFunction::LocalFunction(const Rational& c) : den_{mpz_class(1)} {
  if (c.is_zero()) return;
  num_ = {c.numerator()};
  den_ = {c.denominator()};
}

LocalFunction::LocalFunction(const RationalPolynomial& num) : den_{mpz_class(1)} {
  if (num.is_zero()) return;
  mpz_class lcm = 1;
  for (const auto& c : num.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  for (const auto& c : num.coefficients()) num_.push_back(c.numerator() * (lcm / c.denominator()));
  *this = LocalFunction(std::move(num_), IntPoly{lcm}, false);
}

LocalFunction::LocalFunction(const RationalPolynomial& num, const RationalPolynomial& den) {
  if (den.is_zero()) fail(ErrorCode::ZeroDivisor, "zero denominator");
  const LocalFunction n(num);
  const LocalFunction d(den);
  // (nN/nD) / (dN/dD)
  *this = LocalFunction(multiply(n.num_, d.den_), multiply(n.den_, d.num_), true);
}

LocalFunction LocalFunction::variable() { return LocalFunction(IntPoly{mpz_class(0), mpz_class(1)}, IntPoly{mpz_class(1)}, false); }

RationalPolynomial LocalFunction::numerator() const { return to_rational(num_, den_.front()); }
RationalPolynomial LocalFunction::denominator() const { return to_rational(den_, den_.front()); }

Rational LocalFunction::residue() const {
  if (num_.empty()) return Rational(0);
  return Rational(num_.front(), den_.front());
}

int LocalFunction::height_degree() const {
  return static_cast<int>(std::max(num_.size(), den_.size())) - 1;
}

LocalFunction LocalFunction::operator-() const {
  LocalFunction out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

LocalFunction operator+(const LocalFunction& a, const LocalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (is_one(a.den_) && is_one(b.den_)) return LocalFunction(add(a.num_, b.num_), a.den_, false);
  // With g = gcd(da, db) the sum can only cancel against g.
  const IntPoly g = a.den_ == b.den_ ? a.den_ : poly_gcd(a.den_, b.den_);
  if (is_one(g)) return LocalFunction(add(multiply(a.num_, b.den_), multiply(b.num_, a.den_)), multiply(a.den_, b.den_), false);
  const IntPoly a_cof = divide_exact(a.den_, g), b_cof = divide_exact(b.den_, g);
  IntPoly num = add(multiply(a.num_, b_cof), multiply(b.num_, a_cof));
  IntPoly den = multiply(a.den_, b_cof);
  if (num.empty()) return LocalFunction(0);
  if (const IntPoly h = poly_gcd(num, g); !is_one(h)) {
    num = divide_exact(std::move(num), h);
    den = divide_exact(std::move(den), h);
  }
  return LocalFunction(std::move(num), std::move(den), false);
}

LocalFunction operator-(const LocalFunction& a, const LocalFunction& b) { return a + (-b); }

LocalFunction operator*(const LocalFunction& a, const LocalFunction& b) {
  if (a.is_zero() || b.is_zero()) return LocalFunction(0);
  // cross-cancel so the product needs no further polynomial gcd
  IntPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (const IntPoly g = poly_gcd(an, bd); !is_one(g)) {
    an = divide_exact(std::move(an), g);
    bd = divide_exact(std::move(bd), g);
  }
  if (const IntPoly g = poly_gcd(bn, ad); !is_one(g)) {
    bn = divide_exact(std::move(bn), g);
    ad = divide_exact(std::move(ad), g);
  }
  return LocalFunction(multiply(an, bn), multiply(ad, bd), false);
}

LocalFunction operator/(const LocalFunction& a, const LocalFunction& b) {
  if (!b.is_unit()) fail(ErrorCode::NotAUnit, "division by a non-unit of the local ring");
  return a * LocalFunction(b.den_, b.num_, false);
}

bool LocalRing::is_square(const Element& x) const {
  if (!x.is_unit()) fail(ErrorCode::NotAUnit, "square test on a non-unit of the local ring");
  return kQ.is_square(x.residue());
}

LocalRing::Element LocalRing::sample(DeterministicSampler& s) const {
  const Rational c0 = kQ.sample(s);
  const Rational c1 = kQ.sample(s);
  return LocalFunction(RationalPolynomial(kQ, {c0, c1}));
}

std::string format_rational_polynomial(const RationalPolynomial& p) {
  std::string out = "[";
  const auto& c = p.coefficients();
  if (c.empty()) out += "0";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += c[i].str();
  }
  return out + "]";
}

RationalPolynomial parse_rational_polynomial(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("expected a bracketed coefficient list, got \"" + std::string(text) + "\"");
  s = s.substr(1, s.size() - 2);
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = s.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                      : comma - start);
    std::string cleaned;
    for (char ch : item)
      if (ch != '"' && !std::isspace(static_cast<unsigned char>(ch))) cleaned += ch;
    if (cleaned.empty()) {
      if (comma == std::string_view::npos && coeffs.empty()) break;
      throw ParseError("empty coefficient in \"" + std::string(text) + "\"");
    }
    coeffs.push_back(Rational::parse(cleaned));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return RationalPolynomial(kQ, std::move(coeffs));
}

std::string LocalRing::format(const Element& x) const {
  std::string out = format_rational_polynomial(x.numerator());
  if (!is_one(x.denominator())) out += "/" + format_rational_polynomial(x.denominator());
  return out;
}

LocalRing::Element LocalRing::parse(std::string_view text) const {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  if (s.empty()) throw ParseError("empty local ring element");
  if (s.front() != '[') return LocalFunction(Rational::parse(s));
  const auto close = s.find(']');
  if (close == std::string_view::npos) throw ParseError("unbalanced brackets in \"" + std::string(text) + "\"");
  RationalPolynomial num = parse_rational_polynomial(s.substr(0, close + 1));
  std::string_view rest = s.substr(close + 1);
  while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
  if (rest.empty()) return LocalFunction(std::move(num));
  if (rest.front() != '/') throw ParseError("expected '/' in \"" + std::string(text) + "\"");
  rest.remove_prefix(1);
  RationalPolynomial den = parse_rational_polynomial(rest);
  if (den.is_zero()) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  if (den.coeff(0).is_zero()) {
    // Cancellation may still make the fraction regular at the origin.
    try {
      return LocalFunction(std::move(num), std::move(den));
    } catch (const MathError&) {
      throw ParseError("denominator vanishes at the origin in \"" + std::string(text) + "\"");
    }
  }
  return LocalFunction(std::move(num), std::move(den));
}

}  // namespace qnorm
