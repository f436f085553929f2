#include "doctest.h"

#include <set>
#include <vector>

#include "qnorm/local_ring.hpp"
#include "qnorm/scalar.hpp"

using namespace qnorm;

namespace {

const RationalField Q;
const LocalRing R;

LocalFunction lf(std::vector<Rational> num, std::vector<Rational> den) {
  return LocalFunction(RationalPolynomial(Q, std::move(num)), RationalPolynomial(Q, std::move(den)));
}

}  // namespace

TEST_CASE("rationals are canonical") {
  const Rational r = Rational::parse("6/-4");
  CHECK(r.str() == "-3/2");
  CHECK(Rational::parse(" 7 ").str() == "7");
  CHECK(Rational::parse("+0/5").is_zero());
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), MathError);
}

TEST_CASE("is_unit") {
  CHECK_FALSE(Q.is_unit(Rational(0)));
  CHECK(Q.is_unit(Rational(-3)));
  // x/(1+x) vanishes at the origin
  CHECK_FALSE(R.is_unit(lf({0, 1}, {1, 1})));
  // (1+x)/(2-x) has value 1/2 at the origin
  CHECK(R.is_unit(lf({1, 1}, {2, -1})));
}

TEST_CASE("residue") {
  CHECK(lf({1, 1}, {2, -1}).residue() == Rational(1, 2));
  CHECK(LocalFunction(RationalPolynomial(Q, {0, 0, 1})).residue() == Rational(0));
  CHECK(LocalFunction(7).residue() == Rational(7));
}

TEST_CASE("residue is a unital ring homomorphism") {
  DeterministicSampler s(11);
  CHECK(R.one().residue() == Rational(1));
  for (int i = 0; i < 50; ++i) {
    const auto a = R.sample(s);
    auto b = R.sample(s);
    if (b.is_unit()) b = lf({1, 2}, {1, -1}) * b / (LocalFunction(1) + LocalFunction::variable());
    CHECK((a * b).residue() == a.residue() * b.residue());
    CHECK((a + b).residue() == a.residue() + b.residue());
    CHECK(a.is_unit() == !a.residue().is_zero());
  }
}

TEST_CASE("local ring elements stay reduced") {
  // (x^2 - 1)/(x - 1) = x + 1
  const auto a = lf({-1, 0, 1}, {-1, 1});
  CHECK(a == LocalFunction(RationalPolynomial(Q, {1, 1})));
  CHECK(a.denominator().degree() == 0);
  // x/x^2 is not regular at the origin
  CHECK_THROWS_AS(lf({0, 1}, {0, 0, 1}), MathError);
  // dividing by a non-unit is refused
  CHECK_THROWS_AS(LocalFunction(1) / LocalFunction::variable(), MathError);
  const auto u = lf({1, 1}, {2, -1});
  CHECK(u * R.inverse(u) == R.one());
}

TEST_CASE("field axioms on random triples") {
  DeterministicSampler s(3);
  const PrimeField F(101);
  for (int i = 0; i < 100; ++i) {
    const auto a = Q.sample(s), b = Q.sample(s), c = Q.sample(s);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (Q.is_unit(a)) CHECK(a * Q.inverse(a) == Q.one());
    const auto x = F.sample(s), y = F.sample(s), z = F.sample(s);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    if (F.is_unit(x)) CHECK(x * F.inverse(x) == F.one());
    const auto p = R.sample(s), q = R.sample(s), r = R.sample(s);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    if (R.is_unit(p)) CHECK(p * R.inverse(p) == R.one());
  }
}

TEST_CASE("two is a unit everywhere") {
  CHECK(Q.is_unit(Q.from_int(2)));
  CHECK(PrimeField(3).is_unit(PrimeField(3).from_int(2)));
  CHECK(R.is_unit(R.from_int(2)));
}

TEST_CASE("is_square") {
  CHECK(Q.is_square(Rational(4, 9)));
  CHECK_FALSE(Q.is_square(Rational(2)));
  CHECK_FALSE(Q.is_square(Rational(-4)));
  CHECK(Q.is_square(Rational(0)));

  const PrimeField F7(7);
  CHECK(F7.is_square(F7.element(2)));
  // Euler's criterion agrees with brute force over every residue
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17}) {
    const PrimeField F(p);
    std::set<std::uint64_t> squares;
    for (std::uint64_t y = 0; y < p; ++y) squares.insert((y * y) % p);
    for (std::uint64_t x = 0; x < p; ++x) CHECK(F.is_square(F.element(x)) == (squares.count(x) == 1));
  }

  CHECK(R.is_square(lf({4, 1}, {1})));
  CHECK_FALSE(R.is_square(lf({2, 1}, {1})));
  CHECK_THROWS_AS(R.is_square(LocalFunction::variable()), MathError);
}

TEST_CASE("square classes are multiplicative") {
  DeterministicSampler s(5);
  const PrimeField F(23);
  for (int i = 0; i < 100; ++i) {
    const auto a = Q.sample(s), b = Q.sample(s);
    if (!Q.is_unit(a) || !Q.is_unit(b)) continue;
    CHECK(Q.is_square(a * a));
    if (Q.is_square(a) && Q.is_square(b)) CHECK(Q.is_square(a * b));
    CHECK(Q.is_square(a) == Q.is_square(Q.inverse(a)));
    const auto x = F.sample(s), y = F.sample(s);
    if (!F.is_unit(x) || !F.is_unit(y)) continue;
    CHECK(F.is_square(x * x));
    if (F.is_square(x) && F.is_square(y)) CHECK(F.is_square(x * y));
    CHECK(F.is_square(x) == F.is_square(F.inverse(x)));
  }
}

TEST_CASE("prime field construction") {
  CHECK_THROWS_AS(PrimeField(2), MathError);
  CHECK_THROWS_AS(PrimeField(9), MathError);
  CHECK_THROWS_AS(PrimeField(1), MathError);
  const PrimeField F(7);
  CHECK(F.from_int(-1) == F.element(6));
  CHECK(F.format(F.element(3)) == "3 mod 7");
  CHECK(F.parse("3 mod 7") == F.element(3));
  CHECK(F.parse("-4") == F.element(3));
  CHECK(F.parse("1/2") == F.element(4));
  CHECK_THROWS_AS(F.parse("3 mod 5"), ParseError);
  CHECK_THROWS_AS(F.element(1) + PrimeField(5).element(1), MathError);
}

TEST_CASE("local ring text encoding") {
  const auto a = lf({1, 1}, {2, -1});
  const std::string text = R.format(a);
  CHECK(text == "[1/2,1/2]/[1,-1/2]");
  CHECK(R.parse(text) == a);
  CHECK(R.parse("[1, 1] / [2, -1]") == a);
  CHECK(R.parse("3/4") == LocalFunction(Rational(3, 4)));
  CHECK(R.parse("[0,1]") == LocalFunction::variable());
  CHECK_THROWS_AS(R.parse("[1]/[0,1]"), ParseError);
  CHECK_THROWS_AS(R.parse("[1,"), ParseError);
}

TEST_CASE("sampler determinism and ranges") {
  DeterministicSampler a(42, 10), b(42, 10);
  for (int i = 0; i < 20; ++i) {
    const auto x = Q.sample(a);
    CHECK(x == Q.sample(b));
    CHECK(abs(x.numerator()) <= 10);
    CHECK(x.denominator() <= 10);
  }
  DeterministicSampler c(42);
  const PrimeField F5(5);
  for (int i = 0; i < 100; ++i) CHECK(F5.sample(c).value() < 5);
  DeterministicSampler d(43, 10);
  DeterministicSampler e(42, 10);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs |= !(Q.sample(d) == Q.sample(e));
  CHECK(differs);
}
