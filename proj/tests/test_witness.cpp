#include "doctest.h"

#include <vector>

#include "qnorm/witness.hpp"
#include "support/instances.hpp"

using namespace qnorm;
using qnorm::testing::random_instance;

namespace {

const RationalField Q;
const LocalRing R;
using P = Polynomial<RationalField>;
using E = EtaleAlgebra<RationalField>;
using V = QVector<RationalField>;

P poly(std::vector<Rational> c) { return P(Q, std::move(c)); }

QuadraticSpace<RationalField> identity(std::size_t m) { return {Q, identity_matrix(Q, m)}; }

template <ScalarDomain D>
void check_witness(const testing::Instance<D>& inst, const Witness<D>& w) {
  const auto& base = inst.alg.base();
  const auto a = base_change(inst.space, inst.alg).evaluate(inst.u);
  CHECK(factor_product(base, w.factors) == norm_by_resultant(inst.alg, a));
  CHECK(w.factors.size() % 2 == inst.alg.degree() % 2);
  for (const auto& f : w.factors) CHECK(inst.space.evaluate(f.vector) == f.value);
  CHECK(verify_witness(inst.space, inst.alg, inst.u, w).ok);
}

}  // namespace

TEST_CASE("primitive rescaling") {
  DeterministicSampler s(41);
  const E alg(poly({-2, 0, 1}));
  const auto t = alg.generator();
  const auto I = identity(2);
  const auto IE = base_change(I, alg);
  const QVector<E> u{alg.one(), t};  // a = 1 + t^2 = 3, not primitive
  const auto a = IE.evaluate(u);
  RetryCounter retries(1000);
  const auto scaled = make_primitive_scale(IE, a, u, s, retries);
  CHECK(is_primitive(alg, scaled.alpha));
  CHECK(scaled.alpha * IE.evaluate(scaled.v) == alg.one());
  CHECK(scaled.alpha == alg.inverse(a) * scaled.b * scaled.b);

  // a primitive: b = a is a valid draw and returns alpha = a
  const QVector<E> u2{alg.one(), alg.one() + t};
  const auto a2 = IE.evaluate(u2);
  REQUIRE(is_primitive(alg, a2));
  const auto closed = try_primitive_scale(alg, a2, u2, a2);
  REQUIRE(closed.has_value());
  CHECK(closed->alpha == a2);

  // degree one: b = 1 and alpha = a^{-1}
  const E line(poly({-3, 1}));
  const auto IL = base_change(I, line);
  const QVector<E> u3{line.one(), line.from_int(2)};
  const auto a3 = IL.evaluate(u3);
  const auto s3 = make_primitive_scale(IL, a3, u3, s, retries);
  CHECK(s3.b == line.one());
  CHECK(s3.alpha == line.inverse(a3));
  CHECK(s3.v == u3);
}

TEST_CASE("primitive rescaling on random instances") {
  DeterministicSampler s(42);
  for (int i = 0; i < 30; ++i) {
    const auto inst = random_instance(Q, s, static_cast<std::size_t>(s.uniform(1, 3)),
                                      static_cast<std::size_t>(s.uniform(1, 4)));
    const auto space_e = base_change(inst.space, inst.alg);
    const auto a = space_e.evaluate(inst.u);
    RetryCounter retries(1000);
    const auto scaled = make_primitive_scale(space_e, a, inst.u, s, retries);
    CHECK(scaled.alpha * space_e.evaluate(scaled.v) == inst.alg.one());
    CHECK(is_primitive(inst.alg, scaled.alpha));
  }
}

TEST_CASE("Phi polynomial") {
  const QuadraticSpace<RationalField> two(Q, Matrix<Rational>(1, 1, Rational(2)));
  const E alg(poly({-2, 1}));
  const auto alpha = alg.generator();  // = 2
  const auto phi = phi_polynomial(two, alg, alpha, {alg.embed(Rational(1, 2))});
  CHECK(phi.poly == poly({-1, Rational(1, 2)}));
  CHECK(phi.poly.degree() == 1);

  DeterministicSampler s(43);
  for (int i = 0; i < 20; ++i) {
    const auto inst = random_instance(Q, s, 3, static_cast<std::size_t>(s.uniform(2, 4)));
    const auto space_e = base_change(inst.space, inst.alg);
    const auto a = space_e.evaluate(inst.u);
    RetryCounter retries(1000);
    const auto scaled = make_primitive_scale(space_e, a, inst.u, s, retries);
    const auto p = phi_polynomial(inst.space, inst.alg, scaled.alpha, scaled.v);
    CHECK(p.poly.coeff(0) == Rational(-1));
    CHECK(p.poly.degree() <= static_cast<int>(2 * inst.alg.degree() - 1));
    // Phi(alpha) = alpha q(v) - 1 = 0
    CHECK(evaluate_in(inst.alg, p.poly, scaled.alpha) == inst.alg.zero());
  }
}

TEST_CASE("second intersection of a line with the quadric") {
  const E alg(poly({-1, 1}));
  const auto IE = base_change(identity(2), alg);
  const QVector<E> v{alg.one(), alg.zero()};
  CHECK(second_intersection(IE, v, {alg.one(), alg.one()}) == QVector<E>{alg.zero(), -alg.one()});
  CHECK(second_intersection(IE, v, {alg.zero(), alg.one()}) == v);
  // the same point is tau_{u'}(v)
  const auto IQ = identity(2);
  const V dir{Rational(2), Rational(-3)};
  const auto w = second_intersection(IE, v, embed_vector(alg, dir));
  CHECK(w == embed_vector(alg, reflection(IQ, dir, V{Rational(1), Rational(0)})));
}

TEST_CASE("sampled points lie on the quadric and divide Phi") {
  DeterministicSampler s(44);
  for (int i = 0; i < 20; ++i) {
    const auto inst = random_instance(Q, s, static_cast<std::size_t>(s.uniform(2, 4)),
                                      static_cast<std::size_t>(s.uniform(2, 4)));
    const auto space_e = base_change(inst.space, inst.alg);
    RetryCounter retries(1000);
    const auto scaled = make_primitive_scale(space_e, space_e.evaluate(inst.u), inst.u, s, retries);
    const auto point = sample_good_point(inst.space, space_e, scaled.alpha, scaled.v, s, i % 2 == 0, retries);
    CHECK(scaled.alpha * space_e.evaluate(point.omega) == inst.alg.one());
    CHECK(phi_is_good(point.phi, inst.alg.degree()));
    const auto f = minimal_polynomial(inst.alg, scaled.alpha);
    const auto [c, h] = factor_phi(point.phi.poly, f);
    CHECK(c * h * f == point.phi.poly);
    CHECK(h.is_monic());
    CHECK(h.degree() == static_cast<int>(inst.alg.degree()) - 1);
    CHECK(is_separable(h));
    CHECK(inst.space.evaluate(point.phi.coords.row(inst.alg.degree() - 1)) == c);
  }
}

TEST_CASE("rank one has no quadric lines") {
  DeterministicSampler s(45);
  const QuadraticSpace<RationalField> one(Q, Matrix<Rational>(1, 1, Rational(1)));
  const E alg(poly({-2, 0, 1}));
  const auto space_e = base_change(one, alg);
  RetryCounter retries(10);
  CHECK_THROWS_AS(sample_good_point(one, space_e, alg.one(), {alg.one()}, s, false, retries), MathError);
}

TEST_CASE("lifting lemma fixture") {
  const EtaleAlgebra<LocalRing> S(Polynomial<LocalRing>(R, {-1, 1}));
  const QuadraticSpace<LocalRing> I(R, identity_matrix(R, 2));
  const auto IS = base_change(I, S);
  const auto x = LocalFunction::variable();
  const QVector<EtaleAlgebra<LocalRing>> v{S.one(), S.zero()};
  const QVector<EtaleAlgebra<LocalRing>> lifted{S.embed(Rational(3, 5)), S.embed(LocalFunction(Rational(4, 5)) + x)};
  const auto res = lift_point(IS, S.one(), v, lifted);

  const auto h = LocalFunction(Rational(8, 5)) * x + x * x;
  CHECK(res.h == S.embed(h));
  CHECK(res.u == S.embed(Rational(-2, 5)));
  CHECK(res.lambda == S.embed(h * LocalFunction(Rational(5, 4))));
  CHECK(res.lambda == -res.h * S.inverse(S.from_int(2) * res.u));
  CHECK(IS.evaluate(res.omega) == S.one());
  CHECK(res.omega[0].coeff(0).residue() == Rational(3, 5));
  CHECK(res.omega[1].coeff(0).residue() == Rational(4, 5));

  // an exact lift is left alone
  const QVector<EtaleAlgebra<LocalRing>> exact{S.embed(Rational(3, 5)), S.embed(Rational(4, 5))};
  const auto same = lift_point(IS, S.one(), v, exact);
  CHECK(same.lambda == S.zero());
  CHECK(same.omega == exact);

  // <v, w~> - 1 must be a unit
  const QVector<EtaleAlgebra<LocalRing>> bad{S.one() + S.embed(x), S.embed(x)};
  CHECK_THROWS_AS(lift_point(IS, S.one(), v, bad), MathError);
}

TEST_CASE("factor_phi") {
  const auto f = poly({-2, 0, 1});
  const auto phi = Rational(5) * poly({-3, 1}) * f;
  const auto [c, h] = factor_phi(phi, f);
  CHECK(c == Rational(5));
  CHECK(h == poly({-3, 1}));

  const auto [c1, h1] = factor_phi(poly({-1, Rational(1, 2)}), poly({-2, 1}));
  CHECK(c1 == Rational(1, 2));
  CHECK(h1 == poly({1}));

  try {
    factor_phi(poly({-1, 0, 0, 1}), f);
    FAIL("expected NonzeroRemainder");
  } catch (const MathError& e) {
    CHECK(e.code() == ErrorCode::NonzeroRemainder);
    CHECK(e.is_internal());
  }
}

TEST_CASE("invert_factor") {
  const auto I = identity(2);
  const V w{Rational(1), Rational(2)};
  const auto inv = invert_factor(I, w);
  CHECK(inv == V{Rational(1, 5), Rational(2, 5)});
  CHECK(I.evaluate(inv) == Rational(1, 5));
  const V unit{Rational(3, 5), Rational(4, 5)};
  CHECK(invert_factor(I, unit) == unit);
  DeterministicSampler s(46);
  for (int i = 0; i < 20; ++i) {
    const auto space = testing::random_space(Q, s, 3);
    V x{Q.sample(s), Q.sample(s), Q.sample(s)};
    if (!Q.is_unit(space.evaluate(x))) continue;
    CHECK(space.evaluate(invert_factor(space, x)) * space.evaluate(x) == Rational(1));
  }
}

TEST_CASE("witness examples") {
  DeterministicSampler s(7);
  const auto I = identity(2);

  const E line(poly({0, 1}));
  const QVector<E> u1{line.one(), line.from_int(2)};
  const auto w1 = norm_principle_witness(I, line, u1, s);
  CHECK(w1.norm == Rational(5));
  CHECK(factor_product(Q, w1.factors) == Rational(5));
  CHECK(w1.parity == 1);

  const E gauss(poly({1, 0, 1}));
  const auto t = gauss.generator();
  const QVector<E> u2{gauss.one(), gauss.one() + t};
  const auto a2 = base_change(I, gauss).evaluate(u2);
  CHECK(a2 == gauss.one() + gauss.from_int(2) * t);
  const auto w2 = norm_principle_witness(I, gauss, u2, s);
  CHECK(factor_product(Q, w2.factors) == resultant(poly({1, 0, 1}), poly({1, 2})));
  CHECK(w2.norm == Rational(5));
  CHECK(w2.factors.size() % 2 == 0);
  CHECK(verify_witness(I, gauss, u2, w2).ok);
}

TEST_CASE("non-unit input is refused") {
  DeterministicSampler s(8);
  const E gauss(poly({1, 0, 1}));
  const QVector<E> u{gauss.one(), gauss.generator()};
  try {
    norm_principle_witness(identity(2), gauss, u, s);
    FAIL("expected NonUnitInput");
  } catch (const MathError& e) {
    CHECK(e.code() == ErrorCode::NonUnitInput);
  }
}

TEST_CASE("verification catches tampering") {
  DeterministicSampler s(9);
  const auto I = identity(2);
  const E gauss(poly({1, 0, 1}));
  const auto t = gauss.generator();
  const QVector<E> u{gauss.one(), gauss.one() + t};
  auto w = norm_principle_witness(I, gauss, u, s);
  REQUIRE(verify_witness(I, gauss, u, w).ok);

  auto tampered = w;
  tampered.factors[0].vector[0] = tampered.factors[0].vector[0] + Rational(1);
  CHECK_FALSE(verify_witness(I, gauss, u, tampered).ok);

  auto wrong_norm = w;
  wrong_norm.norm = Rational(6);
  CHECK(verify_witness(I, gauss, u, wrong_norm).reason == "claimed_norm_mismatch");

  auto dropped = w;
  dropped.factors.pop_back();
  dropped.parity = static_cast<int>(dropped.factors.size() % 2);
  CHECK_FALSE(verify_witness(I, gauss, u, dropped).ok);

  // the empty witness certifies N(1) = 1 in even degree
  const QVector<E> e1{gauss.one(), gauss.zero()};
  const Witness<RationalField> empty{{}, gauss.one(), Rational(1), 0, 0, 0};
  CHECK(verify_witness(I, gauss, e1, empty).ok);
}

TEST_CASE("witnesses over the rationals") {
  DeterministicSampler s(47);
  for (int i = 0; i < 40; ++i) {
    const auto inst = random_instance(Q, s, static_cast<std::size_t>(s.uniform(1, 4)),
                                      static_cast<std::size_t>(s.uniform(1, 4)));
    DeterministicSampler run(1000 + static_cast<std::uint64_t>(i));
    const auto w = norm_principle_witness(inst.space, inst.alg, inst.u, run);
    check_witness(inst, w);
  }
}

TEST_CASE("witnesses over the rationals through sampled points") {
  DeterministicSampler s(52);
  WitnessOptions options;
  options.known_point_first = false;
  for (int i = 0; i < 15; ++i) {
    const auto inst = random_instance(Q, s, static_cast<std::size_t>(s.uniform(2, 4)),
                                      static_cast<std::size_t>(s.uniform(1, 3)));
    DeterministicSampler run(5000 + static_cast<std::uint64_t>(i));
    check_witness(inst, norm_principle_witness(inst.space, inst.alg, inst.u, run, options));
  }
}

TEST_CASE("witnesses over a prime field") {
  const PrimeField F(101);
  DeterministicSampler s(48);
  for (int i = 0; i < 40; ++i) {
    const auto inst = random_instance(F, s, static_cast<std::size_t>(s.uniform(1, 4)),
                                      static_cast<std::size_t>(s.uniform(1, 4)));
    DeterministicSampler run(2000 + static_cast<std::uint64_t>(i));
    const auto w = norm_principle_witness(inst.space, inst.alg, inst.u, run);
    check_witness(inst, w);
  }
}

TEST_CASE("witnesses over the local ring reduce to residue witnesses") {
  DeterministicSampler s(49);
  for (int i = 0; i < 20; ++i) {
    const auto inst = random_instance(R, s, static_cast<std::size_t>(s.uniform(1, 3)),
                                      static_cast<std::size_t>(s.uniform(1, 3)));
    DeterministicSampler run(3000 + static_cast<std::uint64_t>(i));
    const auto w = norm_principle_witness(inst.space, inst.alg, inst.u, run);
    check_witness(inst, w);

    const auto residue_alg = reduce_mod_maximal(inst.alg);
    const auto residue_space = reduce_space(inst.space);
    QVector<E> u_bar;
    for (const auto& x : inst.u) u_bar.push_back(reduce_element(residue_alg, x));
    Witness<RationalField> reduced{{}, reduce_element(residue_alg, w.input), w.norm.residue(), w.parity, w.seed, 0};
    for (const auto& f : w.factors) {
      V vec;
      for (const auto& c : f.vector) vec.push_back(c.residue());
      reduced.factors.push_back({vec, f.value.residue()});
    }
    CHECK(verify_witness(residue_space, residue_alg, u_bar, reduced).ok);
  }
}

TEST_CASE("local witnesses through lifted residue points") {
  DeterministicSampler s(51);
  WitnessOptions options;
  options.known_point_first = false;
  for (int i = 0; i < 12; ++i) {
    const auto inst = random_instance(R, s, static_cast<std::size_t>(s.uniform(2, 3)),
                                      static_cast<std::size_t>(s.uniform(1, 2)));
    DeterministicSampler run(4000 + static_cast<std::uint64_t>(i));
    check_witness(inst, norm_principle_witness(inst.space, inst.alg, inst.u, run, options));
  }
}

TEST_CASE("witnesses are deterministic in the seed") {
  DeterministicSampler s(50);
  const auto inst = random_instance(Q, s, 3, 3);
  DeterministicSampler a(77), b(77);
  const auto wa = norm_principle_witness(inst.space, inst.alg, inst.u, a);
  const auto wb = norm_principle_witness(inst.space, inst.alg, inst.u, b);
  REQUIRE(wa.factors.size() == wb.factors.size());
  for (std::size_t k = 0; k < wa.factors.size(); ++k) CHECK(wa.factors[k].vector == wb.factors[k].vector);
  CHECK(wa.retries == wb.retries);
}
