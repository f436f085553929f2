#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"
#include "qnorm/etale.hpp"
#include "qnorm/local_ring.hpp"
#include "qnorm/quadform.hpp"
#include "qnorm/sampler.hpp"

namespace qnorm {

/// A base vector together with its (unit) value under q.
template <ScalarDomain D>
struct WitnessFactor {
  QVector<D> vector;
  typename D::Element value;
};

/// Explicit certificate that N(a) is a product of values represented by q
/// over the base: prod factors[k].value == norm, exactly.
template <ScalarDomain D>
struct Witness {
  std::vector<WitnessFactor<D>> factors;
  AlgebraElement<D> input;
  typename D::Element norm;
  int parity = 0;
  std::uint64_t seed = 0;
  /// Rejected draws across every sampling loop of the run.
  int retries = 0;
};

/// known_point_first: use the known point v itself as w whenever its Phi is
/// good, and sample only otherwise. A sampled or lifted point compounds
/// coefficient growth (heights over Q, x-degrees over the local ring) at
/// every level of the recursion.
struct WitnessOptions {
  bool known_point_first = true;
};

/// Counts rejected draws and enforces the per-loop budget.
class RetryCounter {
 public:
  explicit RetryCounter(int budget) : budget_(budget) {}

  /// Records one rejected draw; signals SamplingExhausted once the current
  /// loop has used its whole budget.
  void reject(int& loop_failures, const char* what) {
    ++total_;
    if (++loop_failures >= budget_)
      fail(ErrorCode::SamplingExhausted, std::string(what) + " after " + std::to_string(budget_) + " draws");
  }

  int total() const { return total_; }

 private:
  int budget_;
  int total_ = 0;
};

template <ScalarDomain D>
struct PrimitiveScale {
  AlgebraElement<D> b;
  AlgebraElement<D> alpha;  // a^{-1} b^2
  QVector<EtaleAlgebra<D>> v;  // u b^{-1}, so alpha q(v) = 1
};

template <ScalarDomain D>
struct PhiPolynomial {
  Polynomial<D> poly;
  /// w_{i,j}: coordinates of w_j in the power basis of alpha.
  Matrix<typename D::Element> coords;
  AlgebraElement<D> alpha;
};

template <ScalarDomain D>
struct PhiFactorization {
  typename D::Element c;
  Polynomial<D> h;
};

template <ScalarDomain D>
struct LiftResult {
  QVector<EtaleAlgebra<D>> omega;
  AlgebraElement<D> h;       // phi(lift) - 1, in the maximal ideal
  AlgebraElement<D> u;       // <v, lift> - 1, a unit
  AlgebraElement<D> lambda;  // -h / 2u
};

namespace detail {

inline bool is_retryable(const MathError& e) {
  return e.code() == ErrorCode::ZeroDivisor || e.code() == ErrorCode::NotAUnit ||
         e.code() == ErrorCode::NotPrimitive || e.code() == ErrorCode::NotSeparable;
}

/// Random algebra element with residue-level coefficients.
template <ScalarDomain D>
AlgebraElement<D> sample_residue_level(const EtaleAlgebra<D>& alg, DeterministicSampler& s) {
  std::vector<typename D::Element> coeffs;
  for (std::size_t i = 0; i < alg.degree(); ++i) {
    if constexpr (D::is_local) {
      coeffs.push_back(LocalFunction(RationalField{}.sample(s)));
    } else {
      coeffs.push_back(alg.base().sample(s));
    }
  }
  return alg.element(std::move(coeffs));
}

}  // namespace detail

/// Residue reduction of a space over the local ring.
inline QuadraticSpace<RationalField> reduce_space(const QuadraticSpace<LocalRing>& space) {
  const auto& g = space.gram();
  Matrix<Rational> gram(g.rows(), g.cols(), Rational(0));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) gram(i, j) = g(i, j).residue();
  return QuadraticSpace<RationalField>(RationalField{}, std::move(gram));
}

/// Checks whether b rescales a = q(u) to a primitive unit alpha = a^{-1} b^2.
template <ScalarDomain D>
std::optional<PrimitiveScale<D>> try_primitive_scale(const EtaleAlgebra<D>& alg, const AlgebraElement<D>& a,
                                                     const QVector<EtaleAlgebra<D>>& u,
                                                     const AlgebraElement<D>& b) {
  try {
    if (!alg.is_unit(b)) return std::nullopt;
    auto alpha = alg.inverse(a) * b * b;
    if (!is_primitive(alg, alpha)) return std::nullopt;
    return PrimitiveScale<D>{b, alpha, scale(alg.inverse(b), u)};
  } catch (const MathError& e) {
    if (!detail::is_retryable(e)) throw;
    return std::nullopt;
  }
}

/// Finds b with alpha = a^{-1} b^2 primitive. b = 1 and b = a are tried
/// first; later draws have residue-level coefficients, lifted as constants
/// over the local ring.
template <ScalarDomain D>
PrimitiveScale<D> make_primitive_scale(const QuadraticSpace<EtaleAlgebra<D>>& space_e,
                                       const AlgebraElement<D>& a, const QVector<EtaleAlgebra<D>>& u,
                                       DeterministicSampler& sampler, RetryCounter& retries) {
  const EtaleAlgebra<D>& alg = space_e.ring();
  if (!alg.is_unit(a)) fail(ErrorCode::NonUnitInput, "the represented value is not a unit");
  if (alg.degree() == 1) return PrimitiveScale<D>{alg.one(), alg.inverse(a), u};
  int failures = 0;
  for (const auto& b : {alg.one(), a}) {
    if (auto found = try_primitive_scale(alg, a, u, b)) return *found;
    retries.reject(failures, "primitive rescaling");
  }
  while (true) {
    const auto b = detail::sample_residue_level(alg, sampler);
    if (auto found = try_primitive_scale(alg, a, u, b)) return *found;
    retries.reject(failures, "primitive rescaling");
  }
}

/// Phi_w(t) = t q(w(t)) - 1 with w expanded in the power basis of alpha.
template <ScalarDomain D>
PhiPolynomial<D> phi_polynomial(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg,
                                const AlgebraElement<D>& alpha, const QVector<EtaleAlgebra<D>>& omega) {
  const D& base = alg.base();
  if (omega.size() != space.rank()) fail(ErrorCode::DimensionMismatch, "vector length does not match the rank");
  auto coords = coordinates_in_power_basis(alg, alpha, omega);
  const auto polys = contract(base, coords);
  const auto& g = space.gram();
  Polynomial<D> q_of_omega(base);
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (polys[j].is_zero()) continue;
    Polynomial<D> row(base);
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (base.is_zero(g(j, k))) continue;
      row = row + g(j, k) * polys[k];
    }
    q_of_omega = q_of_omega + polys[j] * row;
  }
  auto phi = Polynomial<D>::variable(base) * q_of_omega - Polynomial<D>::constant(base, base.one());
  return {std::move(phi), std::move(coords), alpha};
}

/// Separable of degree exactly 2n - 1 (over the local ring: residue
/// separable with a unit leading coefficient).
template <ScalarDomain D>
bool phi_is_good(const PhiPolynomial<D>& phi, std::size_t n) {
  if (phi.poly.degree() != static_cast<int>(2 * n - 1)) return false;
  if (!phi.poly.domain().is_unit(phi.poly.leading())) return false;
  return is_separable(phi.poly);
}

template <ScalarDomain D>
struct GoodPoint {
  QVector<EtaleAlgebra<D>> omega;
  PhiPolynomial<D> phi;
};

/// Second intersection of the line v + s u' with the quadric alpha q = 1:
/// v - (2<v,u'>/q(u')) u'.
template <ScalarDomain D>
QVector<EtaleAlgebra<D>> second_intersection(const QuadraticSpace<EtaleAlgebra<D>>& space_e,
                                             const QVector<EtaleAlgebra<D>>& v,
                                             const QVector<EtaleAlgebra<D>>& direction) {
  const auto& alg = space_e.ring();
  const auto qd = space_e.evaluate(direction);
  const auto s = alg.from_int(2) * space_e.bilinear(v, direction) * alg.inverse(qd);
  return subtract(v, scale(s, direction));
}

/// Rejection-samples w' on alpha q = 1 through the known point v with
/// Phi_{w'} separable of degree 2n-1 and, in ring mode, alpha<v,w'> - 1 a
/// unit.
template <ScalarDomain D>
GoodPoint<D> sample_good_point(const QuadraticSpace<D>& space, const QuadraticSpace<EtaleAlgebra<D>>& space_e,
                               const AlgebraElement<D>& alpha, const QVector<EtaleAlgebra<D>>& v,
                               DeterministicSampler& sampler, bool ring_mode, RetryCounter& retries) {
  const auto& alg = space_e.ring();
  const std::size_t m = space.rank();
  if (m < 2) fail(ErrorCode::RankOneUnsupported, "the quadric of a rank one form has no lines");
  ensure(alpha * space_e.evaluate(v) == alg.one(), "sample_good_point: v is not on the quadric");
  const std::size_t n = alg.degree();
  int failures = 0;
  while (true) {
    try {
      QVector<EtaleAlgebra<D>> direction;
      for (std::size_t j = 0; j < m; ++j) direction.push_back(detail::sample_residue_level(alg, sampler));
      if (alg.is_unit(space_e.evaluate(direction))) {
        auto omega = second_intersection(space_e, v, direction);
        ensure(alpha * space_e.evaluate(omega) == alg.one(), "line parametrization left the quadric");
        bool ok = true;
        if (ring_mode) ok = alg.is_unit(alpha * space_e.bilinear(v, omega) - alg.one());
        if (ok) {
          auto phi = phi_polynomial(space, alg, alpha, omega);
          if (phi_is_good(phi, n)) return {std::move(omega), std::move(phi)};
        }
      }
    } catch (const MathError& e) {
      if (!detail::is_retryable(e)) throw;
    }
    retries.reject(failures, "quadric point sampling");
  }
}

/// Corrects a lift w~ of a residue-level solution to an exact solution of
/// alpha q(w) = 1: w = (lambda v + w~)/(lambda + 1), lambda = -h/2u.
template <ScalarDomain D>
LiftResult<D> lift_point(const QuadraticSpace<EtaleAlgebra<D>>& space_s, const AlgebraElement<D>& alpha,
                         const QVector<EtaleAlgebra<D>>& v, const QVector<EtaleAlgebra<D>>& omega_tilde) {
  const auto& alg = space_s.ring();
  ensure(alpha * space_s.evaluate(v) == alg.one(), "lift_point: v is not on the quadric");
  auto h = alpha * space_s.evaluate(omega_tilde) - alg.one();
  auto u = alpha * space_s.bilinear(v, omega_tilde) - alg.one();
  if (!alg.is_unit(u)) fail(ErrorCode::UnitConditionViolated, "<v, lift> - 1 is not a unit");
  // (lambda v + w~)/(lambda + 1) with the common factor 1/2u cleared
  const auto two_u = alg.from_int(2) * u;
  const auto denom = alg.inverse(two_u - h);
  auto omega = scale(denom, add(scale(-h, v), scale(two_u, omega_tilde)));
  auto lambda = -h * alg.inverse(two_u);
  ensure(alpha * space_s.evaluate(omega) == alg.one(), "lifted point is off the quadric");
  return {std::move(omega), std::move(h), std::move(u), std::move(lambda)};
}

/// Constant coefficient-wise lift of a residue-level point, then corrected.
inline LiftResult<LocalRing> lift_point(const QuadraticSpace<EtaleAlgebra<LocalRing>>& space_s,
                                        const AlgebraElement<LocalRing>& alpha,
                                        const QVector<EtaleAlgebra<LocalRing>>& v,
                                        const QVector<EtaleAlgebra<RationalField>>& omega_residue) {
  QVector<EtaleAlgebra<LocalRing>> lifted;
  for (const auto& x : omega_residue) lifted.push_back(lift_element(space_s.ring(), x));
  return lift_point(space_s, alpha, v, lifted);
}

/// Phi = c h f_alpha with h monic of degree n - 1.
template <ScalarDomain D>
PhiFactorization<D> factor_phi(const Polynomial<D>& phi, const Polynomial<D>& f_alpha) {
  auto [quot, rem] = divmod_monic(phi, f_alpha);
  if (!rem.is_zero()) fail(ErrorCode::NonzeroRemainder, "minimal polynomial does not divide Phi");
  const D& base = phi.domain();
  const auto c = quot.leading();
  if (!base.is_unit(c)) fail(ErrorCode::InternalInvariant, "leading coefficient of Phi is not a unit");
  return {c, base.inverse(c) * quot};
}

/// w / q(w): a single represented value standing in for q(w)^{-1}.
template <ScalarDomain D>
QVector<D> invert_factor(const QuadraticSpace<D>& space, const QVector<D>& w) {
  const auto value = space.evaluate(w);
  if (!space.ring().is_unit(value)) fail(ErrorCode::NotAUnit, "q(w) is not a unit");
  return scale(space.ring().inverse(value), w);
}

namespace detail {

/// Degree-reduction recursion on (alpha, v) with alpha q(v) = 1. Returns
/// exactly n factors whose values multiply to N(q(v)).
template <ScalarDomain D>
std::vector<WitnessFactor<D>> norm_witness_core(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg,
                                                const AlgebraElement<D>& alpha,
                                                const QVector<EtaleAlgebra<D>>& v,
                                                DeterministicSampler& sampler, RetryCounter& retries,
                                                const WitnessOptions& options) {
  const D& base = alg.base();
  const std::size_t n = alg.degree();
  const auto space_e = base_change(space, alg);
  ensure(alpha * space_e.evaluate(v) == alg.one(), "recursion entered off the quadric");

  if (n == 1) {
    QVector<D> w;
    for (const auto& x : v) w.push_back(x.coeff(0));
    auto value = space.evaluate(w);
    ensure(value * alpha.coeff(0) == base.one(), "degree one base case");
    return {WitnessFactor<D>{std::move(w), std::move(value)}};
  }

  const auto f_alpha = minimal_polynomial(alg, alpha);
  const auto sign = n % 2 == 0 ? base.one() : -base.one();
  ensure(norm(alg, alpha) == sign * f_alpha.coeff(0), "N(alpha) = (-1)^n f_alpha(0)");

  QVector<EtaleAlgebra<D>> omega;
  std::optional<PhiPolynomial<D>> phi;
  if (options.known_point_first) {
    auto direct = phi_polynomial(space, alg, alpha, v);
    if (phi_is_good(direct, n)) {
      omega = v;
      phi = std::move(direct);
    }
  }
  if (!phi) {
    if constexpr (D::is_local) {
      const auto residue_alg = reduce_mod_maximal(alg);
      const auto residue_space = reduce_space(space);
      const auto residue_space_e = base_change(residue_space, residue_alg);
      const auto alpha_bar = reduce_element(residue_alg, alpha);
      QVector<EtaleAlgebra<RationalField>> v_bar;
      for (const auto& x : v) v_bar.push_back(reduce_element(residue_alg, x));
      const auto point =
          sample_good_point(residue_space, residue_space_e, alpha_bar, v_bar, sampler, true, retries);
      omega = lift_point(space_e, alpha, v, point.omega).omega;
      phi = phi_polynomial(space, alg, alpha, omega);
      ensure(base.reduce(phi->poly) == point.phi.poly, "Phi does not reduce to the residue Phi");
      ensure(phi_is_good(*phi, n), "lifted Phi is not separable of degree 2n-1");
    } else {
      auto point = sample_good_point(space, space_e, alpha, v, sampler, false, retries);
      omega = std::move(point.omega);
      phi = std::move(point.phi);
    }
  }

  const auto [c, h] = factor_phi(phi->poly, f_alpha);
  ensure(h.degree() == static_cast<int>(n) - 1 && h.is_monic(), "h is monic of degree n-1");

  QVector<D> top = phi->coords.row(n - 1);
  ensure(space.evaluate(top) == c, "c equals q of the top coordinate row");

  const EtaleAlgebra<D> next(h);
  const auto beta = next.generator();
  QVector<EtaleAlgebra<D>> u_next;
  for (const auto& wj : contract(base, phi->coords)) u_next.push_back(next.element(wj));

  auto sub = norm_witness_core(space, next, beta, u_next, sampler, retries, options);

  std::vector<WitnessFactor<D>> out;
  out.push_back(WitnessFactor<D>{std::move(top), c});
  for (auto& f : sub) {
    auto w = invert_factor(space, f.vector);
    auto value = space.evaluate(w);
    out.push_back(WitnessFactor<D>{std::move(w), std::move(value)});
  }
  return out;
}

template <ScalarDomain D>
Witness<D> rank_one_witness(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg,
                            const QVector<EtaleAlgebra<D>>& u, const AlgebraElement<D>& a, std::uint64_t seed) {
  const D& base = alg.base();
  const std::size_t n = alg.degree();
  const auto& u0 = u.at(0);
  if (!alg.is_unit(u0)) fail(ErrorCode::NonUnitInput, "the represented value is not a unit");
  const auto d = space.gram()(0, 0);
  Witness<D> w{{}, a, norm(alg, a), 0, seed, 0};
  const QVector<D> e{base.one()};
  for (std::size_t i = 0; i < n; ++i) w.factors.push_back({e, d});
  const auto nu = norm(alg, u0);
  if (!(nu * nu == base.one())) {
    QVector<D> scaled{nu};
    w.factors.push_back({scaled, space.evaluate(scaled)});
    auto inv = invert_factor(space, e);
    auto value = space.evaluate(inv);
    w.factors.push_back({std::move(inv), std::move(value)});
  }
  return w;
}

}  // namespace detail

template <ScalarDomain D>
typename D::Element factor_product(const D& base, const std::vector<WitnessFactor<D>>& factors) {
  auto acc = base.one();
  for (const auto& f : factors) acc = acc * f.value;
  return acc;
}

/// Explicit witness that N(q_E(u)) is a product of values of q over the
/// base. The factor count is congruent to deg E mod 2.
template <ScalarDomain D>
Witness<D> norm_principle_witness(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg,
                                  const QVector<EtaleAlgebra<D>>& u, DeterministicSampler& sampler,
                                  const WitnessOptions& options = {}) {
  const D& base = alg.base();
  const auto space_e = base_change(space, alg);
  const auto a = space_e.evaluate(u);
  if (!alg.is_unit(a)) fail(ErrorCode::NonUnitInput, "the represented value is not a unit");

  Witness<D> w{{}, a, norm(alg, a), 0, sampler.seed(), 0};
  if (space.rank() == 1) {
    w = detail::rank_one_witness(space, alg, u, a, sampler.seed());
  } else {
    RetryCounter retries(sampler.max_retries());
    const auto scaled = make_primitive_scale(space_e, a, u, sampler, retries);
    w.factors = detail::norm_witness_core(space, alg, scaled.alpha, scaled.v, sampler, retries, options);
    const auto nb = norm(alg, scaled.b);
    if (!(nb * nb == base.one())) {
      const auto z = anisotropic_vector(space);
      QVector<D> padded = scale(nb, z);
      auto padded_value = space.evaluate(padded);
      w.factors.push_back({std::move(padded), std::move(padded_value)});
      auto inv = invert_factor(space, z);
      auto inv_value = space.evaluate(inv);
      w.factors.push_back({std::move(inv), std::move(inv_value)});
    }
    w.retries = retries.total();
  }
  w.parity = static_cast<int>(w.factors.size() % 2);
  ensure(factor_product(base, w.factors) == w.norm, "witness product differs from N(a)");
  ensure(static_cast<std::size_t>(w.parity) == alg.degree() % 2, "witness parity differs from deg E");
  return w;
}

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

/// Independent re-check: every factor value, the product, and N(q(u)) via
/// both the multiplication-matrix determinant and the resultant.
template <ScalarDomain D>
VerifyResult verify_witness(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg,
                            const QVector<EtaleAlgebra<D>>& u, const Witness<D>& w) {
  const D& base = alg.base();
  try {
    const auto space_e = base_change(space, alg);
    const auto a = space_e.evaluate(u);
    if (!(a == w.input)) return {false, "input_mismatch"};
    auto product = base.one();
    for (std::size_t k = 0; k < w.factors.size(); ++k) {
      const auto& f = w.factors[k];
      if (f.vector.size() != space.rank()) return {false, "factor_dimension_mismatch"};
      const auto value = space.evaluate(f.vector);
      if (!(value == f.value)) return {false, "factor_value_mismatch at " + std::to_string(k)};
      if (!base.is_unit(value)) return {false, "factor_not_unit at " + std::to_string(k)};
      product = product * value;
    }
    const auto by_det = norm(alg, a);
    const auto by_res = norm_by_resultant(alg, a);
    if (!(by_det == by_res)) return {false, "norm_routes_disagree"};
    if (!(w.norm == by_det)) return {false, "claimed_norm_mismatch"};
    if (!(product == by_det)) return {false, "product_mismatch"};
    const auto count_parity = static_cast<int>(w.factors.size() % 2);
    if (w.parity != count_parity || static_cast<std::size_t>(w.parity) != alg.degree() % 2)
      return {false, "parity_mismatch"};
  } catch (const MathError& e) {
    return {false, std::string("error: ") + e.what()};
  }
  return {true, "ok"};
}

}  // namespace qnorm
