#pragma once

// Random problem instances shared by the unit tests and the acceptance run.

#include <cstddef>
#include <utility>
#include <vector>

#include "qnorm/etale.hpp"
#include "qnorm/quadform.hpp"
#include "qnorm/sampler.hpp"
#include "qnorm/scalar.hpp"
#include "qnorm/spinor.hpp"

namespace qnorm::testing {

/// Nonzero scalar with a unit value.
template <ScalarDomain D>
typename D::Element random_unit(const D& dom, DeterministicSampler& s) {
  while (true) {
    auto x = dom.sample(s);
    if (dom.is_unit(x)) return x;
  }
}

/// Diagonal of units plus a sparse symmetric perturbation, redrawn until
/// the determinant is a unit.
template <ScalarDomain D>
QuadraticSpace<D> random_space(const D& dom, DeterministicSampler& s, std::size_t m) {
  while (true) {
    Matrix<typename D::Element> g(m, m, dom.zero());
    for (std::size_t i = 0; i < m; ++i) g(i, i) = random_unit(dom, s);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (s.below(3) == 0) g(i, j) = g(j, i) = dom.sample(s);
    if (dom.is_unit(determinant(dom, g))) return QuadraticSpace<D>(dom, std::move(g));
  }
}

template <ScalarDomain D>
Polynomial<D> random_separable_monic(const D& dom, DeterministicSampler& s, std::size_t n) {
  while (true) {
    std::vector<typename D::Element> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(dom.sample(s));
    c.push_back(dom.one());
    Polynomial<D> f(dom, std::move(c));
    if (is_separable(f)) return f;
  }
}

template <ScalarDomain D>
AlgebraElement<D> random_element(const EtaleAlgebra<D>& alg, DeterministicSampler& s) {
  std::vector<typename D::Element> c;
  for (std::size_t i = 0; i < alg.degree(); ++i) c.push_back(alg.base().sample(s));
  return alg.element(std::move(c));
}

/// Vector over E whose value q_E(u) is a unit.
template <ScalarDomain D>
QVector<EtaleAlgebra<D>> random_represented(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg,
                                           DeterministicSampler& s) {
  const auto space_e = base_change(space, alg);
  while (true) {
    QVector<EtaleAlgebra<D>> u;
    for (std::size_t j = 0; j < space.rank(); ++j) u.push_back(random_element(alg, s));
    if (alg.is_unit(space_e.evaluate(u))) return u;
  }
}

template <ScalarDomain D>
struct Instance {
  QuadraticSpace<D> space;
  EtaleAlgebra<D> alg;
  QVector<EtaleAlgebra<D>> u;
};

template <ScalarDomain D>
Instance<D> random_instance(const D& dom, DeterministicSampler& s, std::size_t m, std::size_t n) {
  auto space = random_space(dom, s, m);
  EtaleAlgebra<D> alg(random_separable_monic(dom, s, n));
  auto u = random_represented(space, alg, s);
  return {std::move(space), std::move(alg), std::move(u)};
}

template <Ring R>
struct RandomIsometry {
  Matrix<typename R::Element> matrix;
  std::vector<QVector<R>> mirrors;
};

/// Product of `count` random unit-valued reflections; draw() yields one
/// coordinate.
template <Ring R, class Draw>
RandomIsometry<R> random_isometry(const QuadraticSpace<R>& space, std::size_t count, Draw draw) {
  std::vector<QVector<R>> mirrors;
  while (mirrors.size() < count) {
    QVector<R> w;
    for (std::size_t j = 0; j < space.rank(); ++j) w.push_back(draw());
    if (space.ring().is_unit(space.evaluate(w))) mirrors.push_back(std::move(w));
  }
  auto matrix = compose_reflections(space, mirrors);
  return {std::move(matrix), std::move(mirrors)};
}

/// q(w_1) ... q(w_k).
template <Ring R>
typename R::Element product_of_values(const QuadraticSpace<R>& space, const std::vector<QVector<R>>& ws) {
  auto acc = space.ring().one();
  for (const auto& w : ws) acc = acc * space.evaluate(w);
  return acc;
}

}  // namespace qnorm::testing
