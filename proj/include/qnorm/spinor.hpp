#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qnorm/domain.hpp"
#include "qnorm/errors.hpp"
#include "qnorm/etale.hpp"
#include "qnorm/matrix.hpp"
#include "qnorm/quadform.hpp"
#include "qnorm/sampler.hpp"
#include "qnorm/witness.hpp"

namespace qnorm {

/// Mirrors w_1..w_k with A = tau_{w_1} o ... o tau_{w_k}.
template <Ring R>
struct ReflectionDecomposition {
  std::vector<QVector<R>> mirrors;
};

template <Ring R>
bool is_isometry(const QuadraticSpace<R>& space, const Matrix<typename R::Element>& a) {
  if (a.rows() != space.rank() || a.cols() != space.rank()) return false;
  const R& ring = space.ring();
  return multiply(ring, multiply(ring, a.transposed(), space.gram()), a) == space.gram();
}

/// Matrix of tau_{w_1} o ... o tau_{w_k}.
template <Ring R>
Matrix<typename R::Element> compose_reflections(const QuadraticSpace<R>& space,
                                                const std::vector<QVector<R>>& mirrors) {
  const R& ring = space.ring();
  auto out = identity_matrix(ring, space.rank());
  for (const auto& w : mirrors) out = multiply(ring, out, reflection_matrix(space, w));
  return out;
}

namespace detail {

template <ScalarDomain D>
typename D::Element draw(const D& dom, DeterministicSampler& s) {
  return dom.sample(s);
}

template <ScalarDomain D>
AlgebraElement<D> draw(const EtaleAlgebra<D>& alg, DeterministicSampler& s) {
  return sample_residue_level(alg, s);
}

/// x minus its components along an orthogonal family of unit-valued vectors.
template <Ring R>
QVector<R> project_away(const QuadraticSpace<R>& space, const std::vector<QVector<R>>& fixed, QVector<R> x) {
  const R& ring = space.ring();
  for (const auto& f : fixed) {
    const auto c = space.bilinear(x, f) * ring.inverse(space.evaluate(f));
    if (!ring.is_zero(c)) x = subtract(x, scale(c, f));
  }
  return x;
}

}  // namespace detail

/// Cartan–Dieudonné by induction on a growing orthogonal family F fixed by
/// the remaining isometry B. Each step takes a unit-valued e orthogonal to
/// F and makes B fix e with one mirror (Be - e, or e when Be = -e) or two
/// (Be + e, then e). Candidates for e are the projected standard basis
/// vectors and their pairwise sums, then random vectors; with randomize
/// set only random vectors are used.
template <Ring R>
ReflectionDecomposition<R> cartan_dieudonne(const QuadraticSpace<R>& space, const Matrix<typename R::Element>& a,
                                            DeterministicSampler& sampler, bool randomize = false) {
  if (!is_isometry(space, a)) fail(ErrorCode::NotAnIsometry, "A^T G A differs from G");
  const R& ring = space.ring();
  const std::size_t m = space.rank();

  std::vector<QVector<R>> candidates;
  if (!randomize) {
    for (std::size_t i = 0; i < m; ++i) candidates.push_back(space.basis_vector(i));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) candidates.push_back(add(space.basis_vector(i), space.basis_vector(j)));
  }

  ReflectionDecomposition<R> out;
  std::vector<QVector<R>> fixed;
  auto b = a;
  RetryCounter retries(sampler.max_retries());
  int failures = 0;
  std::size_t next_candidate = 0;
  while (fixed.size() < m) {
    QVector<R> x;
    const bool from_list = next_candidate < candidates.size();
    if (from_list) {
      x = candidates[next_candidate++];
    } else {
      for (std::size_t i = 0; i < m; ++i) x.push_back(detail::draw(ring, sampler));
    }
    const auto e = detail::project_away(space, fixed, std::move(x));
    const auto qe = space.evaluate(e);
    bool placed = false;
    if (ring.is_unit(qe)) {
      const auto be = apply(ring, b, e);
      const bool fixes_e = be == e;
      std::vector<QVector<R>> step;
      if (!fixes_e) {
        const auto minus = subtract(be, e);
        const auto plus = add(be, e);
        if (be == scale(-ring.one(), e)) {
          step.push_back(e);
        } else if (ring.is_unit(space.evaluate(minus))) {
          step.push_back(minus);
        } else if (ring.is_unit(space.evaluate(plus))) {
          step.push_back(plus);
          step.push_back(e);
        }
      }
      if (fixes_e || !step.empty()) {
        // B = tau_{step[0]} ... tau_{step[k]} B' with B' e = e
        for (const auto& w : step) {
          b = multiply(ring, reflection_matrix(space, w), b);
          out.mirrors.push_back(w);
        }
        ensure(apply(ring, b, e) == e, "Cartan-Dieudonne step left e moved");
        fixed.push_back(e);
        placed = true;
        next_candidate = 0;
      }
    }
    if (!placed && !from_list) retries.reject(failures, "Cartan-Dieudonne vector choice");
  }
  ensure(b == identity_matrix(ring, m), "Cartan-Dieudonne remainder is not the identity");
  ensure(compose_reflections(space, out.mirrors) == a, "mirrors do not recompose A");
  return out;
}

/// prod q(w_i): a representative of the spinor norm's square class.
template <Ring R>
typename R::Element spinor_norm(const QuadraticSpace<R>& space, const ReflectionDecomposition<R>& d) {
  auto acc = space.ring().one();
  for (const auto& w : d.mirrors) acc = acc * space.evaluate(w);
  return acc;
}

template <Ring R>
typename R::Element spinor_norm(const QuadraticSpace<R>& space, const Matrix<typename R::Element>& a,
                                DeterministicSampler& sampler, bool randomize = false) {
  return spinor_norm(space, cartan_dieudonne(space, a, sampler, randomize));
}

/// Whether the units x and y differ by a square factor.
template <ScalarDomain D>
bool same_square_class(const D& dom, const typename D::Element& x, const typename D::Element& y) {
  if (!dom.is_unit(x) || !dom.is_unit(y)) fail(ErrorCode::NotAUnit, "square classes are compared on units");
  return dom.is_square(x * dom.inverse(y));
}

template <ScalarDomain D>
struct TransferResult {
  ReflectionDecomposition<EtaleAlgebra<D>> decomposition;
  /// Concatenated witnesses, one per mirror value; input is SN_E(g).
  Witness<D> witness;
  bool ok = false;
};

/// For g in SO(q_E): decomposes g, witnesses N(q_E(w_i)) for every mirror
/// and concatenates. The result exhibits N(SN_E(g)) as an even-length
/// product of values of q over the base.
template <ScalarDomain D>
TransferResult<D> transfer_check(const QuadraticSpace<D>& space, const EtaleAlgebra<D>& alg,
                                 const Matrix<AlgebraElement<D>>& g, DeterministicSampler& sampler) {
  const auto space_e = base_change(space, alg);
  if (!is_isometry(space_e, g)) fail(ErrorCode::NotAnIsometry, "g^T G g differs from G");
  if (!(determinant(alg, g) == alg.one())) fail(ErrorCode::NotAnIsometry, "det g is not 1");

  TransferResult<D> out{cartan_dieudonne(space_e, g, sampler), {{}, alg.one(), alg.base().one(), 0, sampler.seed(), 0},
                        false};
  auto& w = out.witness;
  w.input = spinor_norm(space_e, out.decomposition);
  w.norm = norm(alg, w.input);
  for (const auto& mirror : out.decomposition.mirrors) {
    auto sub = norm_principle_witness(space, alg, mirror, sampler);
    w.retries += sub.retries;
    for (auto& f : sub.factors) w.factors.push_back(std::move(f));
  }
  w.parity = static_cast<int>(w.factors.size() % 2);
  out.ok = w.parity == 0 && factor_product(alg.base(), w.factors) == w.norm;
  return out;
}

}  // namespace qnorm
