#pragma once

#include <concepts>
#include <string>
#include <string_view>

#include "qnorm/sampler.hpp"

namespace qnorm {

/// A commutative ring with exact arithmetic. Elements carry enough context
/// to add and multiply on their own; the domain object supplies constants
/// and the unit predicate.
template <class D>
concept Ring = std::copy_constructible<D> &&
    requires(const D& d, const typename D::Element& x, long long n) {
      typename D::Element;
      { D::is_field } -> std::convertible_to<bool>;
      { D::is_local } -> std::convertible_to<bool>;
      { d.zero() } -> std::same_as<typename D::Element>;
      { d.one() } -> std::same_as<typename D::Element>;
      { d.from_int(n) } -> std::same_as<typename D::Element>;
      { d.is_zero(x) } -> std::same_as<bool>;
      { d.is_unit(x) } -> std::same_as<bool>;
      { d.inverse(x) } -> std::same_as<typename D::Element>;
      { x + x } -> std::same_as<typename D::Element>;
      { x - x } -> std::same_as<typename D::Element>;
      { x * x } -> std::same_as<typename D::Element>;
      { -x } -> std::same_as<typename D::Element>;
      { x == x } -> std::same_as<bool>;
    };

/// A base ring a quadratic space and an étale algebra can be built over:
/// rationals, odd prime fields, and the local ring of rational functions
/// regular at the origin.
template <class D>
concept ScalarDomain = Ring<D> &&
    requires(const D& d, const typename D::Element& x, DeterministicSampler& s,
             std::string_view text) {
      { d.is_square(x) } -> std::same_as<bool>;
      { d.sample(s) } -> std::same_as<typename D::Element>;
      { d.format(x) } -> std::same_as<std::string>;
      { d.parse(text) } -> std::same_as<typename D::Element>;
      { d.tag() } -> std::same_as<std::string>;
    };

}  // namespace qnorm
