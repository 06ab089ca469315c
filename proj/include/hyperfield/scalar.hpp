// Hyperfield - the scalar fields the transition and element algebra run over:
// exact rationals, doubles, and LC series over either.

#pragma once

#include <type_traits>

#include "hyperfield/lc_number.hpp"
#include "hyperfield/rational.hpp"

namespace hf {

template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_lc = false;
  static Rational from_int(long long v) { return Rational(v); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_lc = false;
  static double from_int(long long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& q) { return q.to_double(); }
};

template <typename C>
struct scalar_traits<LCSeries<C>> {
  static constexpr bool is_lc = true;
  using coeff_type = C;
  static LCSeries<C> from_int(long long v) {
    return LCSeries<C>::from_real(scalar_traits<C>::from_int(v));
  }
  static LCSeries<C> from_rational(const Rational& q) {
    return LCSeries<C>::from_real(scalar_traits<C>::from_rational(q));
  }
};

template <typename S>
concept ScalarField = requires(const S& x, const S& y) {
  { x + y } -> std::convertible_to<S>;
  { x - y } -> std::convertible_to<S>;
  { x* y } -> std::convertible_to<S>;
  { x / y } -> std::convertible_to<S>;
  { -x } -> std::convertible_to<S>;
  { x < y } -> std::convertible_to<bool>;
  { x == y } -> std::convertible_to<bool>;
  scalar_traits<S>::from_int(0);
};

}  // namespace hf
