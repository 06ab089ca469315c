// Hyperfield - the piecewise C1 transition family H_a and its derivative
//
// For a parameter a > 0 (a real number, or the infinitesimal e for the ideal
// model) the line splits into (-inf, 0] u (0, 2a] u (2a, +inf) and
//
//   H_a(x) = f_a(x) = 1/(x - a)                               on (-inf, 0]
//          = g_a(x) = -x^3/(2a^4) + 7x^2/(4a^3) - x/a^2 - 1/a on (0, 2a]
//          = h_a(x) = 0                                       on (2a, +inf)
//
// with branchwise derivative
//
//   H'_a(x) = -1/(x - a)^2, -3x^2/(2a^4) + 7x/(2a^3) - 1/a^2, 0.
//
// The one-sided limits of H_a and H'_a match at both junctions, |H_a| is
// globally bounded by 2/a (the interior extremum sits at x = a/3 with value
// -125/(108a)), and f_a's pole at x = a lies outside its branch domain.
// The transformation function is f_M = H_a(lambda)/c.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hyperfield/scalar.hpp"

namespace hf {

enum class Branch : std::uint8_t { F, G, H };

std::string to_string(Branch branch);

template <ScalarField S>
struct TransitionSpec {
  S a;

  explicit TransitionSpec(S a_value) : a(std::move(a_value)) {
    if (!(scalar_traits<S>::from_int(0) < a))
      throw std::invalid_argument("TransitionSpec: a must be > 0");
  }
};

// The ideal-model instance a = e.
inline TransitionSpec<LCNumber> ideal_transition(TruncationPolicy policy = TruncationPolicy()) {
  return TransitionSpec<LCNumber>(LCNumber::epsilon(Rational(1), policy));
}

// Exact order comparison against 0 and 2a; the three branches partition the
// scalar line exhaustively and exclusively.
template <ScalarField S>
Branch select_branch(const TransitionSpec<S>& spec, const S& x) {
  const S zero = scalar_traits<S>::from_int(0);
  if (!(zero < x)) return Branch::F;
  if (!(scalar_traits<S>::from_int(2) * spec.a < x)) return Branch::G;
  return Branch::H;
}

template <ScalarField S>
S h_eval(const TransitionSpec<S>& spec, const S& x) {
  const auto k = [](long long v) { return scalar_traits<S>::from_int(v); };
  const S& a = spec.a;
  switch (select_branch(spec, x)) {
    case Branch::F:
      return k(1) / (x - a);
    case Branch::G: {
      const S a2 = a * a;
      const S a3 = a2 * a;
      const S a4 = a3 * a;
      return -(x * x * x) / (k(2) * a4) + k(7) * (x * x) / (k(4) * a3) - x / a2 - k(1) / a;
    }
    case Branch::H:
      return k(0);
  }
  throw std::logic_error("unreachable");
}

template <ScalarField S>
S h_derivative(const TransitionSpec<S>& spec, const S& x) {
  const auto k = [](long long v) { return scalar_traits<S>::from_int(v); };
  const S& a = spec.a;
  switch (select_branch(spec, x)) {
    case Branch::F: {
      const S d = x - a;
      return -(k(1) / (d * d));
    }
    case Branch::G: {
      const S a2 = a * a;
      const S a3 = a2 * a;
      const S a4 = a3 * a;
      return -(k(3) * (x * x)) / (k(2) * a4) + k(7) * x / (k(2) * a3) - k(1) / a2;
    }
    case Branch::H:
      return k(0);
  }
  throw std::logic_error("unreachable");
}

// f_M with c*f_M = H_a evaluated at lambda.
template <ScalarField S>
S f_m_eval(const TransitionSpec<S>& spec, const S& lambda, const S& c) {
  return h_eval(spec, lambda) / c;
}

// One-sided limits of H_a and H'_a at the junctions {0, 2a}. The branch
// formulas are continuous on their closures, so each one-sided limit is the
// closed-form branch evaluated at the junction point.
struct JunctionReport {
  Rational a;
  Rational value_left_at_zero, value_right_at_zero;
  Rational value_left_at_2a, value_right_at_2a;
  Rational deriv_left_at_zero, deriv_right_at_zero;
  Rational deriv_left_at_2a, deriv_right_at_2a;
  bool pass = false;  // exact equality of every pair
};

JunctionReport junction_report(const TransitionSpec<Rational>& spec);

struct JunctionReportF {
  double a;
  double value_left_at_zero, value_right_at_zero;
  double value_left_at_2a, value_right_at_2a;
  double deriv_left_at_zero, deriv_right_at_zero;
  double deriv_left_at_2a, deriv_right_at_2a;
  double rel_tol;
  bool pass = false;
};

// Float mode: pass iff |L - R| <= rel_tol * scale with scale the natural
// branch magnitude near the junctions, max(1, |L|, |R|, 1/a, 1/a^2).
JunctionReportF junction_report_float(const TransitionSpec<double>& spec, double rel_tol = 1e-12);

struct SupBoundReport {
  double a;
  long samples;
  double sample_lo, sample_hi;
  double max_sampled;        // max |H_a| over the grid
  double argmax_sampled;
  double extremum_arg;       // interior critical point of g_a, x = a/3
  double extremum_value;     // |g_a(a/3)| = 125/(108 a)
  double bound;              // 2/a
  bool pass = false;
};

// Dense |H_a| scan plus the analytic interior extremum against the 2/a bound.
// Default range [-8a, 4a]: f_a is monotone on (-inf, 0] with sup 1/a at 0, so
// the finite left tail loses nothing.
SupBoundReport sup_bound_check(const TransitionSpec<double>& spec, long samples);
SupBoundReport sup_bound_check(const TransitionSpec<double>& spec, long samples, double lo, double hi);

}  // namespace hf
