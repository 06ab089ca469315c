#include "hyperfield/transition.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfield/scan.hpp"

namespace hf {

namespace {

// Branch closed forms evaluated over their closures, for one-sided limits at
// the junction points (h_eval itself assigns each junction to one branch).
template <typename S>
struct BranchForms {
  S a, a2, a3, a4;

  explicit BranchForms(const S& a_) : a(a_), a2(a * a), a3(a2 * a), a4(a3 * a) {}

  S f(const S& x) const { return scalar_traits<S>::from_int(1) / (x - a); }
  S fp(const S& x) const {
    const S d = x - a;
    return -(scalar_traits<S>::from_int(1) / (d * d));
  }
  S g(const S& x) const {
    const auto k = [](long long v) { return scalar_traits<S>::from_int(v); };
    return -(x * x * x) / (k(2) * a4) + k(7) * (x * x) / (k(4) * a3) - x / a2 - k(1) / a;
  }
  S gp(const S& x) const {
    const auto k = [](long long v) { return scalar_traits<S>::from_int(v); };
    return -(k(3) * (x * x)) / (k(2) * a4) + k(7) * x / (k(2) * a3) - k(1) / a2;
  }
};

}  // namespace

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::F: return "f";
    case Branch::G: return "g";
    case Branch::H: return "h";
  }
  throw std::logic_error("unreachable");
}

JunctionReport junction_report(const TransitionSpec<Rational>& spec) {
  BranchForms<Rational> forms(spec.a);
  const Rational zero(0);
  const Rational two_a = Rational(2) * spec.a;

  JunctionReport r;
  r.a = spec.a;
  r.value_left_at_zero = forms.f(zero);
  r.value_right_at_zero = forms.g(zero);
  r.value_left_at_2a = forms.g(two_a);
  r.value_right_at_2a = Rational(0);
  r.deriv_left_at_zero = forms.fp(zero);
  r.deriv_right_at_zero = forms.gp(zero);
  r.deriv_left_at_2a = forms.gp(two_a);
  r.deriv_right_at_2a = Rational(0);
  r.pass = r.value_left_at_zero == r.value_right_at_zero &&
           r.value_left_at_2a == r.value_right_at_2a &&
           r.deriv_left_at_zero == r.deriv_right_at_zero &&
           r.deriv_left_at_2a == r.deriv_right_at_2a;
  return r;
}

JunctionReportF junction_report_float(const TransitionSpec<double>& spec, double rel_tol) {
  BranchForms<double> forms(spec.a);
  const double two_a = 2.0 * spec.a;

  JunctionReportF r;
  r.a = spec.a;
  r.rel_tol = rel_tol;
  r.value_left_at_zero = forms.f(0.0);
  r.value_right_at_zero = forms.g(0.0);
  r.value_left_at_2a = forms.g(two_a);
  r.value_right_at_2a = 0.0;
  r.deriv_left_at_zero = forms.fp(0.0);
  r.deriv_right_at_zero = forms.gp(0.0);
  r.deriv_left_at_2a = forms.gp(two_a);
  r.deriv_right_at_2a = 0.0;

  // The g-branch evaluation sums terms of size ~1/a and ~1/a^2, so the
  // cancellation error scales with those magnitudes, not with the (possibly
  // zero) junction value itself.
  const auto close = [&](double lhs, double rhs) {
    const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs), 1.0 / spec.a,
                                   1.0 / (spec.a * spec.a)});
    return std::fabs(lhs - rhs) <= rel_tol * scale;
  };
  r.pass = close(r.value_left_at_zero, r.value_right_at_zero) &&
           close(r.value_left_at_2a, r.value_right_at_2a) &&
           close(r.deriv_left_at_zero, r.deriv_right_at_zero) &&
           close(r.deriv_left_at_2a, r.deriv_right_at_2a);
  return r;
}

SupBoundReport sup_bound_check(const TransitionSpec<double>& spec, long samples) {
  return sup_bound_check(spec, samples, -8.0 * spec.a, 4.0 * spec.a);
}

SupBoundReport sup_bound_check(const TransitionSpec<double>& spec, long samples, double lo,
                               double hi) {
  if (samples < 2) throw std::invalid_argument("sup_bound_check: need at least 2 samples");
  if (!(lo < hi)) throw std::invalid_argument("sup_bound_check: empty sample range");

  const scan::MaxAbsResult scanned = scan::max_abs_scan(spec, lo, hi, samples);

  SupBoundReport r;
  r.a = spec.a;
  r.samples = samples;
  r.sample_lo = lo;
  r.sample_hi = hi;
  r.max_sampled = scanned.value;
  r.argmax_sampled = scanned.arg;
  r.extremum_arg = spec.a / 3.0;
  r.extremum_value = 125.0 / (108.0 * spec.a);
  r.bound = 2.0 / spec.a;
  r.pass = r.max_sampled <= r.bound && r.extremum_value <= r.bound;
  return r;
}

}  // namespace hf
