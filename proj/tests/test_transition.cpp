#include "doctest.h"

#include "hyperfield/transition.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using hf::Branch;
using hf::LCNumber;
using hf::Rational;
using hf::TransitionSpec;

namespace {

// Independent Horner forms of the middle branch and its derivative:
//   g_a(x)  = (((-2x + 7a)x - 4a^2)x - 4a^3) / (4a^4)
//   g_a'(x) = ((-3x + 7a)x - 2a^2) / (2a^4)
// These expand to the production formulas but share no code with them.
Rational g_horner(const Rational& a, const Rational& x) {
  const Rational num = ((Rational(-2) * x + Rational(7) * a) * x - Rational(4) * a * a) * x -
                       Rational(4) * a * a * a;
  return num / (Rational(4) * a.pow_int(4));
}

Rational gp_horner(const Rational& a, const Rational& x) {
  const Rational num = (Rational(-3) * x + Rational(7) * a) * x - Rational(2) * a * a;
  return num / (Rational(2) * a.pow_int(4));
}

double g_horner_d(double a, double x) {
  return (((-2 * x + 7 * a) * x - 4 * a * a) * x - 4 * a * a * a) / (4 * a * a * a * a);
}

double gp_horner_d(double a, double x) {
  return ((-3 * x + 7 * a) * x - 2 * a * a) / (2 * a * a * a * a);
}

}  // namespace

TEST_CASE("transition parameter must be positive") {
  CHECK_THROWS_AS(TransitionSpec<Rational>(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(TransitionSpec<Rational>(Rational(-1)), std::invalid_argument);
  CHECK_THROWS_AS(TransitionSpec<double>(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TransitionSpec<LCNumber>(-LCNumber::epsilon()), std::invalid_argument);
  CHECK_NOTHROW(TransitionSpec<LCNumber>(LCNumber::epsilon()));
  CHECK(hf::to_string(Branch::F) == "f");
  CHECK(hf::to_string(Branch::G) == "g");
  CHECK(hf::to_string(Branch::H) == "h");
}

TEST_CASE("branch selection partitions the line") {
  TransitionSpec<Rational> spec(Rational(3, 2));
  CHECK(select_branch(spec, Rational(-5)) == Branch::F);
  CHECK(select_branch(spec, Rational(0)) == Branch::F);
  CHECK(select_branch(spec, Rational(1, 1000)) == Branch::G);
  CHECK(select_branch(spec, Rational(3)) == Branch::G);  // x = 2a belongs to g
  CHECK(select_branch(spec, Rational(301, 100)) == Branch::H);

  // Exhaustive and exclusive over random rationals.
  std::mt19937_64 g(7);
  std::uniform_int_distribution<int> num(-400, 400), den(1, 40);
  for (int i = 0; i < 500; ++i) {
    const Rational x(num(g), den(g));
    const Branch b = select_branch(spec, x);
    const bool in_f = x <= Rational(0);
    const bool in_g = Rational(0) < x && x <= Rational(2) * spec.a;
    const bool in_h = Rational(2) * spec.a < x;
    CHECK(in_f + in_g + in_h == 1);
    CHECK(b == (in_f ? Branch::F : in_g ? Branch::G : Branch::H));
  }
}

TEST_CASE("branch selection distinguishes monad-sized arguments") {
  const auto ideal = hf::ideal_transition();
  CHECK(select_branch(ideal, LCNumber()) == Branch::F);
  CHECK(select_branch(ideal, LCNumber::from_real(Rational(-5))) == Branch::F);
  CHECK(select_branch(ideal, LCNumber::epsilon()) == Branch::G);
  CHECK(select_branch(ideal, LCNumber::monomial(Rational(2), Rational(1))) == Branch::G);
  CHECK(select_branch(ideal, LCNumber::monomial(Rational(3), Rational(1))) == Branch::H);
  CHECK(select_branch(ideal, LCNumber::from_real(Rational(1))) == Branch::H);
}

TEST_CASE("evaluation matches the worked examples") {
  TransitionSpec<Rational> unit(Rational(1));
  CHECK(h_eval(unit, Rational(-1)) == Rational(-1, 2));
  CHECK(h_eval(unit, Rational(2)) == Rational(0));
  CHECK(h_eval(unit, Rational(5)) == Rational(0));
  CHECK(h_derivative(unit, Rational(0)) == Rational(-1));
  CHECK(h_derivative(unit, Rational(2)) == Rational(0));
  CHECK(h_derivative(unit, Rational(-9)) == Rational(-1, 100));

  const auto ideal = hf::ideal_transition();
  CHECK(h_eval(ideal, LCNumber()) == LCNumber::monomial(Rational(-1), Rational(-1)));
}

TEST_CASE("middle branch agrees with an independent Horner form") {
  std::mt19937_64 g(11);
  std::uniform_int_distribution<int> anum(1, 50), aden(1, 10), steps(1, 99);
  for (int i = 0; i < 200; ++i) {
    const Rational a(anum(g), aden(g));
    TransitionSpec<Rational> spec(a);
    const Rational x = Rational(2) * a * Rational(steps(g), 100);  // inside (0, 2a]
    CHECK(h_eval(spec, x) == g_horner(a, x));
    CHECK(h_derivative(spec, x) == gp_horner(a, x));
  }
}

TEST_CASE("standard part of the ideal transition recovers 1/x on negatives") {
  const auto ideal = hf::ideal_transition();
  std::mt19937_64 g(13);
  std::uniform_int_distribution<int> num(1, 200), den(1, 50);
  for (int i = 0; i < 50; ++i) {
    const Rational x(-num(g), den(g));
    const LCNumber value = h_eval(ideal, LCNumber::from_real(x));
    CHECK(value.standard_part() == Rational(1) / x);
  }
}

TEST_CASE("junction report certifies one-sided limits exactly") {
  const hf::JunctionReport r1 = junction_report(TransitionSpec<Rational>(Rational(1)));
  CHECK(r1.pass);
  CHECK(r1.value_left_at_zero == Rational(-1));
  CHECK(r1.value_right_at_zero == Rational(-1));
  CHECK(r1.deriv_left_at_zero == Rational(-1));
  CHECK(r1.value_left_at_2a == Rational(0));
  CHECK(r1.deriv_left_at_2a == Rational(0));

  const hf::JunctionReport r2 = junction_report(TransitionSpec<Rational>(Rational(2)));
  CHECK(r2.pass);
  CHECK(r2.value_left_at_zero == Rational(-1, 2));
  CHECK(r2.deriv_left_at_zero == Rational(-1, 4));

  // Against the independent Horner oracle for random a: the right limits at 0
  // are g(0), g'(0); the left limits at 2a are g(2a), g'(2a).
  std::mt19937_64 g(17);
  std::uniform_int_distribution<int> den(1, 100);
  for (int i = 0; i < 100; ++i) {
    const int d = den(g);
    std::uniform_int_distribution<int> num(1, 10 * d);
    const Rational a(num(g), d);
    const hf::JunctionReport r = junction_report(TransitionSpec<Rational>(a));
    CHECK(r.pass);
    CHECK(r.value_right_at_zero == g_horner(a, Rational(0)));
    CHECK(r.deriv_right_at_zero == gp_horner(a, Rational(0)));
    CHECK(r.value_left_at_2a == g_horner(a, Rational(2) * a));
    CHECK(r.deriv_left_at_2a == gp_horner(a, Rational(2) * a));
    CHECK(r.value_left_at_zero == Rational(-1) / a);
    CHECK(r.deriv_left_at_zero == Rational(-1) / (a * a));
    CHECK(r.value_right_at_2a == Rational(0));
    CHECK(r.deriv_right_at_2a == Rational(0));
  }
}

TEST_CASE("float junction report passes at arbitrary scales") {
  for (double a : {1.0, 2.0, 0.003, 750.0, 1.0 / 3.0}) {
    const hf::JunctionReportF r = junction_report_float(TransitionSpec<double>(a));
    CHECK(r.pass);
    CHECK(r.value_left_at_zero == doctest::Approx(-1.0 / a));
    CHECK(r.deriv_left_at_zero == doctest::Approx(-1.0 / (a * a)));
  }
}

TEST_CASE("finite differences confirm C1 smoothness") {
  const double a = 0.8;
  TransitionSpec<double> spec(a);
  const double delta = 1e-5;

  // Interior points: the central difference approximates the branch
  // derivative to second order.
  for (double x : {-3.0, -0.4, 0.2 * a, a / 3, 1.1 * a, 1.9 * a, 2.5 * a, 5.0}) {
    const double cd = (h_eval(spec, x + delta) - h_eval(spec, x - delta)) / (2 * delta);
    const double hp = h_derivative(spec, x);
    CHECK(std::abs(cd - hp) <= 1e-8 * std::max(1.0, std::abs(hp)));
  }

  // Junctions: one-sided differences converge first-order to the matching
  // one-sided derivatives; halving the step roughly halves the error.
  auto one_sided = [&](double x0, double step) {
    return (h_eval(spec, x0 + step) - h_eval(spec, x0)) / step;
  };
  for (double x0 : {0.0, 2 * a}) {
    for (double dir : {1.0, -1.0}) {
      const double target = h_derivative(spec, x0 + dir * 1e-12);
      const double err1 = std::abs(one_sided(x0, dir * delta) - target);
      const double err2 = std::abs(one_sided(x0, dir * delta / 2) - target);
      CHECK(err1 <= 1e-3);
      // The absolute floor covers the flat side of 2a, where the curvature
      // is zero and the quotient amplifies float noise instead of shrinking.
      CHECK(err2 <= 0.75 * err1 + 1e-9);
    }
  }
}

TEST_CASE("sup bound report finds the interior extremum") {
  TransitionSpec<double> unit(1.0);
  const hf::SupBoundReport r = sup_bound_check(unit, 100001);
  CHECK(r.pass);
  CHECK(r.bound == doctest::Approx(2.0));
  CHECK(r.extremum_arg == doctest::Approx(1.0 / 3));
  CHECK(r.extremum_value == doctest::Approx(125.0 / 108));
  CHECK(r.max_sampled <= r.bound);
  CHECK(r.max_sampled == doctest::Approx(125.0 / 108).epsilon(1e-4));

  // Independent oracle: bisect g' on (0, a) -- it runs from -1/a^2 at 0 to
  // +1/a^2 at a -- and compare |g| at the root against the report.
  for (double a : {1.0, 2.0, 0.35}) {
    double lo = 0.0, hi = a;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (gp_horner_d(a, mid) < 0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    CHECK(root == doctest::Approx(a / 3).epsilon(1e-12));
    const double extremum = std::abs(g_horner_d(a, root));
    CHECK(extremum == doctest::Approx(125.0 / (108 * a)).epsilon(1e-12));
    const hf::SupBoundReport rr = sup_bound_check(TransitionSpec<double>(a), 20001);
    CHECK(rr.pass);
    CHECK(rr.extremum_value == doctest::Approx(extremum).epsilon(1e-12));
    CHECK(rr.max_sampled <= 2.0 / a);
  }

  // The worked CLI example: a = 2 has sup ~ 0.5787.
  const hf::SupBoundReport r2 = sup_bound_check(TransitionSpec<double>(2.0), 100001);
  CHECK(r2.max_sampled == doctest::Approx(0.5787).epsilon(1e-3));
}

TEST_CASE("custom scan ranges are honored") {
  TransitionSpec<double> spec(1.0);
  const hf::SupBoundReport r = sup_bound_check(spec, 5001, -2.0, 3.0);
  CHECK(r.sample_lo == -2.0);
  CHECK(r.sample_hi == 3.0);
  CHECK(r.samples == 5001);
  CHECK(r.pass);
}

TEST_CASE("f_m scales the transition by 1/c") {
  TransitionSpec<Rational> unit(Rational(1));
  CHECK(f_m_eval(unit, Rational(-1), Rational(2)) == Rational(-1, 4));

  const auto ideal = hf::ideal_transition();
  const LCNumber fm =
      f_m_eval(ideal, LCNumber::from_real(Rational(-1)), LCNumber::from_real(Rational(1)));
  CHECK(fm == LCNumber::parse("-1*e^(0) + 1*e^(1) + -1*e^(2) + 1*e^(3) + -1*e^(4)"));
}
