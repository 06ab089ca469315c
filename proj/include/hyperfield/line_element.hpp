// Hyperfield - line elements and the dU = dt + f_M(R) dR substitution
//
// A LineElement is the quadratic differential form
//
//   dS^2 = tt (dT)^2 + tr dT dR + rr (dR)^2 + thth (dtheta)^2 + phph (dphi)^2
//
// with T the chart time coordinate (t or U) and the angular sector always
// -R^2 (dtheta^2 + sin^2(theta) dphi^2). The t-chart element carries tt =
// lambda c^2, tr = 0, rr = -1/lambda with lambda = 1 - 2GM/(R c^2); its rr
// coefficient degenerates at the Schwarzschild radius 2GM/c^2. Substituting
// lambda -> lambda - eps and dt = dU - f_M dR produces the U-chart element
// whose dR^2 coefficient is the b-term
//
//   (lambda - eps) c^2 f_M^2 - 1/(lambda - eps),
//
// identically zero wherever c f_M = 1/(lambda - eps), i.e. on the whole
// F branch lambda <= 0. Standardizing by regime recovers
// (lambda c^2, -2c, 0, ...) on the interior/horizon and the original t-chart
// coefficients on the exterior.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperfield/expression.hpp"

namespace hf {

enum class Chart : std::uint8_t { T, U };
enum class Regime : std::uint8_t { Interior, Horizon, Exterior };

std::string to_string(Chart chart);
std::string to_string(Regime regime);

struct PhysicalConstants {
  Rational G{1};
  Rational M{1};
  Rational c{1};

  PhysicalConstants() = default;
  PhysicalConstants(Rational G_, Rational M_, Rational c_);

  static PhysicalConstants geometric(Rational mass = Rational(1));
  static PhysicalConstants si(Rational mass);

  Rational schwarzschild_radius() const;  // 2GM/c^2
};

struct LineElement {
  Chart chart = Chart::T;
  ExprPtr tt, tr, rr, thth, phph;
};

// lambda = 1 - 2GM/(R c^2); R > 0 required.
Rational lambda_of_R(const PhysicalConstants& consts, const Rational& R);
double lambda_of_R(const PhysicalConstants& consts, double R);
ExprPtr lambda_expr();  // the same quantity as a tree over R, G, M, c

Regime regime_classify(const PhysicalConstants& consts, const Rational& R);

LineElement schwarzschild_element();
LineElement eddington_finkelstein_element();  // the U-chart reference (lambda c^2, -2c, 0, ...)

// t-chart element with zero cross term -> U-chart element via the
// lambda -> lambda - eps shift and completion of dt = dU - f_M dR.
LineElement transform_u_substitution(const LineElement& elem);

// Resolve f_M to the branch valid on the regime's lambda range
// (interior/horizon: 1/(c (lambda - eps)); exterior: 0) and wrap the T-R
// block coefficients in st. Angular expressions pass through untouched.
LineElement standardize_element(const LineElement& elem, Regime regime);

// b-term h(lambda) = (lambda - a) c^2 f_M(lambda)^2 - 1/(lambda - a).
template <ScalarField S>
S b_coefficient(const TransitionSpec<S>& spec, const S& lambda, const S& c) {
  const S shifted = lambda - spec.a;
  const S fm = f_m_eval(spec, lambda, c);
  return shifted * c * c * fm * fm - scalar_traits<S>::from_int(1) / shifted;
}

template <ScalarField S>
struct ElementValues {
  S tt, tr, rr, thth, phph;
};

template <ScalarField S>
ElementValues<S> eval_element(const LineElement& elem, const EvalContext<S>& ctx) {
  return {eval_expr(elem.tt, ctx), eval_expr(elem.tr, ctx), eval_expr(elem.rr, ctx),
          eval_expr(elem.thth, ctx), eval_expr(elem.phph, ctx)};
}

// Evaluation contexts with lambda bound from R. Exact contexts take the value
// of sin(theta) directly so angular coefficients stay rational.
EvalContext<Rational> exact_point(const PhysicalConstants& consts, const Rational& R,
                                  const Rational& sin_theta,
                                  TruncationPolicy policy = TruncationPolicy());
EvalContext<LCNumber> ideal_point(const PhysicalConstants& consts, const Rational& R,
                                  const Rational& sin_theta,
                                  TruncationPolicy policy = TruncationPolicy());
EvalContext<double> numeric_point(const PhysicalConstants& consts, double R, double theta);

// f_M(lambda(R)) in the ideal model: the raw series, its standard part when
// it exists, and the product with dR = e^dR_order (infinitesimal whenever
// dR_order > 1 by |H_e| <= 2/e).
struct StandardizationReport {
  Regime regime;
  Rational lambda;
  LCNumber fm_raw;
  std::optional<Rational> st_fm;  // nullopt: unlimited (horizon)
  LCNumber fm_dR;
  std::optional<Rational> st_fm_dR;
  Rational dR_order;
};

StandardizationReport standardization_report(const PhysicalConstants& consts, const Rational& R,
                                             const Rational& dR_order = Rational(3),
                                             TruncationPolicy policy = TruncationPolicy());

struct InfinitesimalProductLine {
  std::string lambda;
  std::optional<Rational> leading_exponent;  // nullopt for the zero product
  bool infinitesimal = false;
};

struct InfinitesimalProductReport {
  Rational dR_order;
  bool all_infinitesimal = false;
  std::optional<Rational> worst_leading_exponent;  // min over nonzero products
  std::vector<InfinitesimalProductLine> lines;
};

// Checks is_infinitesimal(f_M(lambda) * e^dR_order) over the given lambdas;
// with dR = e^3 the worst case has leading exponent 3 - 1 = 2 > 0.
InfinitesimalProductReport infinitesimal_product_check(const TransitionSpec<LCNumber>& spec,
                                                       const std::vector<LCNumber>& lambdas,
                                                       const Rational& dR_order, const Rational& c);

// Lossless JSON round-trip of an element plus its constants block.
std::string element_to_json(const LineElement& elem, const PhysicalConstants& consts);
std::pair<LineElement, PhysicalConstants> element_from_json(const std::string& text);

}  // namespace hf
