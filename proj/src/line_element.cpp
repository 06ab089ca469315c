#include "hyperfield/line_element.hpp"

#include <nlohmann/json.hpp>

#include <utility>

namespace hf {

namespace {

ExprPtr lit0() { return Expr::lit(Rational(0)); }
ExprPtr lit1() { return Expr::lit(Rational(1)); }
ExprPtr sym(ExprOp op) { return Expr::symbol(op); }

bool is_zero_literal(const ExprPtr& e) {
  return e && e->op == ExprOp::Literal && e->value.is_zero();
}

// -R^2 and -R^2 sin^2(theta): the angular block every element here shares.
ExprPtr angular_theta() { return Expr::neg(Expr::pow(sym(ExprOp::VarR), Rational(2))); }
ExprPtr angular_phi() {
  return Expr::neg(Expr::mul(Expr::pow(sym(ExprOp::VarR), Rational(2)),
                             Expr::pow(Expr::sin(sym(ExprOp::VarTheta)), Rational(2))));
}

ExprPtr shifted_lambda() { return Expr::sub(sym(ExprOp::VarLambda), sym(ExprOp::ConstEps)); }

// Rewrite every fm(x) node according to the branch H_eps takes on the
// regime's lambda range: 1/(c (x - eps)) where lambda <= 0, the zero
// function where lambda is a positive standard distance above the monad
// of 0 (2*eps < lambda).
ExprPtr resolve_fm(const ExprPtr& e, Regime regime) {
  if (!e) return e;
  if (e->op == ExprOp::Fm) {
    ExprPtr arg = resolve_fm(e->a, regime);
    if (regime == Regime::Exterior) return lit0();
    return Expr::div(lit1(), Expr::mul(sym(ExprOp::ConstC),
                                       Expr::sub(std::move(arg), sym(ExprOp::ConstEps))));
  }
  ExprPtr a = resolve_fm(e->a, regime);
  ExprPtr b = resolve_fm(e->b, regime);
  if (a == e->a && b == e->b) return e;
  return std::make_shared<const Expr>(e->op, e->value, std::move(a), std::move(b));
}

}  // namespace

std::string to_string(Chart chart) { return chart == Chart::T ? "t" : "u"; }

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Interior: return "interior";
    case Regime::Horizon: return "horizon";
    case Regime::Exterior: return "exterior";
  }
  throw std::logic_error("unreachable");
}

PhysicalConstants::PhysicalConstants(Rational G_, Rational M_, Rational c_)
    : G(std::move(G_)), M(std::move(M_)), c(std::move(c_)) {
  if (!(G.sign() > 0 && M.sign() > 0 && c.sign() > 0))
    throw std::invalid_argument("PhysicalConstants: G, M, c must be positive");
}

PhysicalConstants PhysicalConstants::geometric(Rational mass) {
  return PhysicalConstants(Rational(1), std::move(mass), Rational(1));
}

PhysicalConstants PhysicalConstants::si(Rational mass) {
  return PhysicalConstants(Rational::parse("6.6743e-11"), std::move(mass), Rational(299792458));
}

Rational PhysicalConstants::schwarzschild_radius() const {
  return Rational(2) * G * M / (c * c);
}

Rational lambda_of_R(const PhysicalConstants& consts, const Rational& R) {
  if (!(R.sign() > 0)) throw std::invalid_argument("lambda_of_R: R must be > 0");
  return Rational(1) - Rational(2) * consts.G * consts.M / (R * consts.c * consts.c);
}

double lambda_of_R(const PhysicalConstants& consts, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("lambda_of_R: R must be > 0");
  return 1.0 - 2.0 * consts.G.to_double() * consts.M.to_double() /
                   (R * consts.c.to_double() * consts.c.to_double());
}

ExprPtr lambda_expr() {
  return Expr::sub(lit1(), Expr::div(Expr::mul(Expr::lit(Rational(2)),
                                               Expr::mul(sym(ExprOp::ConstG), sym(ExprOp::ConstM))),
                                     Expr::mul(sym(ExprOp::VarR),
                                               Expr::pow(sym(ExprOp::ConstC), Rational(2)))));
}

Regime regime_classify(const PhysicalConstants& consts, const Rational& R) {
  if (!(R.sign() > 0)) throw std::invalid_argument("regime_classify: R must be > 0");
  const Rational rs = consts.schwarzschild_radius();
  if (R < rs) return Regime::Interior;
  if (R == rs) return Regime::Horizon;
  return Regime::Exterior;
}

LineElement schwarzschild_element() {
  LineElement e;
  e.chart = Chart::T;
  e.tt = Expr::mul(sym(ExprOp::VarLambda), Expr::pow(sym(ExprOp::ConstC), Rational(2)));
  e.tr = lit0();
  e.rr = Expr::neg(Expr::div(lit1(), sym(ExprOp::VarLambda)));
  e.thth = angular_theta();
  e.phph = angular_phi();
  return e;
}

LineElement eddington_finkelstein_element() {
  LineElement e;
  e.chart = Chart::U;
  e.tt = Expr::mul(sym(ExprOp::VarLambda), Expr::pow(sym(ExprOp::ConstC), Rational(2)));
  e.tr = Expr::neg(Expr::mul(Expr::lit(Rational(2)), sym(ExprOp::ConstC)));
  e.rr = lit0();
  e.thth = angular_theta();
  e.phph = angular_phi();
  return e;
}

LineElement transform_u_substitution(const LineElement& elem) {
  if (elem.chart != Chart::T)
    throw std::invalid_argument("transform_u_substitution: expects a t-chart element");
  if (!is_zero_literal(elem.tr))
    throw std::invalid_argument(
        "transform_u_substitution: t-chart cross term must be the zero literal");

  // Shift lambda -> lambda - eps in the time-radial coefficients, then expand
  // dt = dU - f_M dR in  tt dt^2 + rr dR^2:
  //   tt dU^2 - 2 tt f_M dU dR + (tt f_M^2 + rr) dR^2.
  const ExprPtr tt_shifted = substitute_symbol(elem.tt, ExprOp::VarLambda, shifted_lambda());
  const ExprPtr rr_shifted = substitute_symbol(elem.rr, ExprOp::VarLambda, shifted_lambda());
  const ExprPtr fm = Expr::fm(sym(ExprOp::VarLambda));

  LineElement out;
  out.chart = Chart::U;
  out.tt = tt_shifted;
  out.tr = Expr::neg(Expr::mul(Expr::lit(Rational(2)), Expr::mul(tt_shifted, fm)));
  out.rr = Expr::add(Expr::mul(tt_shifted, Expr::pow(fm, Rational(2))), rr_shifted);
  out.thth = elem.thth;
  out.phph = elem.phph;
  return out;
}

LineElement standardize_element(const LineElement& elem, Regime regime) {
  if (elem.chart != Chart::U)
    throw std::invalid_argument("standardize_element: expects a U-chart element");

  LineElement out;
  out.chart = Chart::U;
  out.tt = Expr::st(resolve_fm(elem.tt, regime));
  out.tr = Expr::st(resolve_fm(elem.tr, regime));
  out.rr = Expr::st(resolve_fm(elem.rr, regime));
  out.thth = elem.thth;
  out.phph = elem.phph;
  return out;
}

EvalContext<Rational> exact_point(const PhysicalConstants& consts, const Rational& R,
                                  const Rational& sin_theta, TruncationPolicy policy) {
  EvalContext<Rational> ctx;
  ctx.R = R;
  ctx.sin_theta = sin_theta;
  ctx.lambda = lambda_of_R(consts, R);
  ctx.G = consts.G;
  ctx.M = consts.M;
  ctx.c = consts.c;
  ctx.exact_sin = true;
  ctx.policy = policy;
  return ctx;
}

EvalContext<LCNumber> ideal_point(const PhysicalConstants& consts, const Rational& R,
                                  const Rational& sin_theta, TruncationPolicy policy) {
  EvalContext<LCNumber> ctx;
  ctx.R = LCNumber::from_real(R, policy);
  ctx.sin_theta = LCNumber::from_real(sin_theta, policy);
  ctx.lambda = LCNumber::from_real(lambda_of_R(consts, R), policy);
  ctx.G = LCNumber::from_real(consts.G, policy);
  ctx.M = LCNumber::from_real(consts.M, policy);
  ctx.c = LCNumber::from_real(consts.c, policy);
  ctx.eps = LCNumber::epsilon(Rational(1), policy);
  ctx.has_eps = true;
  ctx.exact_sin = true;
  ctx.policy = policy;
  return ctx;
}

EvalContext<double> numeric_point(const PhysicalConstants& consts, double R, double theta) {
  EvalContext<double> ctx;
  ctx.R = R;
  ctx.theta = theta;
  ctx.lambda = lambda_of_R(consts, R);
  ctx.G = consts.G.to_double();
  ctx.M = consts.M.to_double();
  ctx.c = consts.c.to_double();
  ctx.exact_sin = false;
  return ctx;
}

StandardizationReport standardization_report(const PhysicalConstants& consts, const Rational& R,
                                             const Rational& dR_order, TruncationPolicy policy) {
  if (!(dR_order > Rational(0)))
    throw std::invalid_argument("standardization_report: dR order must be positive");

  StandardizationReport rep;
  rep.regime = regime_classify(consts, R);
  rep.lambda = lambda_of_R(consts, R);
  rep.dR_order = dR_order;

  const TransitionSpec<LCNumber> spec = ideal_transition(policy);
  const LCNumber lam = LCNumber::from_real(rep.lambda, policy);
  const LCNumber c = LCNumber::from_real(consts.c, policy);
  rep.fm_raw = f_m_eval(spec, lam, c);
  rep.st_fm = rep.fm_raw.standard_part();
  rep.fm_dR = rep.fm_raw * LCNumber::epsilon(dR_order, policy);
  rep.st_fm_dR = rep.fm_dR.standard_part();
  return rep;
}

InfinitesimalProductReport infinitesimal_product_check(const TransitionSpec<LCNumber>& spec,
                                                       const std::vector<LCNumber>& lambdas,
                                                       const Rational& dR_order,
                                                       const Rational& c) {
  if (!(dR_order > Rational(0)))
    throw std::invalid_argument("infinitesimal_product_check: dR order must be positive");

  InfinitesimalProductReport rep;
  rep.dR_order = dR_order;
  rep.all_infinitesimal = true;

  const TruncationPolicy policy = spec.a.policy();
  const LCNumber c_series = LCNumber::from_real(c, policy);
  const LCNumber dR = LCNumber::epsilon(dR_order, policy);
  for (const LCNumber& lam : lambdas) {
    const LCNumber prod = f_m_eval(spec, lam, c_series) * dR;
    InfinitesimalProductLine line;
    line.lambda = lam.to_string();
    line.leading_exponent = prod.leading_exponent();
    line.infinitesimal = prod.is_infinitesimal();
    rep.all_infinitesimal = rep.all_infinitesimal && line.infinitesimal;
    if (line.leading_exponent &&
        (!rep.worst_leading_exponent || *line.leading_exponent < *rep.worst_leading_exponent))
      rep.worst_leading_exponent = *line.leading_exponent;
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

std::string element_to_json(const LineElement& elem, const PhysicalConstants& consts) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["chart"] = to_string(elem.chart);
  j["constants"] = {{"G", consts.G.to_string()},
                    {"M", consts.M.to_string()},
                    {"c", consts.c.to_string()}};
  j["coefficients"] = {{"tt", to_prefix(elem.tt)},
                       {"tr", to_prefix(elem.tr)},
                       {"rr", to_prefix(elem.rr)},
                       {"thth", to_prefix(elem.thth)},
                       {"phph", to_prefix(elem.phph)}};
  return j.dump(2);
}

std::pair<LineElement, PhysicalConstants> element_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema_version").get<int>() != 1)
    throw std::invalid_argument("element_from_json: unsupported schema version");

  LineElement elem;
  const std::string chart = j.at("chart").get<std::string>();
  if (chart == "t") elem.chart = Chart::T;
  else if (chart == "u") elem.chart = Chart::U;
  else throw std::invalid_argument("element_from_json: unknown chart: " + chart);

  const auto& coeffs = j.at("coefficients");
  elem.tt = parse_prefix(coeffs.at("tt").get<std::string>());
  elem.tr = parse_prefix(coeffs.at("tr").get<std::string>());
  elem.rr = parse_prefix(coeffs.at("rr").get<std::string>());
  elem.thth = parse_prefix(coeffs.at("thth").get<std::string>());
  elem.phph = parse_prefix(coeffs.at("phph").get<std::string>());

  const auto& consts = j.at("constants");
  PhysicalConstants pc(Rational::parse(consts.at("G").get<std::string>()),
                       Rational::parse(consts.at("M").get<std::string>()),
                       Rational::parse(consts.at("c").get<std::string>()));
  return {std::move(elem), std::move(pc)};
}

}  // namespace hf
