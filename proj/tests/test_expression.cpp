#include "doctest.h"

#include "hyperfield/expression.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using hf::EvalContext;
using hf::Expr;
using hf::ExprOp;
using hf::ExprPtr;
using hf::LCNumber;
using hf::Rational;

namespace {

ExprPtr lambda_sym() { return Expr::symbol(ExprOp::VarLambda); }
ExprPtr c_sym() { return Expr::symbol(ExprOp::ConstC); }

EvalContext<Rational> rational_ctx(Rational lambda) {
  EvalContext<Rational> ctx;
  ctx.lambda = std::move(lambda);
  ctx.G = Rational(1);
  ctx.M = Rational(1);
  ctx.c = Rational(1);
  ctx.R = Rational(4);
  ctx.sin_theta = Rational(1);
  return ctx;
}

}  // namespace

TEST_CASE("factories build the documented shapes") {
  const ExprPtr e = Expr::mul(lambda_sym(), Expr::pow(c_sym(), Rational(2)));
  CHECK(e->op == ExprOp::Mul);
  CHECK(hf::to_prefix(e) == "(* lambda (pow c 2))");
  CHECK(hf::to_prefix(Expr::lit(Rational(-1, 2))) == "-1/2");
  CHECK(hf::to_prefix(Expr::neg(Expr::div(Expr::lit(Rational(1)), lambda_sym()))) ==
        "(neg (/ 1 lambda))");
  CHECK(hf::to_prefix(Expr::st(Expr::fm(lambda_sym()))) == "(st (fm lambda))");
  CHECK(hf::to_prefix(Expr::sin(Expr::symbol(ExprOp::VarTheta))) == "(sin theta)");
  CHECK_THROWS_AS(Expr::symbol(ExprOp::Add), std::invalid_argument);
  CHECK_THROWS_AS(Expr::mul(nullptr, lambda_sym()), std::invalid_argument);
}

TEST_CASE("structural equality and op search") {
  const ExprPtr e1 = Expr::mul(lambda_sym(), Expr::pow(c_sym(), Rational(2)));
  const ExprPtr e2 = Expr::mul(lambda_sym(), Expr::pow(c_sym(), Rational(2)));
  const ExprPtr e3 = Expr::mul(lambda_sym(), Expr::pow(c_sym(), Rational(3)));
  CHECK(structural_equal(e1, e2));
  CHECK_FALSE(structural_equal(e1, e3));
  CHECK_FALSE(structural_equal(e1, lambda_sym()));
  CHECK(contains_op(e1, ExprOp::VarLambda));
  CHECK(contains_op(e1, ExprOp::Pow));
  CHECK_FALSE(contains_op(e1, ExprOp::Fm));
}

TEST_CASE("symbol substitution rewrites and preserves sharing") {
  const ExprPtr body = Expr::mul(lambda_sym(), Expr::pow(c_sym(), Rational(2)));
  const ExprPtr shift = Expr::sub(lambda_sym(), Expr::symbol(ExprOp::ConstEps));
  const ExprPtr shifted = substitute_symbol(body, ExprOp::VarLambda, shift);
  CHECK(hf::to_prefix(shifted) == "(* (- lambda eps) (pow c 2))");

  // Untouched trees come back as the same pointer, not a copy.
  const ExprPtr unchanged = substitute_symbol(body, ExprOp::VarR, shift);
  CHECK(unchanged.get() == body.get());

  CHECK_THROWS_AS(substitute_symbol(body, ExprOp::Add, shift), std::invalid_argument);
}

TEST_CASE("prefix serialization round-trips") {
  const char* samples[] = {
      "(* lambda (pow c 2))",
      "(neg (/ 1 lambda))",
      "(- (* R R) (sin theta))",
      "(st (* (fm lambda) eps))",
      "(+ -5/3 (pow (- lambda eps) -1))",
      "lambda",
      "7",
  };
  for (const char* s : samples) {
    const ExprPtr e = hf::parse_prefix(s);
    CHECK(hf::to_prefix(e) == s);
    CHECK(structural_equal(e, hf::parse_prefix(hf::to_prefix(e))));
  }
}

TEST_CASE("prefix parser rejects malformed input") {
  CHECK_THROWS_AS(hf::parse_prefix(""), std::invalid_argument);
  CHECK_THROWS_AS(hf::parse_prefix("(* lambda)"), std::invalid_argument);   // arity
  CHECK_THROWS_AS(hf::parse_prefix("(* lambda c) extra"), std::invalid_argument);
  CHECK_THROWS_AS(hf::parse_prefix("(bogus lambda c)"), std::invalid_argument);
  CHECK_THROWS_AS(hf::parse_prefix("*"), std::invalid_argument);            // bare operator
  CHECK_THROWS_AS(hf::parse_prefix("(* lambda c"), std::invalid_argument);  // unclosed
  CHECK_THROWS_AS(hf::parse_prefix("(pow c x)"), std::invalid_argument);    // bad exponent
}

TEST_CASE("evaluation over exact rationals") {
  const ExprPtr e = hf::parse_prefix("(* lambda (pow c 2))");
  CHECK(eval_expr(e, rational_ctx(Rational(1, 2))) == Rational(1, 2));

  const ExprPtr inv = hf::parse_prefix("(neg (/ 1 lambda))");
  CHECK(eval_expr(inv, rational_ctx(Rational(1, 2))) == Rational(-2));
  CHECK_THROWS_AS(eval_expr(inv, rational_ctx(Rational(0))), std::domain_error);

  CHECK(eval_expr(hf::parse_prefix("(pow lambda -2)"), rational_ctx(Rational(3))) ==
        Rational(1, 9));
  CHECK_THROWS_AS(eval_expr(hf::parse_prefix("(pow lambda 1/2)"), rational_ctx(Rational(4))),
                  std::domain_error);
}

TEST_CASE("evaluation over doubles supports the angle-based sine") {
  EvalContext<double> ctx;
  ctx.lambda = 0.5;
  ctx.c = 2.0;
  ctx.theta = 0.25;
  ctx.exact_sin = false;
  const ExprPtr e = hf::parse_prefix("(* lambda (pow c 2))");
  CHECK(eval_expr(e, ctx) == doctest::Approx(2.0));
  CHECK(eval_expr(hf::parse_prefix("(sin theta)"), ctx) == doctest::Approx(std::sin(0.25)));
  // Exact contexts only admit sin(theta) with a bound sin value.
  EvalContext<double> exact = ctx;
  exact.exact_sin = true;
  exact.sin_theta = 0.5;
  CHECK(eval_expr(hf::parse_prefix("(sin theta)"), exact) == 0.5);
  CHECK_THROWS_AS(eval_expr(hf::parse_prefix("(sin lambda)"), exact), std::invalid_argument);
  CHECK_THROWS_AS(eval_expr(hf::parse_prefix("(pow lambda 1/2)"),
                            [] { EvalContext<double> c2; c2.lambda = -2.0; return c2; }()),
                  std::domain_error);
}

TEST_CASE("evaluation over series binds eps to the infinitesimal") {
  EvalContext<LCNumber> ctx;
  ctx.lambda = LCNumber::from_real(Rational(-1));
  ctx.c = LCNumber::from_real(Rational(1));
  ctx.eps = LCNumber::epsilon();
  ctx.has_eps = true;
  ctx.sin_theta = LCNumber::from_real(Rational(1));

  // (lambda - eps)^-1 expands as a truncated geometric series.
  const ExprPtr shifted_inv = hf::parse_prefix("(pow (- lambda eps) -1)");
  CHECK(eval_expr(shifted_inv, ctx) ==
        LCNumber::parse("-1*e^(0) + 1*e^(1) + -1*e^(2) + 1*e^(3) + -1*e^(4)"));

  // fm applies H_a(.)/c with a bound to eps.
  const ExprPtr fm = hf::parse_prefix("(fm lambda)");
  CHECK(eval_expr(fm, ctx) == eval_expr(shifted_inv, ctx));

  // Fractional powers act on unit monomials.
  CHECK(eval_expr(hf::parse_prefix("(pow eps 3/2)"), ctx) ==
        LCNumber::epsilon(Rational(3, 2)));
  CHECK_THROWS_AS(eval_expr(hf::parse_prefix("(pow lambda 1/2)"), ctx), std::domain_error);

  EvalContext<LCNumber> no_eps = ctx;
  no_eps.has_eps = false;
  CHECK_THROWS_AS(eval_expr(fm, no_eps), std::invalid_argument);
  CHECK_THROWS_AS(eval_expr(hf::parse_prefix("eps"), no_eps), std::invalid_argument);
}

TEST_CASE("st lifts, evaluates, and takes the standard part") {
  // Rational context: st((lambda - eps)^-1) at lambda = -1 is -1.
  const ExprPtr st_inv = hf::parse_prefix("(st (pow (- lambda eps) -1))");
  CHECK(eval_expr(st_inv, rational_ctx(Rational(-1))) == Rational(-1));

  // st of an infinitesimal product is exactly zero.
  CHECK(eval_expr(hf::parse_prefix("(st (* eps eps))"), rational_ctx(Rational(0))) ==
        Rational(0));

  // Unlimited values have no standard part.
  CHECK_THROWS_AS(eval_expr(hf::parse_prefix("(st (/ 1 eps))"), rational_ctx(Rational(0))),
                  hf::UnlimitedError);

  // Series context: st is idempotent standardization.
  EvalContext<LCNumber> ctx;
  ctx.lambda = LCNumber::from_real(Rational(3)) + LCNumber::epsilon();
  ctx.c = LCNumber::from_real(Rational(1));
  ctx.eps = LCNumber::epsilon();
  ctx.has_eps = true;
  CHECK(eval_expr(hf::parse_prefix("(st lambda)"), ctx) == LCNumber::from_real(Rational(3)));
}

TEST_CASE("distinct trees evaluating one polynomial agree at random points") {
  const ExprPtr expanded =
      hf::parse_prefix("(+ (+ (pow lambda 2) (* 2 (* lambda c))) (pow c 2))");
  const ExprPtr factored = hf::parse_prefix("(pow (+ lambda c) 2)");
  CHECK_FALSE(structural_equal(expanded, factored));
  std::mt19937_64 g(31);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
  for (int i = 0; i < 100; ++i) {
    EvalContext<Rational> ctx = rational_ctx(Rational(num(g), den(g)));
    ctx.c = Rational(num(g), den(g));
    CHECK(eval_expr(expanded, ctx) == eval_expr(factored, ctx));
  }
}
