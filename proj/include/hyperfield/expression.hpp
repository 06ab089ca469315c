// Hyperfield - coefficient expression trees
//
// Immutable trees over the variables R, theta, lambda and the constants
// G, M, c and eps (the transition scale: the infinitesimal e in the ideal
// model, a real a > 0 in the natural-world model), evaluable over any scalar
// field. Two nodes go beyond plain arithmetic: `fm` applies the transformation
// function f_M = H_a(.)/c of the bound transition scale, and `st` evaluates
// its child in the LC extension of the ambient field and takes the standard
// part (throwing UnlimitedError when none exists).
//
// Serialized in prefix notation, e.g. "(* lambda (pow c 2))"; parsing and
// emission round-trip losslessly.

#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyperfield/scalar.hpp"
#include "hyperfield/transition.hpp"

namespace hf {

// Standardizing an unlimited value: st does not exist as a real number.
struct UnlimitedError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class ExprOp : std::uint8_t {
  Literal,
  ConstG,
  ConstM,
  ConstC,
  ConstEps,
  VarR,
  VarTheta,
  VarLambda,
  Add,
  Sub,
  Neg,
  Mul,
  Div,
  Pow,  // rational exponent in `value`
  Sin,
  Fm,
  St,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  ExprOp op;
  Rational value;  // Literal payload, or the Pow exponent
  ExprPtr a, b;

  Expr(ExprOp o, Rational v, ExprPtr lhs, ExprPtr rhs)
      : op(o), value(std::move(v)), a(std::move(lhs)), b(std::move(rhs)) {}

  static ExprPtr lit(Rational v);
  static ExprPtr symbol(ExprOp which);  // constants and variables
  static ExprPtr add(ExprPtr x, ExprPtr y);
  static ExprPtr sub(ExprPtr x, ExprPtr y);
  static ExprPtr neg(ExprPtr x);
  static ExprPtr mul(ExprPtr x, ExprPtr y);
  static ExprPtr div(ExprPtr x, ExprPtr y);
  static ExprPtr pow(ExprPtr x, Rational exponent);
  static ExprPtr sin(ExprPtr x);
  static ExprPtr fm(ExprPtr x);
  static ExprPtr st(ExprPtr x);
};

bool structural_equal(const ExprPtr& x, const ExprPtr& y);
bool contains_op(const ExprPtr& x, ExprOp op);

// Replace every occurrence of the given symbol node with a subtree.
ExprPtr substitute_symbol(const ExprPtr& root, ExprOp symbol, const ExprPtr& replacement);

std::string to_prefix(const ExprPtr& x);
ExprPtr parse_prefix(std::string_view text);

template <ScalarField S>
struct EvalContext {
  S R{};
  S theta{};      // angle; consulted only when exact_sin is false
  S sin_theta{};  // exact value of sin(theta), used when exact_sin is true
  S lambda{};
  S G{}, M{}, c{};
  S eps{};  // transition scale (e or real a); valid iff has_eps
  bool has_eps = false;
  bool exact_sin = true;
  TruncationPolicy policy{};  // used when lifting into the LC extension for st
};

namespace detail {

template <typename S>
struct LCExtension {
  using type = LCSeries<S>;
};
template <typename C>
struct LCExtension<LCSeries<C>> {
  using type = LCSeries<C>;
};

template <ScalarField S>
EvalContext<typename LCExtension<S>::type> lift_context(const EvalContext<S>& ctx) {
  using L = typename LCExtension<S>::type;
  if constexpr (scalar_traits<S>::is_lc) {
    return ctx;
  } else {
    EvalContext<L> lifted;
    lifted.R = L::from_real(ctx.R, ctx.policy);
    lifted.lambda = L::from_real(ctx.lambda, ctx.policy);
    lifted.G = L::from_real(ctx.G, ctx.policy);
    lifted.M = L::from_real(ctx.M, ctx.policy);
    lifted.c = L::from_real(ctx.c, ctx.policy);
    if (ctx.exact_sin) {
      lifted.sin_theta = L::from_real(ctx.sin_theta, ctx.policy);
    } else {
      if constexpr (std::is_same_v<S, double>)
        lifted.sin_theta = L::from_real(std::sin(ctx.theta), ctx.policy);
      else
        throw std::invalid_argument("eval: angle-based sin requires a double context");
    }
    lifted.exact_sin = true;
    lifted.eps = L::epsilon(Rational(1), ctx.policy);
    lifted.has_eps = true;
    lifted.policy = ctx.policy;
    return lifted;
  }
}

template <ScalarField S>
S scalar_pow(const S& x, const Rational& e) {
  if (e.is_integer()) {
    long long n = e.num().template convert_to<long long>();
    if constexpr (std::is_same_v<S, Rational>) return x.pow_int(n);
    else if constexpr (std::is_same_v<S, double>) return std::pow(x, static_cast<double>(n));
    else return x.pow_int(n);
  }
  if constexpr (std::is_same_v<S, double>) {
    if (x < 0.0) throw std::domain_error("eval: negative base with fractional exponent");
    return std::pow(x, e.to_double());
  } else if constexpr (scalar_traits<S>::is_lc) {
    // Fractional powers are defined for unit-coefficient monomials only
    // (e^q -> e^(q*p)); that is all the element algebra needs.
    using Ops = CoeffOps<typename S::Coeff>;
    if (x.terms().size() != 1) throw std::domain_error("eval: fractional power of a non-monomial series");
    if (!Ops::is_zero(x.terms().begin()->second - Ops::one()))
      throw std::domain_error("eval: fractional power of a non-unit series");
    return S::epsilon(x.terms().begin()->first * e, x.policy());
  } else {
    throw std::domain_error("eval: fractional power over exact rationals");
  }
}

}  // namespace detail

template <ScalarField S>
S eval_expr(const ExprPtr& e, const EvalContext<S>& ctx) {
  if (!e) throw std::invalid_argument("eval: null expression");
  const auto k = [](long long v) { return scalar_traits<S>::from_int(v); };
  switch (e->op) {
    case ExprOp::Literal: return scalar_traits<S>::from_rational(e->value);
    case ExprOp::ConstG: return ctx.G;
    case ExprOp::ConstM: return ctx.M;
    case ExprOp::ConstC: return ctx.c;
    case ExprOp::ConstEps:
      if (!ctx.has_eps) throw std::invalid_argument("eval: transition scale (eps) not bound");
      return ctx.eps;
    case ExprOp::VarR: return ctx.R;
    case ExprOp::VarTheta: return ctx.theta;
    case ExprOp::VarLambda: return ctx.lambda;
    case ExprOp::Add: return eval_expr(e->a, ctx) + eval_expr(e->b, ctx);
    case ExprOp::Sub: return eval_expr(e->a, ctx) - eval_expr(e->b, ctx);
    case ExprOp::Neg: return -eval_expr(e->a, ctx);
    case ExprOp::Mul: return eval_expr(e->a, ctx) * eval_expr(e->b, ctx);
    case ExprOp::Div: {
      S num = eval_expr(e->a, ctx);
      S den = eval_expr(e->b, ctx);
      if (den == k(0)) throw std::domain_error("eval: division by zero");
      return num / den;
    }
    case ExprOp::Pow: return detail::scalar_pow(eval_expr(e->a, ctx), e->value);
    case ExprOp::Sin: {
      if (ctx.exact_sin) {
        if (e->a && e->a->op == ExprOp::VarTheta) return ctx.sin_theta;
        throw std::invalid_argument("eval: exact contexts support sin(theta) only");
      }
      if constexpr (std::is_same_v<S, double>) return std::sin(eval_expr(e->a, ctx));
      else throw std::invalid_argument("eval: angle-based sin requires a double context");
    }
    case ExprOp::Fm: {
      if (!ctx.has_eps) throw std::invalid_argument("eval: transition scale (eps) not bound");
      TransitionSpec<S> spec(ctx.eps);
      return f_m_eval(spec, eval_expr(e->a, ctx), ctx.c);
    }
    case ExprOp::St: {
      auto lifted = detail::lift_context(ctx);
      auto value = eval_expr(e->a, lifted);
      auto st = value.standard_part();
      if (!st) throw UnlimitedError("st: value is unlimited (no standard part)");
      if constexpr (scalar_traits<S>::is_lc) return S::from_real(*st, ctx.policy);
      else return *st;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace hf
