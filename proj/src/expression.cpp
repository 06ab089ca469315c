#include "hyperfield/expression.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace hf {

namespace {

struct OpInfo {
  ExprOp op;
  const char* name;
  int arity;  // 0 = leaf symbol, 1/2 = children; Pow is special (child + exponent)
};

constexpr OpInfo kOps[] = {
    {ExprOp::ConstG, "G", 0},        {ExprOp::ConstM, "M", 0},
    {ExprOp::ConstC, "c", 0},        {ExprOp::ConstEps, "eps", 0},
    {ExprOp::VarR, "R", 0},          {ExprOp::VarTheta, "theta", 0},
    {ExprOp::VarLambda, "lambda", 0},
    {ExprOp::Add, "+", 2},           {ExprOp::Sub, "-", 2},
    {ExprOp::Neg, "neg", 1},         {ExprOp::Mul, "*", 2},
    {ExprOp::Div, "/", 2},           {ExprOp::Pow, "pow", 2},
    {ExprOp::Sin, "sin", 1},         {ExprOp::Fm, "fm", 1},
    {ExprOp::St, "st", 1},
};

const OpInfo* op_info(ExprOp op) {
  for (const auto& info : kOps)
    if (info.op == op) return &info;
  return nullptr;
}

const OpInfo* op_info(std::string_view name) {
  for (const auto& info : kOps)
    if (name == info.name) return &info;
  return nullptr;
}

ExprPtr make(ExprOp op, Rational value, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  return std::make_shared<const Expr>(op, std::move(value), std::move(a), std::move(b));
}

void require(const ExprPtr& x, const char* who) {
  if (!x) throw std::invalid_argument(std::string(who) + ": null child");
}

}  // namespace

ExprPtr Expr::lit(Rational v) { return make(ExprOp::Literal, std::move(v)); }

ExprPtr Expr::symbol(ExprOp which) {
  const OpInfo* info = op_info(which);
  if (!info || info->arity != 0) throw std::invalid_argument("Expr::symbol: not a symbol op");
  return make(which, Rational(0));
}

ExprPtr Expr::add(ExprPtr x, ExprPtr y) {
  require(x, "add"), require(y, "add");
  return make(ExprOp::Add, Rational(0), std::move(x), std::move(y));
}

ExprPtr Expr::sub(ExprPtr x, ExprPtr y) {
  require(x, "sub"), require(y, "sub");
  return make(ExprOp::Sub, Rational(0), std::move(x), std::move(y));
}

ExprPtr Expr::neg(ExprPtr x) {
  require(x, "neg");
  return make(ExprOp::Neg, Rational(0), std::move(x));
}

ExprPtr Expr::mul(ExprPtr x, ExprPtr y) {
  require(x, "mul"), require(y, "mul");
  return make(ExprOp::Mul, Rational(0), std::move(x), std::move(y));
}

ExprPtr Expr::div(ExprPtr x, ExprPtr y) {
  require(x, "div"), require(y, "div");
  return make(ExprOp::Div, Rational(0), std::move(x), std::move(y));
}

ExprPtr Expr::pow(ExprPtr x, Rational exponent) {
  require(x, "pow");
  return make(ExprOp::Pow, std::move(exponent), std::move(x));
}

ExprPtr Expr::sin(ExprPtr x) {
  require(x, "sin");
  return make(ExprOp::Sin, Rational(0), std::move(x));
}

ExprPtr Expr::fm(ExprPtr x) {
  require(x, "fm");
  return make(ExprOp::Fm, Rational(0), std::move(x));
}

ExprPtr Expr::st(ExprPtr x) {
  require(x, "st");
  return make(ExprOp::St, Rational(0), std::move(x));
}

bool structural_equal(const ExprPtr& x, const ExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->op != y->op || x->value != y->value) return false;
  return structural_equal(x->a, y->a) && structural_equal(x->b, y->b);
}

bool contains_op(const ExprPtr& x, ExprOp op) {
  if (!x) return false;
  return x->op == op || contains_op(x->a, op) || contains_op(x->b, op);
}

ExprPtr substitute_symbol(const ExprPtr& root, ExprOp symbol, const ExprPtr& replacement) {
  const OpInfo* info = op_info(symbol);
  if (!info || info->arity != 0)
    throw std::invalid_argument("substitute_symbol: not a symbol op");
  require(replacement, "substitute_symbol");
  if (!root) return root;
  if (root->op == symbol) return replacement;
  ExprPtr a = substitute_symbol(root->a, symbol, replacement);
  ExprPtr b = substitute_symbol(root->b, symbol, replacement);
  if (a == root->a && b == root->b) return root;
  return make(root->op, root->value, std::move(a), std::move(b));
}

std::string to_prefix(const ExprPtr& x) {
  require(x, "to_prefix");
  if (x->op == ExprOp::Literal) return x->value.to_string();
  const OpInfo* info = op_info(x->op);
  if (!info) throw std::logic_error("to_prefix: unknown op");
  if (info->arity == 0) return info->name;
  std::string out = "(";
  out += info->name;
  out += ' ';
  out += to_prefix(x->a);
  if (x->op == ExprOp::Pow) {
    out += ' ';
    out += x->value.to_string();
  } else if (info->arity == 2) {
    out += ' ';
    out += to_prefix(x->b);
  }
  out += ')';
  return out;
}

namespace {

struct PrefixParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("parse: unexpected end of input");
    return text[pos];
  }

  std::string_view token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) throw std::invalid_argument("parse: expected a token");
    return text.substr(start, pos - start);
  }

  void expect(char c) {
    if (peek() != c) throw std::invalid_argument(std::string("parse: expected '") + c + "'");
    ++pos;
  }

  ExprPtr expr() {
    if (peek() != '(') {
      std::string_view tok = token();
      if (const OpInfo* info = op_info(tok)) {
        if (info->arity != 0)
          throw std::invalid_argument("parse: operator outside parentheses: " + std::string(tok));
        return Expr::symbol(info->op);
      }
      return Expr::lit(Rational::parse(tok));
    }
    expect('(');
    std::string_view name = token();
    const OpInfo* info = op_info(name);
    if (!info || info->arity == 0)
      throw std::invalid_argument("parse: unknown operator: " + std::string(name));
    ExprPtr a = expr();
    ExprPtr result;
    if (info->op == ExprOp::Pow) {
      result = Expr::pow(std::move(a), Rational::parse(token()));
    } else if (info->arity == 2) {
      ExprPtr b = expr();
      result = make(info->op, Rational(0), std::move(a), std::move(b));
    } else {
      result = make(info->op, Rational(0), std::move(a));
    }
    expect(')');
    return result;
  }
};

}  // namespace

ExprPtr parse_prefix(std::string_view text) {
  PrefixParser p{text};
  ExprPtr result = p.expr();
  if (!p.at_end()) throw std::invalid_argument("parse: trailing input");
  return result;
}

}  // namespace hf
