// Hyperfield - exact rational scalars

#include "hyperfield/rational.hpp"

#include <cctype>

namespace hf {

Rational::Rational(BigInt num, BigInt den) {
  if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  v_ = BigRat(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow_int(long long e) const {
  if (e < 0) {
    if (is_zero()) throw std::domain_error("Rational: zero to negative power");
    return Rational(1) / pow_int(-e);
  }
  Rational result(1);
  Rational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string Rational::to_string() const {
  std::string s = num().str();
  if (den() != 1) s += "/" + den().str();
  return s;
}

namespace {

BigInt parse_digits(std::string_view s, size_t& i) {
  size_t start = i;
  BigInt value = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    value = value * 10 + (s[i] - '0');
    ++i;
  }
  if (i == start) throw std::invalid_argument("Rational: expected digits in '" + std::string(s) + "'");
  return value;
}

BigInt pow10(long long e) {
  BigInt r = 1;
  for (long long k = 0; k < e; ++k) r *= 10;
  return r;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt int_part = parse_digits(text, i);

  if (i < text.size() && text[i] == '/') {
    ++i;
    BigInt den = parse_digits(text, i);
    skip_ws();
    if (i != text.size()) throw std::invalid_argument("Rational: trailing characters in '" + std::string(text) + "'");
    Rational r(negative ? -int_part : int_part, den);
    return r;
  }

  BigInt numerator = int_part;
  long long frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    size_t start = i;
    BigInt frac = parse_digits(text, i);
    frac_digits = static_cast<long long>(i - start);
    numerator = numerator * pow10(frac_digits) + frac;
  }
  long long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    BigInt e = parse_digits(text, i);
    if (e > 18) throw std::invalid_argument("Rational: exponent out of range");
    exp10 = e.convert_to<long long>();
    if (exp_neg) exp10 = -exp10;
  }
  skip_ws();
  if (i != text.size()) throw std::invalid_argument("Rational: trailing characters in '" + std::string(text) + "'");

  long long net = exp10 - frac_digits;
  BigInt den = 1;
  if (net >= 0) numerator *= pow10(net);
  else den = pow10(-net);
  return Rational(negative ? -numerator : numerator, den);
}

}  // namespace hf
