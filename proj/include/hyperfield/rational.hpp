// Hyperfield - exact rational scalars
//
// Thin wrapper over boost::multiprecision keeping the normalized-fraction
// invariants explicit: denominator > 0, gcd(|num|, den) = 1, total order
// agreeing with the real order.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT: implicit by design, 2 means 2/1
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
  Rational(BigInt num, BigInt den);

  // Accepts "p", "p/q", and decimal literals ("2.5", "-1e-3", "6.6743e-11"),
  // all converted exactly.
  static Rational parse(std::string_view text);

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const { return den() == 1; }
  int sign() const { return v_.sign(); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return v_.convert_to<double>(); }
  std::string to_string() const;

  Rational pow_int(long long e) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  BigRat v_;  // cpp_rational keeps den > 0 and gcd = 1 canonical
};

}  // namespace hf
