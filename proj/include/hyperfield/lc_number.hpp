// Hyperfield - truncated Levi-Civita series arithmetic
//
// An LCSeries is a finite formal sum  sum_q c_q * e^q  with strictly
// increasing rational exponents q and nonzero coefficients c_q, where e is a
// positive infinitesimal. The empty sum is exactly 0. Every value carries a
// truncation policy: after each operation, exponents above
// leading_exponent + window are dropped and at most max_terms lowest-exponent
// terms are kept. Within that window all arithmetic is exact.
//
// Order is lexicographic by leading term (the lowest exponent dominates), so
// e > 0, e > e^2, and 2e < 0.001. A value is infinitesimal iff it is 0 or its
// leading exponent is positive, limited iff 0 or leading exponent >= 0, and
// the standard part exists iff the value is limited.

#pragma once

#include <compare>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperfield/rational.hpp"

namespace hf {

struct TruncationPolicy {
  Rational window{4};
  int max_terms{32};

  TruncationPolicy() = default;
  TruncationPolicy(Rational w, int m) : window(std::move(w)), max_terms(m) {
    if (!(window > Rational(0))) throw std::invalid_argument("TruncationPolicy: window must be positive");
    if (max_terms < 2) throw std::invalid_argument("TruncationPolicy: max_terms must be >= 2");
  }

  TruncationPolicy combined(const TruncationPolicy& o) const {
    return TruncationPolicy(window < o.window ? window : o.window,
                            max_terms < o.max_terms ? max_terms : o.max_terms);
  }
};

namespace detail {

template <typename C>
struct CoeffOps;

template <>
struct CoeffOps<Rational> {
  static bool is_zero(const Rational& c) { return c.is_zero(); }
  static int sign(const Rational& c) { return c.sign(); }
  static Rational one() { return Rational(1); }
  static Rational invert(const Rational& c) { return Rational(1) / c; }
  static void check_finite(const Rational&) {}
  static std::string to_string(const Rational& c) { return c.to_string(); }
  static Rational parse(std::string_view s) { return Rational::parse(s); }
};

template <>
struct CoeffOps<double> {
  static bool is_zero(double c) { return c == 0.0; }
  static int sign(double c) { return c > 0.0 ? 1 : (c < 0.0 ? -1 : 0); }
  static double one() { return 1.0; }
  static double invert(double c) { return 1.0 / c; }
  static void check_finite(double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("LCSeries: non-finite coefficient");
  }
  static std::string to_string(double c);
  static double parse(std::string_view s);
};

}  // namespace detail

template <typename C>
class LCSeries {
 public:
  using Coeff = C;
  using Terms = std::map<Rational, C>;

  LCSeries() = default;
  explicit LCSeries(TruncationPolicy policy) : policy_(std::move(policy)) {}

  // Embedding of the standard scalars: x -> x * e^0 (0 maps to the empty sum).
  static LCSeries from_real(C x, TruncationPolicy policy = TruncationPolicy()) {
    detail::CoeffOps<C>::check_finite(x);
    LCSeries s(std::move(policy));
    if (!detail::CoeffOps<C>::is_zero(x)) s.terms_.emplace(Rational(0), std::move(x));
    return s;
  }

  // The monomial e^q: infinitesimal for q > 0, infinite for q < 0.
  static LCSeries epsilon(Rational q = Rational(1), TruncationPolicy policy = TruncationPolicy()) {
    LCSeries s(std::move(policy));
    s.terms_.emplace(std::move(q), detail::CoeffOps<C>::one());
    return s;
  }

  static LCSeries monomial(C coeff, Rational q, TruncationPolicy policy = TruncationPolicy()) {
    detail::CoeffOps<C>::check_finite(coeff);
    LCSeries s(std::move(policy));
    if (!detail::CoeffOps<C>::is_zero(coeff)) s.terms_.emplace(std::move(q), std::move(coeff));
    return s;
  }

  static LCSeries from_terms(std::vector<std::pair<Rational, C>> terms,
                             TruncationPolicy policy = TruncationPolicy()) {
    LCSeries s(std::move(policy));
    for (auto& [q, c] : terms) {
      detail::CoeffOps<C>::check_finite(c);
      auto [it, inserted] = s.terms_.emplace(std::move(q), c);
      if (!inserted) it->second = it->second + c;
    }
    s.canonicalize();
    return s;
  }

  const Terms& terms() const { return terms_; }
  const TruncationPolicy& policy() const { return policy_; }

  bool is_zero() const { return terms_.empty(); }

  std::optional<Rational> leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  // x = 0 or leading exponent > 0: member of the monad of 0.
  bool is_infinitesimal() const {
    return terms_.empty() || terms_.begin()->first > Rational(0);
  }

  // x = 0 or leading exponent >= 0: finite in the order sense.
  bool is_limited() const {
    return terms_.empty() || terms_.begin()->first >= Rational(0);
  }

  // st(x): the coefficient at e^0 when x is limited; nullopt (the paper's
  // "does not exist as a real number") when a negative exponent is present.
  std::optional<C> standard_part() const {
    if (terms_.empty()) return C(0);
    if (terms_.begin()->first < Rational(0)) return std::nullopt;
    auto it = terms_.find(Rational(0));
    return it == terms_.end() ? C(0) : it->second;
  }

  LCSeries operator-() const {
    LCSeries r(policy_);
    for (const auto& [q, c] : terms_) r.terms_.emplace(q, -c);
    return r;
  }

  friend LCSeries operator+(const LCSeries& a, const LCSeries& b) {
    LCSeries r(a.policy_.combined(b.policy_));
    r.terms_ = a.terms_;
    for (const auto& [q, c] : b.terms_) {
      auto [it, inserted] = r.terms_.emplace(q, c);
      if (!inserted) it->second = it->second + c;
    }
    r.canonicalize();
    return r;
  }

  friend LCSeries operator-(const LCSeries& a, const LCSeries& b) { return a + (-b); }

  friend LCSeries operator*(const LCSeries& a, const LCSeries& b) {
    LCSeries r(a.policy_.combined(b.policy_));
    for (const auto& [qa, ca] : a.terms_)
      for (const auto& [qb, cb] : b.terms_) {
        C prod = ca * cb;
        auto [it, inserted] = r.terms_.emplace(qa + qb, prod);
        if (!inserted) it->second = it->second + prod;
      }
    r.canonicalize();
    return r;
  }

  // Multiplicative inverse by truncated geometric expansion of the reduced
  // tail: for x = c0 e^l (1 + w) with w of positive relative exponents,
  // 1/x = c0^-1 e^-l sum_k (-w)^k. Exact on all exponents below
  // -l + window.
  LCSeries inv() const {
    if (terms_.empty()) throw std::domain_error("LCSeries: division by zero");
    const Rational lead_exp = terms_.begin()->first;
    const C& lead_coeff = terms_.begin()->second;
    const C inv_coeff = detail::CoeffOps<C>::invert(lead_coeff);

    // w = x / (c0 e^l) - 1, truncated against the unit's window [0, window].
    LCSeries w(policy_);
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
      Rational rel = it->first - lead_exp;
      if (rel > policy_.window) break;
      w.terms_.emplace(std::move(rel), it->second * inv_coeff);
    }

    LCSeries acc = from_real(detail::CoeffOps<C>::one(), policy_);
    if (!w.terms_.empty()) {
      LCSeries neg_w = -w;
      LCSeries term = neg_w;
      while (!term.terms_.empty()) {
        acc = acc + term;
        term = term * neg_w;
        term.drop_above(policy_.window);
      }
    }
    return acc * monomial(inv_coeff, -lead_exp, policy_);
  }

  friend LCSeries operator/(const LCSeries& a, const LCSeries& b) { return a * b.inv(); }

  LCSeries pow_int(long long e) const {
    if (e < 0) return inv().pow_int(-e);
    LCSeries result = from_real(detail::CoeffOps<C>::one(), policy_);
    LCSeries base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      if (e >>= 1) base = base * base;
    }
    return result;
  }

  friend bool operator==(const LCSeries& a, const LCSeries& b) { return a.terms_ == b.terms_; }

  // Total order: sign of the leading coefficient of the difference. Exact,
  // no tolerance; equal series compare equal after canonicalization.
  friend std::strong_ordering operator<=>(const LCSeries& a, const LCSeries& b) {
    LCSeries d = a - b;
    if (d.terms_.empty()) return std::strong_ordering::equal;
    int s = detail::CoeffOps<C>::sign(d.terms_.begin()->second);
    return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  // Sorted "coeff*e^(q)" terms joined by " + "; the zero series is "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [q, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += detail::CoeffOps<C>::to_string(c);
      out += "*e^(";
      out += q.to_string();
      out += ")";
    }
    return out;
  }

  static LCSeries parse(std::string_view text, TruncationPolicy policy = TruncationPolicy());

 private:
  void canonicalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (detail::CoeffOps<C>::is_zero(it->second)) it = terms_.erase(it);
      else ++it;
    }
    if (terms_.empty()) return;
    drop_above(terms_.begin()->first + policy_.window);
    while (static_cast<int>(terms_.size()) > policy_.max_terms) terms_.erase(std::prev(terms_.end()));
  }

  void drop_above(const Rational& cutoff) {
    terms_.erase(terms_.upper_bound(cutoff), terms_.end());
  }

  Terms terms_;
  TruncationPolicy policy_;
};

using LCNumber = LCSeries<Rational>;   // exact mode
using LCNumberD = LCSeries<double>;    // float-coefficient mode

// Term-by-term agreement on every exponent <= cutoff (missing term = 0).
// This is the right notion of equality across a truncation boundary: two
// routes through the algebra may differ in which exponents survive above
// min(leading) + window, but must match exactly at or below it.
template <typename C>
bool agree_through(const LCSeries<C>& a, const LCSeries<C>& b, const Rational& cutoff) {
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea && ia->first <= cutoff && ib != eb && ib->first <= cutoff) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    ++ia, ++ib;
  }
  if (ia != ea && ia->first <= cutoff) return false;
  if (ib != eb && ib->first <= cutoff) return false;
  return true;
}

// Strict variant: agreement on every exponent < cutoff.
template <typename C>
bool agree_below(const LCSeries<C>& a, const LCSeries<C>& b, const Rational& cutoff) {
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea && ia->first < cutoff && ib != eb && ib->first < cutoff) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    ++ia, ++ib;
  }
  if (ia != ea && ia->first < cutoff) return false;
  if (ib != eb && ib->first < cutoff) return false;
  return true;
}

namespace detail {

std::vector<std::pair<Rational, std::string>> parse_series_terms(std::string_view text);

}  // namespace detail

template <typename C>
LCSeries<C> LCSeries<C>::parse(std::string_view text, TruncationPolicy policy) {
  std::vector<std::pair<Rational, C>> terms;
  for (auto& [q, cs] : detail::parse_series_terms(text))
    terms.emplace_back(std::move(q), detail::CoeffOps<C>::parse(cs));
  return from_terms(std::move(terms), std::move(policy));
}

}  // namespace hf
