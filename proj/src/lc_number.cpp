// Hyperfield - LC series text format

#include "hyperfield/lc_number.hpp"

#include <charconv>

namespace hf::detail {

std::string CoeffOps<double>::to_string(double c) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c);
  if (ec != std::errc()) throw std::runtime_error("LCSeries: coefficient format failure");
  return std::string(buf, end);
}

double CoeffOps<double>::parse(std::string_view s) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("LCSeries: bad coefficient '" + std::string(s) + "'");
  return value;
}

namespace {

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

// Grammar: term (" + " term)*, term = coeff "*e^(" exponent ")". The
// separator is space-padded so signs inside coefficients ("1e+07") and
// exponents stay untouched; a bare "0" is the zero series.
std::vector<std::pair<Rational, std::string>> parse_series_terms(std::string_view text) {
  std::vector<std::pair<Rational, std::string>> out;
  std::string_view rest = trimmed(text);
  if (rest == "0") return out;
  while (true) {
    size_t plus = rest.find(" + ");
    std::string_view term = trimmed(plus == std::string_view::npos ? rest : rest.substr(0, plus));
    size_t star = term.find("*e^(");
    if (star == std::string_view::npos || term.empty() || term.back() != ')')
      throw std::invalid_argument("LCSeries: bad term '" + std::string(term) + "'");
    std::string_view coeff = trimmed(term.substr(0, star));
    std::string_view expo = term.substr(star + 4, term.size() - star - 5);
    out.emplace_back(Rational::parse(expo), std::string(coeff));
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 3);
  }
  return out;
}

}  // namespace hf::detail
