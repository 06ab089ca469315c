#include "hyperfield/scan.hpp"

#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperfield/line_element.hpp"

namespace hf::scan {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer; the golden-ratio increment decorrelates indices.
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

double grid_point(double lo, double hi, long n, long i) {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void merge_max(MaxAbsResult& into, const MaxAbsResult& candidate) {
  if (candidate.index < 0) return;
  if (into.index < 0 || candidate.value > into.value ||
      (candidate.value == into.value && candidate.index < into.index)) {
    into = candidate;
  }
}

void consider(MaxAbsResult& best, double value, double arg, long index) {
  if (best.index < 0 || value > best.value) best = {value, arg, index};
}

// Random draws shared by the serial and parallel paths: everything about
// index i comes from its own generator, so the execution order is
// irrelevant.
std::mt19937_64 rng_at(std::uint64_t seed, long index) {
  return std::mt19937_64(mix_seed(seed, static_cast<std::uint64_t>(index)));
}

long draw(std::mt19937_64& g, long lo, long hi) {  // inclusive bounds
  return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational draw_rational(std::mt19937_64& g, long num_hi, long den_hi, bool allow_negative) {
  const long den = draw(g, 1, den_hi);
  const long num = draw(g, 1, num_hi);
  const bool negate = allow_negative && (g() & 1);
  return Rational(negate ? -num : num, den);
}

double random_in(std::mt19937_64& g, double lo, double hi) {
  const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + (hi - lo) * u;
}

bool junction_check_at(long index, std::uint64_t seed, double float_rel_tol) {
  std::mt19937_64 g = rng_at(seed, index);
  const long den = draw(g, 1, 100);
  const long num = draw(g, 1, 10 * den);  // a = num/den in (0, 10]
  const Rational a(num, den);
  const JunctionReport exact = junction_report(TransitionSpec<Rational>(a));
  const JunctionReportF floated =
      junction_report_float(TransitionSpec<double>(a.to_double()), float_rel_tol);
  return exact.pass && floated.pass;
}

LCNumber monad_member(std::mt19937_64& g, const Rational& st, TruncationPolicy policy) {
  std::vector<std::pair<Rational, Rational>> terms{{Rational(0), st}};
  const long extra = draw(g, 1, 2);
  Rational q(0);
  for (long t = 0; t < extra; ++t) {
    q += Rational(draw(g, 1, 6), 2);  // exponent grid 1/2 .. 3, strictly increasing
    terms.emplace_back(q, draw_rational(g, 9, 9, true));
  }
  return LCNumber::from_terms(std::move(terms), policy);
}

// One LCNumber with up to four terms; exponents on the grid k/6 in [-4, 4]
// keep every window of width 4 under 25 distinct exponents, so max_terms
// (>= 32 by default) never truncates inside the window during these checks.
LCNumber random_series(std::mt19937_64& g, const TruncationPolicy& policy) {
  const long nterms = draw(g, 0, 4);
  std::vector<std::pair<Rational, Rational>> terms;
  terms.reserve(static_cast<std::size_t>(nterms));
  for (long t = 0; t < nterms; ++t) {
    const Rational q(draw(g, -24, 24), 6);
    terms.emplace_back(q, draw_rational(g, 9, 9, true));
  }
  return LCNumber::from_terms(std::move(terms), policy);
}

Rational field_law_cutoff(std::initializer_list<const LCNumber*> operands,
                          const Rational& window) {
  std::optional<Rational> lead;
  for (const LCNumber* x : operands) {
    const auto l = x->leading_exponent();
    if (l && (!lead || *l < *lead)) lead = *l;
  }
  // All operands zero: any cutoff works, both routes are the zero series.
  return (lead ? *lead : Rational(0)) + window;
}

void field_laws_at(long index, std::uint64_t seed, const TruncationPolicy& policy,
                   FieldLawStats& stats) {
  std::mt19937_64 g = rng_at(seed, index);
  const LCNumber x = random_series(g, policy);
  const LCNumber y = random_series(g, policy);
  const LCNumber z = random_series(g, policy);
  const LCNumber one = LCNumber::from_real(Rational(1), policy);
  const Rational& w = policy.window;

  const bool results[7] = {
      x + y == y + x,
      agree_through((x + y) + z, x + (y + z), field_law_cutoff({&x, &y, &z}, w)),
      x * y == y * x,
      (x * y) * z == x * (y * z),
      x.is_zero() || agree_through(x * (y + z), x * y + x * z,
                                   *x.leading_exponent() + field_law_cutoff({&y, &z}, w)),
      [&] {
        const LCNumber base = x.is_zero() ? x + one : x;
        return agree_below(base * base.inv(), one, w);
      }(),
      agree_through((x - y) + y, x, field_law_cutoff({&x, &y}, w)),
  };
  for (int law = 0; law < 7; ++law) {
    ++stats.checks;
    if (!results[law]) {
      ++stats.failures;
      ++stats.failures_by_law[static_cast<std::size_t>(law)];
    }
  }
}

bool bterm_is_zero(const LCNumber& lambda, const Rational& c) {
  const TruncationPolicy policy = lambda.policy();
  const TransitionSpec<LCNumber> spec(LCNumber::epsilon(Rational(1), policy));
  const LCNumber b = b_coefficient(spec, lambda, LCNumber::from_real(c, policy));
  return b.is_zero();
}

double bterm_residual(double lambda, double c, const TruncationPolicy& policy) {
  const TransitionSpec<LCNumberD> spec(LCNumberD::epsilon(Rational(1), policy));
  const LCNumberD b =
      b_coefficient(spec, LCNumberD::from_real(lambda, policy), LCNumberD::from_real(c, policy));
  double worst = 0.0;
  for (const auto& [q, coeff] : b.terms()) worst = std::max(worst, std::fabs(coeff));
  return worst;
}

template <typename Body>
void run_parallel(long n, Body&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) body(i);
#else
  for (long i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace

std::vector<SampleRow> transition_table_serial(const TransitionSpec<double>& spec, double lo,
                                               double hi, long n) {
  if (n < 2) throw std::invalid_argument("transition_table: need at least 2 samples");
  if (!(lo < hi)) throw std::invalid_argument("transition_table: empty range");
  std::vector<SampleRow> rows(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double x = grid_point(lo, hi, n, i);
    rows[static_cast<std::size_t>(i)] = {x, h_eval(spec, x), h_derivative(spec, x),
                                         select_branch(spec, x)};
  }
  return rows;
}

std::vector<SampleRow> transition_table(const TransitionSpec<double>& spec, double lo, double hi,
                                        long n) {
  if (n < 2) throw std::invalid_argument("transition_table: need at least 2 samples");
  if (!(lo < hi)) throw std::invalid_argument("transition_table: empty range");
  std::vector<SampleRow> rows(static_cast<std::size_t>(n));
  run_parallel(n, [&](long i) {
    const double x = grid_point(lo, hi, n, i);
    rows[static_cast<std::size_t>(i)] = {x, h_eval(spec, x), h_derivative(spec, x),
                                         select_branch(spec, x)};
  });
  return rows;
}

MaxAbsResult max_abs_scan_serial(const TransitionSpec<double>& spec, double lo, double hi,
                                 long n) {
  if (n < 2) throw std::invalid_argument("max_abs_scan: need at least 2 samples");
  MaxAbsResult best;
  for (long i = 0; i < n; ++i) {
    const double x = grid_point(lo, hi, n, i);
    consider(best, std::fabs(h_eval(spec, x)), x, i);
  }
  return best;
}

MaxAbsResult max_abs_scan(const TransitionSpec<double>& spec, double lo, double hi, long n) {
#ifdef _OPENMP
  if (n < 2) throw std::invalid_argument("max_abs_scan: need at least 2 samples");
  std::vector<MaxAbsResult> parts(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    MaxAbsResult local;
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) {
      const double x = grid_point(lo, hi, n, i);
      consider(local, std::fabs(h_eval(spec, x)), x, i);
    }
    parts[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  MaxAbsResult best;
  for (const MaxAbsResult& part : parts) merge_max(best, part);
  return best;
#else
  return max_abs_scan_serial(spec, lo, hi, n);
#endif
}

MaxAbsResult max_abs_random_serial(const TransitionSpec<double>& spec, double lo, double hi,
                                   long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("max_abs_random: need at least 1 sample");
  MaxAbsResult best;
  for (long i = 0; i < n; ++i) {
    std::mt19937_64 g = rng_at(seed, i);
    const double x = random_in(g, lo, hi);
    consider(best, std::fabs(h_eval(spec, x)), x, i);
  }
  return best;
}

MaxAbsResult max_abs_random(const TransitionSpec<double>& spec, double lo, double hi, long n,
                            std::uint64_t seed) {
#ifdef _OPENMP
  if (n < 1) throw std::invalid_argument("max_abs_random: need at least 1 sample");
  std::vector<MaxAbsResult> parts(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    MaxAbsResult local;
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) {
      std::mt19937_64 g = rng_at(seed, i);
      const double x = random_in(g, lo, hi);
      consider(local, std::fabs(h_eval(spec, x)), x, i);
    }
    parts[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  MaxAbsResult best;
  for (const MaxAbsResult& part : parts) merge_max(best, part);
  return best;
#else
  return max_abs_random_serial(spec, lo, hi, n, seed);
#endif
}

long junction_sweep_serial(long n, std::uint64_t seed, double float_rel_tol) {
  long failures = 0;
  for (long i = 0; i < n; ++i)
    if (!junction_check_at(i, seed, float_rel_tol)) ++failures;
  return failures;
}

long junction_sweep(long n, std::uint64_t seed, double float_rel_tol) {
  long failures = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : failures)
#endif
  for (long i = 0; i < n; ++i)
    if (!junction_check_at(i, seed, float_rel_tol)) ++failures;
  return failures;
}

std::vector<LCNumber> bterm_lambda_panel(long n, std::uint64_t seed, TruncationPolicy policy) {
  if (n < 1) throw std::invalid_argument("bterm_lambda_panel: need at least 1 lambda");
  std::vector<LCNumber> panel;
  panel.reserve(static_cast<std::size_t>(n));
  panel.push_back(LCNumber(policy));  // lambda = 0 exactly
  for (long i = 1; i < n; ++i) {
    std::mt19937_64 g = rng_at(seed, i);
    const Rational st = -draw_rational(g, 500, 50, false);
    if (i % 2 == 1) {
      panel.push_back(LCNumber::from_real(st, policy));  // standard lambda < 0
    } else {
      panel.push_back(monad_member(g, st, policy));  // in the monad of st < 0
    }
  }
  return panel;
}

long bterm_zero_sweep_serial(const std::vector<LCNumber>& lambdas, const Rational& c) {
  long failures = 0;
  for (const LCNumber& lambda : lambdas)
    if (!bterm_is_zero(lambda, c)) ++failures;
  return failures;
}

long bterm_zero_sweep(const std::vector<LCNumber>& lambdas, const Rational& c) {
  const long n = static_cast<long>(lambdas.size());
  long failures = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : failures)
#endif
  for (long i = 0; i < n; ++i)
    if (!bterm_is_zero(lambdas[static_cast<std::size_t>(i)], c)) ++failures;
  return failures;
}

double bterm_residual_sweep_serial(const std::vector<double>& lambdas, double c,
                                   TruncationPolicy policy) {
  double worst = 0.0;
  for (double lambda : lambdas) worst = std::max(worst, bterm_residual(lambda, c, policy));
  return worst;
}

double bterm_residual_sweep(const std::vector<double>& lambdas, double c,
                            TruncationPolicy policy) {
  const long n = static_cast<long>(lambdas.size());
  double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst)
#endif
  for (long i = 0; i < n; ++i)
    worst = std::max(worst, bterm_residual(lambdas[static_cast<std::size_t>(i)], c, policy));
  return worst;
}

FieldLawStats field_law_batch_serial(long n, std::uint64_t seed, TruncationPolicy policy) {
  FieldLawStats stats;
  for (long i = 0; i < n; ++i) field_laws_at(i, seed, policy, stats);
  return stats;
}

FieldLawStats field_law_batch(long n, std::uint64_t seed, TruncationPolicy policy) {
#ifdef _OPENMP
  std::vector<FieldLawStats> parts(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    FieldLawStats local;
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) field_laws_at(i, seed, policy, local);
    parts[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  FieldLawStats total;
  for (const FieldLawStats& part : parts) {
    total.checks += part.checks;
    total.failures += part.failures;
    for (std::size_t law = 0; law < part.failures_by_law.size(); ++law)
      total.failures_by_law[law] += part.failures_by_law[law];
  }
  return total;
#else
  return field_law_batch_serial(n, seed, policy);
#endif
}

}  // namespace hf::scan
