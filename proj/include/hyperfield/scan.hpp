// Hyperfield - batch sampling and property-sweep kernels
//
// Every kernel here is a data-parallel loop over an index range. Each comes
// as a serial reference implementation (`*_serial`) and a parallel front-end
// under the plain name that partitions indices across OpenMP threads (and
// degrades to the serial loop when built without OpenMP). The two are
// bitwise identical by construction: anything random is derived from a
// per-index seed (splitmix64 mix of seed and index), per-index results land
// in preallocated slots, and reductions are order-independent — integer
// sums, or max with a smallest-index tie-break.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hyperfield/transition.hpp"

namespace hf::scan {

// splitmix64 finalizer over seed ^ golden-ratio-stepped index; the result
// seeds a fresh std::mt19937_64 per index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct SampleRow {
  double x = 0;
  double h = 0;
  double hp = 0;
  Branch branch = Branch::F;
};

// H_a and H'_a tabulated over the closed evenly spaced grid [lo, hi].
std::vector<SampleRow> transition_table_serial(const TransitionSpec<double>& spec, double lo,
                                               double hi, long n);
std::vector<SampleRow> transition_table(const TransitionSpec<double>& spec, double lo, double hi,
                                        long n);

struct MaxAbsResult {
  double value = 0;   // max |H_a(x)| seen
  double arg = 0;     // the x attaining it
  long index = -1;    // its sample index (ties: smallest)
};

// Grid scan of |H_a| over [lo, hi] with n points.
MaxAbsResult max_abs_scan_serial(const TransitionSpec<double>& spec, double lo, double hi, long n);
MaxAbsResult max_abs_scan(const TransitionSpec<double>& spec, double lo, double hi, long n);

// Same objective over n uniform random points in [lo, hi).
MaxAbsResult max_abs_random_serial(const TransitionSpec<double>& spec, double lo, double hi,
                                   long n, std::uint64_t seed);
MaxAbsResult max_abs_random(const TransitionSpec<double>& spec, double lo, double hi, long n,
                            std::uint64_t seed);

// n random rational a in (0, 10]; each must pass the exact junction report
// and the float report at float_rel_tol. Returns the failure count.
long junction_sweep_serial(long n, std::uint64_t seed, double float_rel_tol);
long junction_sweep(long n, std::uint64_t seed, double float_rel_tol);

// Deterministic panel of n lambdas for the b-term sweep: lambda = 0 first,
// then alternating standard rationals < 0 and members of monads of negative
// standard points (one or two infinitesimal terms on a half-integer grid).
std::vector<LCNumber> bterm_lambda_panel(long n, std::uint64_t seed,
                                         TruncationPolicy policy = TruncationPolicy());

// Exact mode: counts lambdas whose b-term is not the zero series.
long bterm_zero_sweep_serial(const std::vector<LCNumber>& lambdas, const Rational& c);
long bterm_zero_sweep(const std::vector<LCNumber>& lambdas, const Rational& c);

// Float-coefficient mode: the largest |coefficient| across all b-term series
// for standard lambdas <= 0 (rounding residual; exact mode gives 0).
double bterm_residual_sweep_serial(const std::vector<double>& lambdas, double c,
                                   TruncationPolicy policy = TruncationPolicy());
double bterm_residual_sweep(const std::vector<double>& lambdas, double c,
                            TruncationPolicy policy = TruncationPolicy());

struct FieldLawStats {
  long checks = 0;
  long failures = 0;
  // add-comm, add-assoc, mul-comm, mul-assoc, distributive, inverse, sub-neg
  std::array<long, 7> failures_by_law{};

  friend bool operator==(const FieldLawStats&, const FieldLawStats&) = default;
};

// n random triples of LCNumbers; per triple the seven field laws are checked
// exactly within the truncation window (comparisons via agree_through at
// cutoff min(leading exponents) + window; the inverse law strictly below
// window). Random exponents live on the grid k/6 so max_terms never bites.
FieldLawStats field_law_batch_serial(long n, std::uint64_t seed,
                                     TruncationPolicy policy = TruncationPolicy());
FieldLawStats field_law_batch(long n, std::uint64_t seed,
                              TruncationPolicy policy = TruncationPolicy());

}  // namespace hf::scan
