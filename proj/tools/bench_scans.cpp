// Times each scan kernel's serial reference against its parallel front-end
// on a sizeable workload, verifies they produce identical results, and
// prints a speedup table.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperfield/scan.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& work) {
  const auto start = Clock::now();
  work();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void print_row(const std::string& kernel, long n, double serial_ms, double parallel_ms,
               bool identical) {
  std::printf("%-22s %10ld %12.1f %12.1f %9.2fx   %s\n", kernel.c_str(), n, serial_ms,
              parallel_ms, serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP off: parallel front-ends fall back to the serial loops\n");
#endif
  std::printf("%-22s %10s %12s %12s %10s\n", "kernel", "n", "serial ms", "parallel ms",
              "speedup");

  const hf::TransitionSpec<double> spec(0.75);
  const double lo = -6.0, hi = 3.0;
  const std::uint64_t seed = 42;

  {
    const long n = 4000000;
    std::vector<hf::scan::SampleRow> serial, parallel;
    const double t_serial = time_ms([&] { serial = hf::scan::transition_table_serial(spec, lo, hi, n); });
    const double t_parallel = time_ms([&] { parallel = hf::scan::transition_table(spec, lo, hi, n); });
    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
      same = serial[i].x == parallel[i].x && serial[i].h == parallel[i].h &&
             serial[i].hp == parallel[i].hp && serial[i].branch == parallel[i].branch;
    print_row("transition_table", n, t_serial, t_parallel, same);
  }

  {
    const long n = 20000000;
    hf::scan::MaxAbsResult serial, parallel;
    const double t_serial = time_ms([&] { serial = hf::scan::max_abs_scan_serial(spec, lo, hi, n); });
    const double t_parallel = time_ms([&] { parallel = hf::scan::max_abs_scan(spec, lo, hi, n); });
    const bool same = serial.value == parallel.value && serial.arg == parallel.arg &&
                      serial.index == parallel.index;
    print_row("max_abs_scan", n, t_serial, t_parallel, same);
  }

  {
    const long n = 5000000;
    hf::scan::MaxAbsResult serial, parallel;
    const double t_serial =
        time_ms([&] { serial = hf::scan::max_abs_random_serial(spec, lo, hi, n, seed); });
    const double t_parallel =
        time_ms([&] { parallel = hf::scan::max_abs_random(spec, lo, hi, n, seed); });
    const bool same = serial.value == parallel.value && serial.arg == parallel.arg &&
                      serial.index == parallel.index;
    print_row("max_abs_random", n, t_serial, t_parallel, same);
  }

  {
    const long n = 2000;
    long serial = 0, parallel = 0;
    const double t_serial = time_ms([&] { serial = hf::scan::junction_sweep_serial(n, seed, 1e-12); });
    const double t_parallel = time_ms([&] { parallel = hf::scan::junction_sweep(n, seed, 1e-12); });
    print_row("junction_sweep", n, t_serial, t_parallel, serial == parallel);
  }

  {
    const long n = 3000;
    const std::vector<hf::LCNumber> panel = hf::scan::bterm_lambda_panel(n, seed);
    long serial = 0, parallel = 0;
    const double t_serial =
        time_ms([&] { serial = hf::scan::bterm_zero_sweep_serial(panel, hf::Rational(1)); });
    const double t_parallel =
        time_ms([&] { parallel = hf::scan::bterm_zero_sweep(panel, hf::Rational(1)); });
    print_row("bterm_zero_sweep", n, t_serial, t_parallel, serial == parallel);
  }

  {
    const long n = 20000;
    hf::scan::FieldLawStats serial, parallel;
    const double t_serial = time_ms([&] { serial = hf::scan::field_law_batch_serial(n, seed); });
    const double t_parallel = time_ms([&] { parallel = hf::scan::field_law_batch(n, seed); });
    print_row("field_law_batch", n, t_serial, t_parallel, serial == parallel);
  }

  return 0;
}
