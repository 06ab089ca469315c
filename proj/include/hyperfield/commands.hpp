// Hyperfield - the work behind the CLI subcommands
//
// Each run_* function executes one subcommand end to end: compute, write the
// report artifacts under the configured output directory, and return whether
// every checked property passed (the CLI maps that to the exit status).

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "hyperfield/geodesic.hpp"
#include "hyperfield/line_element.hpp"

namespace hf {

enum class OutputFormat : std::uint8_t { Csv, Json };

std::string to_string(OutputFormat format);

struct RunConfig {
  PhysicalConstants constants = PhysicalConstants::geometric();
  TruncationPolicy policy{};
  std::filesystem::path out_dir = "out";
  OutputFormat sample_format = OutputFormat::Csv;
  std::uint64_t seed = 0;
};

struct TransitionArgs {
  Rational a{1};
  long sup_samples = 100001;     // grid (and random) points for the sup scan
  long table_samples = 501;      // rows in the emitted sample table
  std::optional<double> lo, hi;  // scan range; defaults to [-8a, 4a]
  double float_rel_tol = 1e-12;
  bool check_bound = true;       // run the sup-bound scan and gate on it
};

// Emits transition_samples.{csv,json} and transition_report.json.
// Pass: exact + float junction agreement and, with check_bound, the sup
// bound (grid, random sampling, and analytic extremum all within 2/a).
bool run_transition(const RunConfig& config, const TransitionArgs& args);

struct TransformArgs {
  Rational R{4};
  Rational dR_order{3};
  Rational sin_theta{1, 2};
};

// Emits transform_report.json. Pass: standardized coefficients equal the
// regime's reference element exactly; inside/at the horizon the b-term is
// the zero series; at the horizon st(f_M) is unlimited with st(f_M dR) = 0;
// and f_M(lambda) dR is infinitesimal across the reference lambda panel.
bool run_transform(const RunConfig& config, const TransformArgs& args);

struct GeodesicArgs {
  Chart chart = Chart::U;
  RayDirection direction = RayDirection::Ingoing;
  double from = 4;
  std::optional<double> to;  // default: half the Schwarzschild radius
  IntegratorConfig integrator{};
};

// Emits trajectory.csv and geodesic_report.json. Pass: the integration
// status matches the chart's prediction — blow-up iff the marched interval
// meets the horizon on a chart/direction whose slope has a pole there.
bool run_geodesic(const RunConfig& config, const GeodesicArgs& args);

}  // namespace hf
