// Hyperfield - radial null geodesics in the t- and U-charts
//
// Along a radial null ray the line element vanishes, so the coordinate time
// is a function of R with chart-dependent slope:
//
//   t-chart:  lambda c^2 dt^2 - dR^2 / lambda = 0   ->  dt/dR = -+ 1/(c lambda)
//   U-chart:  lambda c^2 dU^2 - 2 c dU dR = 0       ->  dU/dR = 0 (ingoing)
//                                                       dU/dR = 2/(c lambda) (outgoing)
//
// The t-chart slope has a pole at the horizon R = 2GM/c^2 in both directions
// (coordinate time diverges logarithmically), while the ingoing U-chart
// slope is identically zero and integrates across the horizon without
// incident. The integrator is adaptive RK4 with step-doubling error control;
// it reports a blow-up when the controller collapses the step below
// min_step or the coordinate exceeds the ceiling.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hyperfield/line_element.hpp"

namespace hf {

enum class RayDirection : std::uint8_t { Ingoing, Outgoing };

std::string to_string(RayDirection direction);

// dT/dR for the radial null ray; throws std::domain_error on a slope pole
// (t-chart at the horizon, outgoing U-chart at the horizon).
double radial_null_slope(Chart chart, RayDirection direction, const PhysicalConstants& consts,
                         double R);

struct IntegratorConfig {
  double initial_step = 1e-3;        // first |dR| attempted
  double min_step = 1e-12;           // below this the run is declared a blow-up
  double rel_tol = 1e-10;            // per-step relative error target
  double coordinate_ceiling = 1e12;  // |T| beyond this is a blow-up
  long max_steps = 2000000;
};

enum class TrajectoryStatus : std::uint8_t { ReachedEnd, BlowUp, MaxSteps };

std::string to_string(TrajectoryStatus status);

struct TrajectoryPoint {
  double R = 0;
  double T = 0;
  double local_error = 0;  // step-doubling estimate for the step ending here
};

struct Trajectory {
  Chart chart = Chart::T;
  RayDirection direction = RayDirection::Ingoing;
  TrajectoryStatus status = TrajectoryStatus::ReachedEnd;
  std::vector<TrajectoryPoint> points;  // first entry is the initial condition
  double total_error_estimate = 0;      // sum of accepted local estimates
};

// Integrates T(R) from (R_start, T_start) to R_stop (marching toward R_stop
// from either side; R_start == R_stop yields the single-point trajectory).
// Both radii must be positive.
Trajectory integrate_radial_null(Chart chart, RayDirection direction,
                                 const PhysicalConstants& consts, double R_start, double T_start,
                                 double R_stop, const IntegratorConfig& config = {});

// Header row plus one line per point: R, T, chart, direction, local error.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace hf
