#include "hyperfield/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hf {

std::string to_string(RayDirection direction) {
  return direction == RayDirection::Ingoing ? "in" : "out";
}

std::string to_string(TrajectoryStatus status) {
  switch (status) {
    case TrajectoryStatus::ReachedEnd: return "reached-end";
    case TrajectoryStatus::BlowUp: return "blow-up";
    case TrajectoryStatus::MaxSteps: return "max-steps";
  }
  throw std::logic_error("unreachable");
}

double radial_null_slope(Chart chart, RayDirection direction, const PhysicalConstants& consts,
                         double R) {
  const double lambda = lambda_of_R(consts, R);
  const double c = consts.c.to_double();
  if (chart == Chart::U) {
    if (direction == RayDirection::Ingoing) return 0.0;
    if (lambda == 0.0) throw std::domain_error("radial_null_slope: outgoing U slope pole at the horizon");
    return 2.0 / (c * lambda);
  }
  if (lambda == 0.0) throw std::domain_error("radial_null_slope: t-chart slope pole at the horizon");
  const double slope = 1.0 / (c * lambda);
  return direction == RayDirection::Ingoing ? -slope : slope;
}

namespace {

// Classic RK4 for dT/dR = F(R); the right-hand side does not depend on T.
double rk4_step(Chart chart, RayDirection direction, const PhysicalConstants& consts, double R,
                double T, double h) {
  const double k1 = radial_null_slope(chart, direction, consts, R);
  const double k2 = radial_null_slope(chart, direction, consts, R + 0.5 * h);
  const double k3 = k2;  // F(R + h/2) twice: no T dependence
  const double k4 = radial_null_slope(chart, direction, consts, R + h);
  return T + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Trajectory integrate_radial_null(Chart chart, RayDirection direction,
                                 const PhysicalConstants& consts, double R_start, double T_start,
                                 double R_stop, const IntegratorConfig& config) {
  if (!(R_start > 0.0) || !(R_stop > 0.0))
    throw std::invalid_argument("integrate_radial_null: radii must be > 0");
  if (!(config.initial_step > 0.0) || !(config.min_step > 0.0) || !(config.rel_tol > 0.0) ||
      !(config.coordinate_ceiling > 0.0) || config.max_steps < 1)
    throw std::invalid_argument("integrate_radial_null: invalid integrator configuration");

  Trajectory traj;
  traj.chart = chart;
  traj.direction = direction;
  traj.points.push_back({R_start, T_start, 0.0});
  if (R_start == R_stop) {
    traj.status = TrajectoryStatus::ReachedEnd;
    return traj;
  }

  const double march = R_stop > R_start ? 1.0 : -1.0;
  double R = R_start;
  double T = T_start;
  double h = march * std::min(config.initial_step, std::fabs(R_stop - R_start));

  for (long step = 0; step < config.max_steps; ++step) {
    // Clamp the final step so the trajectory ends exactly on R_stop.
    if (march * (R + h) > march * R_stop) h = R_stop - R;

    bool ok = true;
    double T_full = 0, T_half = 0, error = 0;
    try {
      T_full = rk4_step(chart, direction, consts, R, T, h);
      const double T_mid = rk4_step(chart, direction, consts, R, T, 0.5 * h);
      T_half = rk4_step(chart, direction, consts, R + 0.5 * h, T_mid, 0.5 * h);
      // Step doubling: RK4 local error ~ h^5, so the half-step pair is
      // 2^4 = 16 times more accurate and the gap/15 estimates its error.
      error = std::fabs(T_half - T_full) / 15.0;
      ok = std::isfinite(T_full) && std::isfinite(T_half);
    } catch (const std::domain_error&) {
      ok = false;  // a stage point landed on the slope pole
    }

    const double tolerance = config.rel_tol * std::max(1.0, std::fabs(T_half));
    if (ok && error <= tolerance) {
      R += h;
      T = T_half + (T_half - T_full) / 15.0;
      traj.points.push_back({R, T, error});
      traj.total_error_estimate += error;
      if (R == R_stop) {
        traj.status = TrajectoryStatus::ReachedEnd;
        return traj;
      }
      if (std::fabs(T) > config.coordinate_ceiling) {
        traj.status = TrajectoryStatus::BlowUp;
        return traj;
      }
      // Grow cautiously; the pole makes the slope arbitrarily stiff ahead.
      const double grow = error > 0.0 ? 0.9 * std::pow(tolerance / error, 0.2) : 2.0;
      h *= std::clamp(grow, 0.2, 2.0);
    } else {
      const double shrink = ok && error > 0.0 ? 0.9 * std::pow(tolerance / error, 0.2) : 0.5;
      h *= std::clamp(shrink, 0.1, 0.9);
    }
    if (std::fabs(h) < config.min_step) {
      traj.status = TrajectoryStatus::BlowUp;
      return traj;
    }
  }
  traj.status = TrajectoryStatus::MaxSteps;
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "R,T,chart,direction,local_error_estimate\n";
  const std::string chart = to_string(trajectory.chart);
  const std::string dir = to_string(trajectory.direction);
  out.precision(17);
  for (const TrajectoryPoint& p : trajectory.points)
    out << p.R << ',' << p.T << ',' << chart << ',' << dir << ',' << p.local_error << '\n';
}

}  // namespace hf
