#include "doctest.h"

#include "hyperfield/geodesic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using hf::Chart;
using hf::IntegratorConfig;
using hf::PhysicalConstants;
using hf::RayDirection;
using hf::Trajectory;
using hf::TrajectoryStatus;

namespace {

// Closed form for the ingoing t-chart ray in geometric units:
//   t(R) = t0 - (1/c) [ (R - R0) + R_s ln|(R - R_s)/(R0 - R_s)| ].
double t_chart_ingoing_oracle(const PhysicalConstants& consts, double R0, double t0, double R) {
  const double rs = consts.schwarzschild_radius().to_double();
  const double c = consts.c.to_double();
  return t0 - ((R - R0) + rs * std::log(std::abs((R - rs) / (R0 - rs)))) / c;
}

}  // namespace

TEST_CASE("slopes match the chart algebra") {
  const PhysicalConstants geo = PhysicalConstants::geometric();

  // Ingoing U-chart: identically zero, horizon included.
  CHECK(radial_null_slope(Chart::U, RayDirection::Ingoing, geo, 4.0) == 0.0);
  CHECK(radial_null_slope(Chart::U, RayDirection::Ingoing, geo, 2.0) == 0.0);
  CHECK(radial_null_slope(Chart::U, RayDirection::Ingoing, geo, 1.0) == 0.0);

  // t-chart at R = 4 (lambda = 1/2): ingoing -2, outgoing +2.
  CHECK(radial_null_slope(Chart::T, RayDirection::Ingoing, geo, 4.0) == doctest::Approx(-2.0));
  CHECK(radial_null_slope(Chart::T, RayDirection::Outgoing, geo, 4.0) == doctest::Approx(2.0));

  // Outgoing U-chart at lambda = 1/2: 2/(c lambda) = 4.
  CHECK(radial_null_slope(Chart::U, RayDirection::Outgoing, geo, 4.0) == doctest::Approx(4.0));

  // Poles at the horizon.
  CHECK_THROWS_AS(radial_null_slope(Chart::T, RayDirection::Ingoing, geo, 2.0),
                  std::domain_error);
  CHECK_THROWS_AS(radial_null_slope(Chart::U, RayDirection::Outgoing, geo, 2.0),
                  std::domain_error);

  CHECK(hf::to_string(RayDirection::Ingoing) == "in");
  CHECK(hf::to_string(TrajectoryStatus::BlowUp) == "blow-up");
}

TEST_CASE("ingoing u-chart ray crosses the horizon with zero coordinate change") {
  const PhysicalConstants geo = PhysicalConstants::geometric();
  const Trajectory traj =
      hf::integrate_radial_null(Chart::U, RayDirection::Ingoing, geo, 4.0, 0.0, 1.0);
  CHECK(traj.status == TrajectoryStatus::ReachedEnd);
  REQUIRE(!traj.points.empty());
  CHECK(traj.points.front().R == 4.0);
  CHECK(traj.points.back().R == doctest::Approx(1.0));
  // dU/dR = 0 exactly, so U never moves and no error accumulates.
  CHECK(traj.points.back().T == 0.0);
  CHECK(traj.total_error_estimate == 0.0);
  // The path really passes through the horizon radius.
  bool crossed = false;
  for (const auto& p : traj.points) crossed = crossed || p.R <= 2.0;
  CHECK(crossed);
}

TEST_CASE("t-chart ray blows up at the horizon") {
  const PhysicalConstants geo = PhysicalConstants::geometric();
  const Trajectory traj =
      hf::integrate_radial_null(Chart::T, RayDirection::Ingoing, geo, 4.0, 0.0, 2.0);
  CHECK(traj.status == TrajectoryStatus::BlowUp);
  REQUIRE(!traj.points.empty());
  // The march stalls just outside the horizon, never reaching R = 2.
  CHECK(traj.points.back().R > 2.0);
  CHECK(traj.points.back().R < 2.0 + 1e-3);
  // dt/dR < 0 outside while R decreases, so coordinate time diverges upward.
  CHECK(traj.points.back().T > 1.0);
}

TEST_CASE("t-chart trajectory matches the closed form away from the horizon") {
  const PhysicalConstants geo = PhysicalConstants::geometric();
  const double R0 = 4.0, t0 = 0.0;
  const double R_stop = 2.0 * (1.0 + 1e-3);
  const Trajectory traj =
      hf::integrate_radial_null(Chart::T, RayDirection::Ingoing, geo, R0, t0, R_stop);
  REQUIRE(traj.status == TrajectoryStatus::ReachedEnd);
  const double expected = t_chart_ingoing_oracle(geo, R0, t0, R_stop);
  CHECK(traj.points.back().T ==
        doctest::Approx(expected).epsilon(1e-6));

  // Every recorded point sits on the closed-form curve to the same accuracy.
  for (const auto& p : traj.points) {
    CHECK(p.T == doctest::Approx(t_chart_ingoing_oracle(geo, R0, t0, p.R)).epsilon(1e-5));
  }
}

TEST_CASE("outgoing rays integrate outward in both charts") {
  const PhysicalConstants geo = PhysicalConstants::geometric();

  const Trajectory t_out =
      hf::integrate_radial_null(Chart::T, RayDirection::Outgoing, geo, 3.0, 0.0, 6.0);
  REQUIRE(t_out.status == TrajectoryStatus::ReachedEnd);
  // Outgoing slope is +1/(c lambda) > 0 outside, so t grows with R.
  CHECK(t_out.points.back().T > 0.0);
  // Mirror symmetry with the ingoing closed form: t_out(R) = -t_in(R).
  const double expected = -t_chart_ingoing_oracle(geo, 3.0, 0.0, 6.0);
  CHECK(t_out.points.back().T == doctest::Approx(expected).epsilon(1e-6));

  const Trajectory u_out =
      hf::integrate_radial_null(Chart::U, RayDirection::Outgoing, geo, 3.0, 0.0, 6.0);
  REQUIRE(u_out.status == TrajectoryStatus::ReachedEnd);
  CHECK(u_out.points.back().T > 0.0);
}

TEST_CASE("halving the tolerance moves the endpoint by less than the estimate") {
  const PhysicalConstants geo = PhysicalConstants::geometric();
  IntegratorConfig loose;
  loose.rel_tol = 1e-8;
  IntegratorConfig tight = loose;
  tight.rel_tol = loose.rel_tol / 2;

  const Trajectory a =
      hf::integrate_radial_null(Chart::T, RayDirection::Ingoing, geo, 4.0, 0.0, 3.0, loose);
  const Trajectory b =
      hf::integrate_radial_null(Chart::T, RayDirection::Ingoing, geo, 4.0, 0.0, 3.0, tight);
  REQUIRE(a.status == TrajectoryStatus::ReachedEnd);
  REQUIRE(b.status == TrajectoryStatus::ReachedEnd);
  CHECK(std::abs(a.points.back().T - b.points.back().T) < a.total_error_estimate);
  CHECK(a.total_error_estimate > 0.0);
}

TEST_CASE("degenerate and invalid integrations") {
  const PhysicalConstants geo = PhysicalConstants::geometric();

  const Trajectory still =
      hf::integrate_radial_null(Chart::U, RayDirection::Ingoing, geo, 4.0, 1.5, 4.0);
  CHECK(still.status == TrajectoryStatus::ReachedEnd);
  CHECK(still.points.size() == 1);
  CHECK(still.points.front().T == 1.5);

  CHECK_THROWS_AS(hf::integrate_radial_null(Chart::T, RayDirection::Ingoing, geo, 0.0, 0.0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(hf::integrate_radial_null(Chart::T, RayDirection::Ingoing, geo, 4.0, 0.0, -1.0),
                  std::invalid_argument);

  IntegratorConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(hf::integrate_radial_null(Chart::T, RayDirection::Ingoing, geo, 4.0, 0.0, 3.0, bad),
                  std::invalid_argument);
}

TEST_CASE("csv export lists the header and every point") {
  const PhysicalConstants geo = PhysicalConstants::geometric();
  const Trajectory traj =
      hf::integrate_radial_null(Chart::U, RayDirection::Ingoing, geo, 4.0, 0.0, 3.0);
  std::ostringstream os;
  hf::write_trajectory_csv(os, traj);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "R,T,chart,direction,local_error_estimate");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.find(",u,in,") != std::string::npos);
  }
  CHECK(rows == traj.points.size());
}
