#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "mhha/vehicle.hpp"
#include "support/oracles.hpp"

using namespace mhha;
using std::numbers::pi;

namespace {

/// Fourth-order Runge-Kutta integration of the single-track model in arc length.
Pose rk4(Pose p, Gear gear, double phi, double ds, double wheelbase, int steps = 2000) {
  const double sg = gear_sign(gear);
  const double h = ds / steps;
  double x = p.x(), y = p.y(), th = p.theta();
  const double k = std::tan(phi) / wheelbase;
  auto f = [&](double t) { return std::array<double, 3>{sg * std::cos(t), sg * std::sin(t), sg * k}; };
  for (int i = 0; i < steps; ++i) {
    const auto k1 = f(th);
    const auto k2 = f(th + 0.5 * h * k1[2]);
    const auto k3 = f(th + 0.5 * h * k2[2]);
    const auto k4 = f(th + h * k3[2]);
    x += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    y += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    th += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
  }
  return Pose(x, y, th);
}

void check_close(const Pose& a, const Pose& b, double tol) {
  CHECK(std::abs(a.x() - b.x()) < tol);
  CHECK(std::abs(a.y() - b.y()) < tol);
  CHECK(std::abs(normalize_angle(a.theta() - b.theta())) < tol);
}

}  // namespace

TEST_CASE("integrate_arc straight steps") {
  check_close(integrate_arc(Pose(0, 0, 0), Gear::Forward, 0.0, 1.0, 2.7, 0.6), Pose(1, 0, 0), 1e-15);
  check_close(integrate_arc(Pose(0, 0, 0), Gear::Reverse, 0.0, 1.0, 2.7, 0.6), Pose(-1, 0, 0), 1e-15);
}

TEST_CASE("integrate_arc quarter turn lands on (R, R, pi/2)") {
  const double L = 2.7;
  const double R = L / std::tan(0.6);
  const Pose end = integrate_arc(Pose(0, 0, 0), Gear::Forward, 0.6, R * pi / 2, L, 0.6);
  check_close(end, Pose(R, R, pi / 2), 1e-9);
  check_close(end, rk4(Pose(0, 0, 0), Gear::Forward, 0.6, R * pi / 2, L), 1e-6);
}

TEST_CASE("integrate_arc matches RK4 on random arcs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> phi(-0.6, 0.6), ds(0.01, 6.0);
  for (int k = 0; k < 200; ++k) {
    const Pose start = oracle::random_pose(rng, -10, 10);
    const Gear gear = k % 2 ? Gear::Forward : Gear::Reverse;
    const double f = phi(rng), s = ds(rng);
    check_close(integrate_arc(start, gear, f, s, 2.7, 0.6), rk4(start, gear, f, s, 2.7), 1e-6);
  }
  // Near-zero steering uses the same closed form without blowing up.
  check_close(integrate_arc(Pose(1, 2, 0.3), Gear::Forward, 1e-12, 2.0, 2.7, 0.6),
              rk4(Pose(1, 2, 0.3), Gear::Forward, 1e-12, 2.0, 2.7), 1e-6);
}

TEST_CASE("integrate_arc rejects bad input") {
  CHECK_THROWS_AS(integrate_arc(Pose(), Gear::Forward, 0.7, 1.0, 2.7, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(integrate_arc(Pose(), Gear::Forward, 0.0, 0.0, 2.7, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(integrate_arc(Pose(), Gear::Forward, 0.0, -1.0, 2.7, 0.6), std::invalid_argument);
}

TEST_CASE("successors enumerate every primitive") {
  MotionPrimitiveSet prims;
  const Pose start(0, 0, 0);
  const auto steps = successors(start, prims, 2.7, 0.6);
  REQUIRE(steps.size() == 6);
  bool straight = false;
  for (const auto& s : steps) {
    CHECK(distance(s.end_pose.position(), start.position()) <= prims.arc_length + 1e-12);
    CHECK(s.length == prims.arc_length);
    if (s.direction == Gear::Forward && s.steering == 0.0) {
      straight = true;
      check_close(s.end_pose, Pose(prims.arc_length, 0, 0), 1e-15);
    }
  }
  CHECK(straight);
  CHECK(steps.front().direction == Gear::Forward);
  CHECK(steps.back().direction == Gear::Reverse);
}

TEST_CASE("step_cost penalties") {
  PenaltyConfig none{1.0, 0.0, 0.0, 0.0};
  MotionStep fwd{Gear::Forward, 0.0, Pose(1, 0, 0), 1.0};
  MotionStep rev{Gear::Reverse, 0.0, Pose(-1, 0, 0), 1.0};
  CHECK(step_cost(fwd, std::nullopt, none) == 1.0);

  PenaltyConfig p{2.0, 5.0, 0.0, 0.0};
  CHECK(step_cost(rev, std::nullopt, p) == 2.0);
  CHECK(step_cost(fwd, rev, p) == 1.0 + 5.0);
  CHECK(step_cost(fwd, fwd, p) == 1.0);

  PenaltyConfig steer{1.0, 0.0, 0.5, 0.25};
  MotionStep left{Gear::Forward, 0.6, Pose(), 1.0};
  CHECK(step_cost(left, fwd, steer) == doctest::Approx(1.0 + 0.5 * 0.6 + 0.25 * 0.6));
  CHECK(step_cost(left, std::nullopt, steer) == doctest::Approx(1.0 + 0.25 * 0.6));
  CHECK(step_cost(Gear::Forward, 0.6, 1.0, Gear::Forward, 0.0, steer) == step_cost(left, fwd, steer));
}

TEST_CASE("VehicleLimits") {
  VehicleLimits lim;
  CHECK_NOTHROW(lim.validate());
  CHECK(lim.turning_radius(2.7) == doctest::Approx(2.7 / std::tan(0.6)));
  lim.phi_max = 0.0;
  CHECK_THROWS(lim.validate());
}
