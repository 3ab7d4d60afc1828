#include "mhha/vehicle.hpp"

#include <stdexcept>

namespace mhha {

void VehicleLimits::validate() const {
  if (!(a_min < 0.0 && a_max > 0.0)) throw std::invalid_argument("acceleration bounds must satisfy a_min < 0 < a_max");
  if (!(v_min <= 0.0 && v_max >= 0.0)) throw std::invalid_argument("velocity bounds must satisfy v_min <= 0 <= v_max");
  if (!(omega_max > 0.0)) throw std::invalid_argument("omega_max must be positive");
  if (!(phi_max > 0.0 && phi_max < 0.5 * std::numbers::pi)) throw std::invalid_argument("phi_max must lie in (0, pi/2)");
}

double VehicleLimits::turning_radius(double wheelbase) const { return wheelbase / std::tan(phi_max); }

Pose integrate_arc(const Pose& start, Gear direction, double steering, double ds, double wheelbase, double phi_max) {
  if (std::abs(steering) > phi_max) throw std::invalid_argument("steering angle exceeds phi_max");
  if (!(ds > 0.0)) throw std::invalid_argument("arc length must be positive");
  const double sigma = gear_sign(direction);
  const double theta = start.theta();
  if (steering == 0.0) {
    return {start.x() + sigma * ds * std::cos(theta), start.y() + sigma * ds * std::sin(theta), theta};
  }
  // Chord form of the exact arc: stable as the curvature goes to zero.
  const double kappa = std::tan(steering) / wheelbase;
  const double half = 0.5 * sigma * ds * kappa;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  const double chord = sigma * ds * sinc;
  return {start.x() + chord * std::cos(theta + half), start.y() + chord * std::sin(theta + half), theta + 2.0 * half};
}

std::vector<MotionStep> successors(const Pose& state, const MotionPrimitiveSet& primitives, double wheelbase,
                                   double phi_max) {
  std::vector<MotionStep> out;
  out.reserve(primitives.directions.size() * primitives.steering_angles.size());
  for (Gear g : primitives.directions) {
    for (double phi : primitives.steering_angles) {
      out.push_back({g, phi, integrate_arc(state, g, phi, primitives.arc_length, wheelbase, phi_max),
                     primitives.arc_length});
    }
  }
  return out;
}

double step_cost(Gear direction, double steering, double length, std::optional<Gear> previous_direction,
                 std::optional<double> previous_steering, const PenaltyConfig& penalties) {
  double cost = length * (direction == Gear::Reverse ? penalties.reverse_mult : 1.0);
  if (previous_direction && *previous_direction != direction) cost += penalties.switchback;
  if (previous_steering) cost += penalties.steer_change * std::abs(steering - *previous_steering);
  cost += penalties.steer_hold * std::abs(steering);
  return cost;
}

double step_cost(const MotionStep& step, const std::optional<MotionStep>& previous, const PenaltyConfig& penalties) {
  if (!previous) return step_cost(step.direction, step.steering, step.length, std::nullopt, std::nullopt, penalties);
  return step_cost(step.direction, step.steering, step.length, previous->direction, previous->steering, penalties);
}

}  // namespace mhha
