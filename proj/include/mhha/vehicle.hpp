#pragma once

// Single-track kinematics at notional unit speed and the discrete motion
// primitives used to generate search successors.

#include <optional>
#include <vector>

#include "mhha/geometry.hpp"

namespace mhha {

enum class Gear { Forward, Reverse };

inline double gear_sign(Gear g) { return g == Gear::Forward ? 1.0 : -1.0; }
inline char gear_char(Gear g) { return g == Gear::Forward ? 'F' : 'R'; }

/// Physical bounds of the single-track model. Only phi_max constrains the
/// geometric search; the remaining bounds are carried for completeness.
struct VehicleLimits {
  double a_min = -2.0;
  double a_max = 2.0;
  double v_min = -2.0;
  double v_max = 2.0;
  double omega_max = 0.5;
  double phi_max = 0.6;

  void validate() const;
  double turning_radius(double wheelbase) const;
};

struct MotionPrimitiveSet {
  double arc_length = 0.5;
  std::vector<double> steering_angles{-0.6, 0.0, 0.6};
  std::vector<Gear> directions{Gear::Forward, Gear::Reverse};
};

struct MotionStep {
  Gear direction = Gear::Forward;
  double steering = 0.0;
  Pose end_pose;
  double length = 0.0;
};

struct PenaltyConfig {
  double reverse_mult = 2.0;
  double switchback = 3.0;
  double steer_change = 0.5;
  double steer_hold = 0.0;
};

/// Constant-steering arc of length ds. Throws std::invalid_argument when
/// |steering| > phi_max or ds <= 0.
Pose integrate_arc(const Pose& start, Gear direction, double steering, double ds, double wheelbase, double phi_max);

/// One step per (direction, steering) pair: forward block first, steering in listed order.
std::vector<MotionStep> successors(const Pose& state, const MotionPrimitiveSet& primitives, double wheelbase,
                                   double phi_max);

double step_cost(const MotionStep& step, const std::optional<MotionStep>& previous, const PenaltyConfig& penalties);

/// Same cost from the step's defining quantities.
double step_cost(Gear direction, double steering, double length, std::optional<Gear> previous_direction,
                 std::optional<double> previous_steering, const PenaltyConfig& penalties);

}  // namespace mhha
