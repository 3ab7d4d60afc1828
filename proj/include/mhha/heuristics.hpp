#pragma once

#include <vector>

#include "mhha/geometry.hpp"
#include "mhha/grid.hpp"

namespace mhha {

/// Reeds-Shepp length to the goal; ignores obstacles.
double h_nonholonomic(const Pose& state, const Pose& goal, double turning_radius);

/// Distance-field value at the state's cell; ignores the vehicle's kinematics.
double h_holonomic(const Pose& state, const DistanceField& field);

/// Anchor heuristic: the larger of the two admissible components.
double h_anchor(const Pose& state, const Pose& goal, const DistanceField& field, double turning_radius);

/// Heuristic index 0 is the anchor; index i >= 1 is the anchor scaled by
/// inflation_factors[i - 1].
class HeuristicSet {
 public:
  HeuristicSet(Pose goal, const DistanceField& field, double turning_radius, std::vector<double> inflation_factors);

  /// Number of inadmissible heuristics.
  int n() const { return static_cast<int>(inflation_.size()); }
  const std::vector<double>& inflation_factors() const { return inflation_; }
  const Pose& goal() const { return goal_; }

  double anchor(const Pose& state) const { return h_anchor(state, goal_, *field_, turning_radius_); }
  /// Throws std::out_of_range for i outside [0, n].
  double h_index(int i, const Pose& state) const;
  /// Same as h_index when the anchor value is already known.
  double from_anchor(int i, double anchor_value) const;

  /// key(s, i) = g(s) + h_i(s).
  double key(double g, int i, const Pose& state) const { return g + h_index(i, state); }

 private:
  Pose goal_;
  const DistanceField* field_;
  double turning_radius_;
  std::vector<double> inflation_;
};

}  // namespace mhha
