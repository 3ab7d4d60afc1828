#include "mhha/heuristics.hpp"

#include <algorithm>
#include <stdexcept>

#include "mhha/reeds_shepp.hpp"

namespace mhha {

double h_nonholonomic(const Pose& state, const Pose& goal, double turning_radius) {
  return rs_shortest(state, goal, turning_radius).total_length;
}

double h_holonomic(const Pose& state, const DistanceField& field) { return field_lookup(field, state.x(), state.y()); }

double h_anchor(const Pose& state, const Pose& goal, const DistanceField& field, double turning_radius) {
  const double holonomic = h_holonomic(state, field);
  if (holonomic == DistanceField::kUnreachable) return holonomic;
  return std::max(h_nonholonomic(state, goal, turning_radius), holonomic);
}

HeuristicSet::HeuristicSet(Pose goal, const DistanceField& field, double turning_radius,
                           std::vector<double> inflation_factors)
    : goal_(goal), field_(&field), turning_radius_(turning_radius), inflation_(std::move(inflation_factors)) {
  for (double w : inflation_) {
    if (!(w >= 1.0)) throw std::invalid_argument("inflation factors must be >= 1");
  }
}

double HeuristicSet::from_anchor(int i, double anchor_value) const {
  if (i < 0 || i > n()) throw std::out_of_range("heuristic index out of range");
  if (i == 0) return anchor_value;
  return inflation_[static_cast<std::size_t>(i - 1)] * anchor_value;
}

double HeuristicSet::h_index(int i, const Pose& state) const { return from_anchor(i, anchor(state)); }

}  // namespace mhha
