#pragma once

#include <vector>

#include "mhha/vehicle.hpp"

namespace mhha {

struct SearchConfig {
  /// Suboptimality factor: an inadmissible queue runs while its minimum key is
  /// within omega_factor of the anchor's.
  double omega_factor = 2.0;
  /// Analytic (Reeds-Shepp) expansion is attempted every `setvalue` iterations.
  long setvalue = 5;
  long max_iterations = 2'000'000;
  /// One entry per inadmissible queue; an empty list gives the anchor-only search.
  std::vector<double> inflation_factors{2.0};
  PenaltyConfig penalties;
  MotionPrimitiveSet primitives;
  /// Keep separate anchor / inadmissible closed sets instead of closing a node
  /// in every queue at once.
  bool split_closed_sets = false;
  /// Sample spacing for collision checks along primitives and shortcut curves.
  double collision_spacing = 0.1;
  /// Inflation of obstacle cells for the holonomic distance field.
  double occupancy_inflation = 0.0;
  int disk_count = 1;
  /// Record every expansion (memory heavy).
  bool record_trace = false;
};

}  // namespace mhha
