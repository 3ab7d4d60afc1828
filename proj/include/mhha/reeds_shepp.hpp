#pragma once

// Shortest Reeds-Shepp curves (forward and reverse motion at bounded
// curvature) between two poses.

#include <vector>

#include "mhha/geometry.hpp"
#include "mhha/vehicle.hpp"

namespace mhha {

enum class SegmentKind { Left, Straight, Right };

struct RSSegment {
  SegmentKind kind = SegmentKind::Straight;
  Gear gear = Gear::Forward;
  /// Nonnegative, in units of the turning radius.
  double length = 0.0;
};

struct RSPath {
  std::vector<RSSegment> segments;
  /// Meters.
  double total_length = 0.0;
  /// Index of the generating formula in enumeration order; -1 for an empty path.
  int family = -1;
};

struct RSSample {
  Pose pose;
  Gear gear = Gear::Forward;
  /// Arc length from the path start, meters.
  double s = 0.0;
};

/// Shortest path over all word families. Ties keep the earliest family.
RSPath rs_shortest(const Pose& start, const Pose& goal, double turning_radius);

/// Every admissible family solution, in enumeration order.
std::vector<RSPath> rs_candidates(const Pose& start, const Pose& goal, double turning_radius);

/// Samples along the path including both endpoints. Within a segment the
/// spacing is exact except for the final, shorter step.
std::vector<RSSample> rs_sample(const RSPath& path, const Pose& start, double turning_radius, double spacing);

/// Pose reached after following the whole path.
Pose rs_endpoint(const RSPath& path, const Pose& start, double turning_radius);

bool rs_collision_free(const RSPath& path, const Pose& start, double turning_radius, const VehicleGeometry& geometry,
                       const DiskCover& cover, const ObstacleSet& obstacles, double spacing);

/// Pose after driving `distance` meters (>= 0) along one segment kind.
Pose advance_segment(const Pose& from, SegmentKind kind, Gear gear, double distance, double turning_radius);

}  // namespace mhha
