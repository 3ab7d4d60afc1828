#pragma once

// Parallel-parking scenarios and their JSON file format.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhha/geometry.hpp"
#include "mhha/grid.hpp"
#include "mhha/search_config.hpp"
#include "mhha/vehicle.hpp"

namespace mhha {

struct ParkingSpot {
  double depth = 3.0;
  double length = 7.2;
  /// x of the spot's midpoint along the curb.
  double center_x = 0.0;
  /// y of the back wall; the curb line sits at back_y + depth.
  double back_y = 0.0;

  double left() const { return center_x - 0.5 * length; }
  double right() const { return center_x + 0.5 * length; }
  double curb_y() const { return back_y + depth; }
};

struct ParkingLayout {
  GridSpec workspace;
  ParkingSpot spot;
  /// Maximum distance between neighbouring wall points.
  double point_spacing = 0.1;
};

struct Scenario {
  std::string name;
  GridSpec workspace;
  ParkingSpot spot;
  double point_spacing = 0.1;
  std::vector<Point2> extra_points;
  ObstacleSet obstacles;
  Pose start;
  Pose goal;
  VehicleGeometry vehicle;
  VehicleLimits limits;
  SearchConfig search;

  double turning_radius() const { return limits.turning_radius(vehicle.wheelbase); }
};

/// Wall points of the curb (outside the spot opening), the spot's sides and
/// back, and the upper workspace boundary. Throws std::invalid_argument for
/// non-positive dimensions or a spot that does not fit in the workspace.
std::vector<Point2> build_parallel_parking(const ParkingLayout& layout);

enum class ParkingCase { ForwardParking, BackwardParking };

/// The two parallel-parking experiments: 42 m x 12 m workspace, 7.2 m x 3.0 m
/// spot, goal (-1.35, 1.5, 0), start (-9, 8, 0) or (12, 8, 0).
Scenario parking_scenario(ParkingCase which);

/// Rebuilds `obstacles` from the layout fields and `extra_points`.
void rebuild_obstacles(Scenario& scenario);

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ScenarioError with the offending location or field on bad input.
Scenario load_scenario(const std::filesystem::path& file);
Scenario parse_scenario(const std::string& text, const std::string& source_name = "<string>");
std::string dump_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& file);

/// Every violated invariant, one message per violation; empty when valid.
std::vector<std::string> validate(const Scenario& scenario);
/// Legal but questionable settings.
std::vector<std::string> warnings(const Scenario& scenario);

}  // namespace mhha
