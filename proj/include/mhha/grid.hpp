#pragma once

// Workspace discretization: duplicate-detection keys for hybrid states and the
// obstacle-aware 2-D distance field used as the holonomic heuristic.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "mhha/geometry.hpp"
#include "mhha/vehicle.hpp"

namespace mhha {

struct GridSpec {
  double x_min = -21.0;
  double x_max = 21.0;
  double y_min = -1.0;
  double y_max = 11.0;
  double cell_size = 0.3;
  int heading_bins = 72;

  void validate() const;
  int nx() const;
  int ny() const;
  bool contains(double x, double y) const { return x >= x_min && x <= x_max && y >= y_min && y <= y_max; }
  /// Column/row of the containing cell; the upper workspace edges fold into the last cell.
  int column(double x) const;
  int row(double y) const;
  Point2 cell_center(int ix, int iy) const {
    return {x_min + (ix + 0.5) * cell_size, y_min + (iy + 0.5) * cell_size};
  }
  int heading_bin(double theta) const;
};

struct CellKey {
  int ix = 0;
  int iy = 0;
  int itheta = 0;
  Gear gear = Gear::Forward;

  friend bool operator==(const CellKey&, const CellKey&) = default;
  /// Same planar cell and heading bin, ignoring gear.
  bool same_place(const CellKey& o) const { return ix == o.ix && iy == o.iy && itheta == o.itheta; }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.ix) * 73856093u;
    h ^= static_cast<std::size_t>(k.iy) * 19349663u;
    h ^= static_cast<std::size_t>(k.itheta) * 83492791u;
    h ^= k.gear == Gear::Forward ? 0u : 0x9e3779b9u;
    return h;
  }
};

/// Throws std::out_of_range when the pose lies outside the workspace.
CellKey discretize(const Pose& pose, Gear gear, const GridSpec& spec);

/// Row-major blocked-cell mask.
struct OccupancyMask {
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> blocked;

  OccupancyMask() = default;
  OccupancyMask(int nx_, int ny_) : nx(nx_), ny(ny_), blocked(static_cast<std::size_t>(nx_) * ny_, 0) {}
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
  bool is_blocked(int ix, int iy) const { return blocked[index(ix, iy)] != 0; }
  void set_blocked(int ix, int iy, bool b = true) { blocked[index(ix, iy)] = b ? 1 : 0; }
};

/// A cell is blocked iff an obstacle point lies inside it or within `inflation`
/// of its center.
OccupancyMask build_occupancy(const GridSpec& spec, const ObstacleSet& obstacles, double inflation);

/// Length of an 8-connected path made of `axial` straight and `diagonal` diagonal moves.
inline double octile_value(double cell_size, long axial, long diagonal) {
  return cell_size * (static_cast<double>(axial) + static_cast<double>(diagonal) * std::numbers::sqrt2);
}

class DistanceField {
 public:
  static constexpr double kUnreachable = std::numeric_limits<double>::infinity();

  DistanceField() = default;
  DistanceField(GridSpec spec, std::vector<double> values) : spec_(spec), values_(std::move(values)) {}

  const GridSpec& spec() const { return spec_; }
  double at(int ix, int iy) const { return values_[static_cast<std::size_t>(iy) * spec_.nx() + ix]; }
  const std::vector<double>& values() const { return values_; }

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Exact 8-connected shortest distances to the goal cell (axis step = cell_size,
/// diagonal step = cell_size * sqrt 2). Blocked and unreachable cells hold +inf.
/// Throws std::invalid_argument when the goal cell is blocked, std::out_of_range
/// when it is outside the workspace.
DistanceField dijkstra_field(const GridSpec& spec, const OccupancyMask& blocked, Point2 goal);

/// Value of the containing cell. Throws std::out_of_range outside the workspace.
double field_lookup(const DistanceField& field, double x, double y);

}  // namespace mhha
