#pragma once

// Planar poses, the world/body frame transform and the two-stage
// vehicle-vs-point-cloud collision predicate.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace mhha {

/// Wrap an angle to (-pi, pi].
inline double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Rear-axle midpoint position and heading. The heading is kept in (-pi, pi].
class Pose {
 public:
  Pose() = default;
  Pose(double x, double y, double theta) : x_(x), y_(y), theta_(normalize_angle(theta)) {}

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Point2 position() const { return {x_, y_}; }

  friend bool operator==(const Pose&, const Pose&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

/// Rectangular vehicle footprint anchored at the rear-axle midpoint.
struct VehicleGeometry {
  double length = 4.7;
  double width = 2.0;
  double wheelbase = 2.7;
  /// Distance from the rear-axle midpoint back to the rear edge.
  double rear_overhang = 1.0;

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
  /// Body-frame x of the rectangle center.
  double center_offset() const { return 0.5 * length - rear_overhang; }
};

struct DiskCover {
  int n = 1;
  double r = 0.0;
  double d = 0.0;
  /// Body-frame x coordinates of the disk centers (all on the long axis).
  std::vector<double> centers;
};

/// Covers the rectangle with n disks: r = sqrt(l^2/n^2 + w^2/4), d = 2 sqrt(r^2 - w^2/4).
/// Throws std::invalid_argument for n < 1.
DiskCover disk_cover(const VehicleGeometry& geometry, int n);

/// Translate by -(x, y), then rotate by -theta.
Point2 world_to_body(const Pose& vehicle_pose, Point2 world_point);
Point2 body_to_world(const Pose& vehicle_pose, Point2 body_point);

/// True when the point is strictly outside every cover disk, which rules out a
/// collision. False only means a collision is possible.
bool coarse_clear(const Pose& vehicle_pose, const DiskCover& cover, Point2 point);

/// Closed rectangle test in the body frame; boundary points count as inside.
bool point_in_rectangle(Point2 body_point, const VehicleGeometry& geometry);

/// Immutable obstacle point cloud with a uniform-bucket range index.
class ObstacleSet {
 public:
  ObstacleSet() = default;
  explicit ObstacleSet(std::vector<Point2> points, double bucket_size = 1.0);

  std::span<const Point2> points() const { return points_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

  /// Calls fn(point) for every point whose bucket intersects the square of
  /// half-side `radius` around `center`. This is a superset of the points
  /// within `radius`.
  template <typename Fn>
  bool any_near(Point2 center, double radius, Fn&& fn) const {
    if (points_.empty()) return false;
    const int bx0 = bucket_x(center.x - radius);
    const int bx1 = bucket_x(center.x + radius);
    const int by0 = bucket_y(center.y - radius);
    const int by1 = bucket_y(center.y + radius);
    for (int by = by0; by <= by1; ++by) {
      for (int bx = bx0; bx <= bx1; ++bx) {
        const auto b = static_cast<std::size_t>(by) * static_cast<std::size_t>(nbx_) + static_cast<std::size_t>(bx);
        for (std::size_t k = bucket_start_[b]; k < bucket_start_[b + 1]; ++k) {
          if (fn(points_[order_[k]])) return true;
        }
      }
    }
    return false;
  }

 private:
  int bucket_x(double x) const;
  int bucket_y(double y) const;

  std::vector<Point2> points_;
  double bucket_size_ = 1.0;
  double min_x_ = 0.0;
  double min_y_ = 0.0;
  int nbx_ = 0;
  int nby_ = 0;
  std::vector<std::size_t> bucket_start_;
  std::vector<std::size_t> order_;
};

/// Two-stage check: disk rejection, then the exact body-frame rectangle test.
bool vehicle_collides(const Pose& vehicle_pose, const VehicleGeometry& geometry, const DiskCover& cover,
                      const ObstacleSet& obstacles);

/// Same predicate without the spatial index; every point goes through both stages.
bool vehicle_collides_linear(const Pose& vehicle_pose, const VehicleGeometry& geometry, const DiskCover& cover,
                             std::span<const Point2> points);

/// World-frame rectangle corners in counter-clockwise order (rear-right first).
std::vector<Point2> vehicle_corners(const Pose& vehicle_pose, const VehicleGeometry& geometry);

}  // namespace mhha
