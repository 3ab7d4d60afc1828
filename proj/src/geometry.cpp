#include "mhha/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace mhha {

void VehicleGeometry::validate() const {
  if (!(length > 0.0)) throw std::invalid_argument("vehicle length must be positive");
  if (!(width > 0.0)) throw std::invalid_argument("vehicle width must be positive");
  if (!(wheelbase > 0.0 && wheelbase < length)) throw std::invalid_argument("wheelbase must lie in (0, length)");
  if (!(rear_overhang >= 0.0 && rear_overhang <= length - wheelbase)) {
    throw std::invalid_argument("rear_overhang must lie in [0, length - wheelbase]");
  }
}

DiskCover disk_cover(const VehicleGeometry& geometry, int n) {
  if (n < 1) throw std::invalid_argument("disk_cover needs at least one disk");
  const double l = geometry.length;
  const double w = geometry.width;
  DiskCover cover;
  cover.n = n;
  cover.r = std::sqrt(l * l / (n * n) + w * w / 4.0);
  cover.d = 2.0 * std::sqrt(cover.r * cover.r - w * w / 4.0);
  const double mid = 0.5 * (n - 1);
  cover.centers.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    cover.centers.push_back(geometry.center_offset() + (k - mid) * cover.d);
  }
  return cover;
}

Point2 world_to_body(const Pose& vehicle_pose, Point2 world_point) {
  const double xh = world_point.x - vehicle_pose.x();
  const double yh = world_point.y - vehicle_pose.y();
  const double c = std::cos(-vehicle_pose.theta());
  const double s = std::sin(-vehicle_pose.theta());
  return {c * xh - s * yh, s * xh + c * yh};
}

Point2 body_to_world(const Pose& vehicle_pose, Point2 body_point) {
  const double c = std::cos(vehicle_pose.theta());
  const double s = std::sin(vehicle_pose.theta());
  return {vehicle_pose.x() + c * body_point.x - s * body_point.y,
          vehicle_pose.y() + s * body_point.x + c * body_point.y};
}

bool coarse_clear(const Pose& vehicle_pose, const DiskCover& cover, Point2 point) {
  const double c = std::cos(vehicle_pose.theta());
  const double s = std::sin(vehicle_pose.theta());
  const double r2 = cover.r * cover.r;
  for (double cx : cover.centers) {
    const double dx = point.x - (vehicle_pose.x() + c * cx);
    const double dy = point.y - (vehicle_pose.y() + s * cx);
    if (dx * dx + dy * dy <= r2) return false;
  }
  return true;
}

bool point_in_rectangle(Point2 body_point, const VehicleGeometry& geometry) {
  return body_point.x >= -geometry.rear_overhang && body_point.x <= geometry.length - geometry.rear_overhang &&
         std::abs(body_point.y) <= 0.5 * geometry.width;
}

ObstacleSet::ObstacleSet(std::vector<Point2> points, double bucket_size)
    : points_(std::move(points)), bucket_size_(bucket_size) {
  if (!(bucket_size_ > 0.0)) throw std::invalid_argument("bucket size must be positive");
  if (points_.empty()) return;
  double max_x = points_.front().x;
  double max_y = points_.front().y;
  min_x_ = points_.front().x;
  min_y_ = points_.front().y;
  for (const auto& p : points_) {
    min_x_ = std::min(min_x_, p.x);
    min_y_ = std::min(min_y_, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  nbx_ = static_cast<int>(std::floor((max_x - min_x_) / bucket_size_)) + 1;
  nby_ = static_cast<int>(std::floor((max_y - min_y_) / bucket_size_)) + 1;

  // Counting sort of point indices by bucket.
  const auto nb = static_cast<std::size_t>(nbx_) * static_cast<std::size_t>(nby_);
  std::vector<std::size_t> bucket_of(points_.size());
  bucket_start_.assign(nb + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto b = static_cast<std::size_t>(bucket_y(points_[i].y)) * static_cast<std::size_t>(nbx_) +
                   static_cast<std::size_t>(bucket_x(points_[i].x));
    bucket_of[i] = b;
    ++bucket_start_[b + 1];
  }
  for (std::size_t b = 0; b < nb; ++b) bucket_start_[b + 1] += bucket_start_[b];
  order_.resize(points_.size());
  std::vector<std::size_t> fill(bucket_start_.begin(), bucket_start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) order_[fill[bucket_of[i]]++] = i;
}

int ObstacleSet::bucket_x(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - min_x_) / bucket_size_)), 0, nbx_ - 1);
}

int ObstacleSet::bucket_y(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - min_y_) / bucket_size_)), 0, nby_ - 1);
}

namespace {

bool point_hits(const Pose& pose, const VehicleGeometry& geometry, const DiskCover& cover, Point2 p) {
  return !coarse_clear(pose, cover, p) && point_in_rectangle(world_to_body(pose, p), geometry);
}

}  // namespace

bool vehicle_collides(const Pose& vehicle_pose, const VehicleGeometry& geometry, const DiskCover& cover,
                      const ObstacleSet& obstacles) {
  const double c = std::cos(vehicle_pose.theta());
  const double s = std::sin(vehicle_pose.theta());
  auto hit = [&](Point2 p) { return point_hits(vehicle_pose, geometry, cover, p); };
  if (cover.centers.size() == 1) {
    const Point2 center{vehicle_pose.x() + c * cover.centers.front(), vehicle_pose.y() + s * cover.centers.front()};
    return obstacles.any_near(center, cover.r, hit);
  }
  // Query around the segment spanned by the disk centers.
  const double first = cover.centers.front();
  const double last = cover.centers.back();
  const double half_span = 0.5 * (last - first);
  const double mid = 0.5 * (first + last);
  const Point2 center{vehicle_pose.x() + c * mid, vehicle_pose.y() + s * mid};
  return obstacles.any_near(center, half_span + cover.r, hit);
}

bool vehicle_collides_linear(const Pose& vehicle_pose, const VehicleGeometry& geometry, const DiskCover& cover,
                             std::span<const Point2> points) {
  return std::any_of(points.begin(), points.end(),
                     [&](Point2 p) { return point_hits(vehicle_pose, geometry, cover, p); });
}

std::vector<Point2> vehicle_corners(const Pose& vehicle_pose, const VehicleGeometry& geometry) {
  const double rear = -geometry.rear_overhang;
  const double front = geometry.length - geometry.rear_overhang;
  const double half_w = 0.5 * geometry.width;
  return {body_to_world(vehicle_pose, {rear, -half_w}), body_to_world(vehicle_pose, {front, -half_w}),
          body_to_world(vehicle_pose, {front, half_w}), body_to_world(vehicle_pose, {rear, half_w})};
}

}  // namespace mhha
