#include "mhha/grid.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace mhha {

void GridSpec::validate() const {
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell_size must be positive");
  if (heading_bins < 1) throw std::invalid_argument("heading_bins must be at least 1");
  if (!(x_max > x_min && y_max > y_min)) throw std::invalid_argument("workspace bounds are degenerate");
}

int GridSpec::nx() const { return static_cast<int>(std::ceil((x_max - x_min) / cell_size - 1e-9)); }
int GridSpec::ny() const { return static_cast<int>(std::ceil((y_max - y_min) / cell_size - 1e-9)); }

int GridSpec::column(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - x_min) / cell_size)), 0, nx() - 1);
}

int GridSpec::row(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - y_min) / cell_size)), 0, ny() - 1);
}

int GridSpec::heading_bin(double theta) const {
  const double width = 2.0 * std::numbers::pi / heading_bins;
  const auto bin = static_cast<long>(std::lround(normalize_angle(theta) / width));
  const long m = ((bin % heading_bins) + heading_bins) % heading_bins;
  return static_cast<int>(m);
}

CellKey discretize(const Pose& pose, Gear gear, const GridSpec& spec) {
  if (!spec.contains(pose.x(), pose.y())) throw std::out_of_range("pose outside workspace");
  return {spec.column(pose.x()), spec.row(pose.y()), spec.heading_bin(pose.theta()), gear};
}

OccupancyMask build_occupancy(const GridSpec& spec, const ObstacleSet& obstacles, double inflation) {
  if (!(inflation >= 0.0)) throw std::invalid_argument("inflation must be nonnegative");
  OccupancyMask mask(spec.nx(), spec.ny());
  for (const Point2& p : obstacles.points()) {
    if (!spec.contains(p.x, p.y)) continue;
    mask.set_blocked(spec.column(p.x), spec.row(p.y));
    if (inflation <= 0.0) continue;
    const int reach = static_cast<int>(std::ceil(inflation / spec.cell_size)) + 1;
    const int cx = spec.column(p.x);
    const int cy = spec.row(p.y);
    for (int iy = std::max(0, cy - reach); iy <= std::min(mask.ny - 1, cy + reach); ++iy) {
      for (int ix = std::max(0, cx - reach); ix <= std::min(mask.nx - 1, cx + reach); ++ix) {
        if (distance(spec.cell_center(ix, iy), p) <= inflation) mask.set_blocked(ix, iy);
      }
    }
  }
  return mask;
}

DistanceField dijkstra_field(const GridSpec& spec, const OccupancyMask& blocked, Point2 goal) {
  if (!spec.contains(goal.x, goal.y)) throw std::out_of_range("goal outside workspace");
  const int nx = spec.nx();
  const int ny = spec.ny();
  if (blocked.nx != nx || blocked.ny != ny) throw std::invalid_argument("mask does not match grid");
  const int gx = spec.column(goal.x);
  const int gy = spec.row(goal.y);
  if (blocked.is_blocked(gx, gy)) throw std::invalid_argument("goal cell is blocked");

  const auto n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<double> value(n, DistanceField::kUnreachable);
  // Distances are kept as (axial, diagonal) move counts so that the reported
  // value is a fixed function of the optimal move mix.
  std::vector<long> axial(n, 0);
  std::vector<long> diagonal(n, 0);
  std::vector<std::uint8_t> done(n, 0);

  using Item = std::tuple<double, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  value[blocked.index(gx, gy)] = 0.0;
  open.emplace(0.0, gx, gy);
  while (!open.empty()) {
    const auto [d, x, y] = open.top();
    open.pop();
    const std::size_t here = blocked.index(x, y);
    if (done[here]) continue;
    done[here] = 1;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int ax = x + dx;
        const int ay = y + dy;
        if (ax < 0 || ay < 0 || ax >= nx || ay >= ny || blocked.is_blocked(ax, ay)) continue;
        const std::size_t there = blocked.index(ax, ay);
        if (done[there]) continue;
        const bool diag = dx != 0 && dy != 0;
        const long a = axial[here] + (diag ? 0 : 1);
        const long g = diagonal[here] + (diag ? 1 : 0);
        const double candidate = octile_value(spec.cell_size, a, g);
        if (candidate < value[there]) {
          value[there] = candidate;
          axial[there] = a;
          diagonal[there] = g;
          open.emplace(candidate, ax, ay);
        }
      }
    }
  }
  return DistanceField(spec, std::move(value));
}

double field_lookup(const DistanceField& field, double x, double y) {
  const GridSpec& spec = field.spec();
  if (!spec.contains(x, y)) throw std::out_of_range("field query outside workspace");
  return field.at(spec.column(x), spec.row(y));
}

}  // namespace mhha
