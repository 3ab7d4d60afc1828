#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "mhha/grid.hpp"
#include "support/oracles.hpp"

using namespace mhha;
using std::numbers::pi;

TEST_CASE("GridSpec dimensions") {
  GridSpec spec;
  CHECK(spec.nx() == 140);
  CHECK(spec.ny() == 40);
  CHECK_NOTHROW(spec.validate());
  GridSpec bad = spec;
  bad.cell_size = 0.0;
  CHECK_THROWS(bad.validate());
  bad = spec;
  bad.x_max = bad.x_min;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("discretize examples") {
  GridSpec spec;
  const CellKey k = discretize(Pose(spec.x_min, spec.y_min, 0), Gear::Reverse, spec);
  CHECK(k == CellKey{0, 0, 0, Gear::Reverse});

  CHECK(discretize(Pose(1.01, 2.01, 0.3), Gear::Forward, spec) == discretize(Pose(1.02, 2.02, 0.3), Gear::Forward, spec));
  CHECK(discretize(Pose(0, 0, -pi + 1e-9), Gear::Forward, spec) == discretize(Pose(0, 0, pi), Gear::Forward, spec));

  // Upper edges fold into the last cell.
  const CellKey top = discretize(Pose(spec.x_max, spec.y_max, 0), Gear::Forward, spec);
  CHECK(top.ix == spec.nx() - 1);
  CHECK(top.iy == spec.ny() - 1);

  CHECK_THROWS_AS(discretize(Pose(spec.x_max + 0.01, 0, 0), Gear::Forward, spec), std::out_of_range);
  CHECK_THROWS_AS(discretize(Pose(0, spec.y_min - 0.01, 0), Gear::Forward, spec), std::out_of_range);
}

TEST_CASE("heading bins cover the circle") {
  GridSpec spec;
  for (int b = 0; b < spec.heading_bins; ++b) {
    CHECK(spec.heading_bin(b * 2 * pi / spec.heading_bins) == b);
  }
  CHECK(spec.heading_bin(-2 * pi / spec.heading_bins) == spec.heading_bins - 1);
}

TEST_CASE("build_occupancy") {
  GridSpec spec{0, 10, 0, 10, 1.0, 8};
  const OccupancyMask empty = build_occupancy(spec, ObstacleSet{}, 0.0);
  for (auto b : empty.blocked) CHECK(b == 0);

  const OccupancyMask one = build_occupancy(spec, ObstacleSet({{3.5, 4.5}}), 0.0);
  int count = 0;
  for (int iy = 0; iy < 10; ++iy) {
    for (int ix = 0; ix < 10; ++ix) count += one.is_blocked(ix, iy);
  }
  CHECK(count == 1);
  CHECK(one.is_blocked(3, 4));

  CHECK_THROWS(build_occupancy(spec, ObstacleSet{}, -1.0));
}

TEST_CASE("inflated occupancy matches brute force") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2, 14);
  GridSpec spec{0, 12, 0, 9, 0.3, 8};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point2> pts;
    for (int k = 0; k < 15; ++k) pts.push_back({u(rng), u(rng)});
    for (double r : {0.0, 0.4, 1.0, 2.3}) {
      // Points outside the workspace are ignored by the planner.
      std::vector<Point2> inside;
      for (const auto& p : pts) {
        if (spec.contains(p.x, p.y)) inside.push_back(p);
      }
      const OccupancyMask got = build_occupancy(spec, ObstacleSet(pts), r);
      const OccupancyMask want = oracle::brute_force_occupancy(spec, inside, r);
      CHECK(got.blocked == want.blocked);
    }
  }
}

TEST_CASE("dijkstra_field on an empty map is the octile distance") {
  GridSpec spec{0, 7.5, 0, 4.5, 0.3, 8};
  const OccupancyMask mask(spec.nx(), spec.ny());
  const Point2 goal{2.0, 1.0};
  const DistanceField f = dijkstra_field(spec, mask, goal);
  const int gx = spec.column(goal.x), gy = spec.row(goal.y);
  CHECK(f.at(gx, gy) == 0.0);
  for (int iy = 0; iy < spec.ny(); ++iy) {
    for (int ix = 0; ix < spec.nx(); ++ix) {
      CHECK(f.at(ix, iy) == oracle::octile_closed_form(spec.cell_size, ix, iy, gx, gy));
    }
  }
}

TEST_CASE("dijkstra_field equals Bellman-Ford on random masks") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(3, 20);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int nx = dim(rng), ny = dim(rng);
    GridSpec spec{0, nx * 0.5, 0, ny * 0.5, 0.5, 8};
    OccupancyMask mask(nx, ny);
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) mask.set_blocked(ix, iy, u(rng) < 0.3);
    }
    const int gx = static_cast<int>(u(rng) * nx), gy = static_cast<int>(u(rng) * ny);
    mask.set_blocked(gx, gy, false);
    const DistanceField f = dijkstra_field(spec, mask, spec.cell_center(gx, gy));
    CHECK(f.values() == oracle::bellman_ford_field(spec, mask, gx, gy));
  }
}

TEST_CASE("dijkstra_field errors and walled goals") {
  GridSpec spec{0, 5, 0, 5, 1.0, 8};
  OccupancyMask mask(5, 5);
  for (int i = 1; i <= 3; ++i) {
    mask.set_blocked(i, 1);
    mask.set_blocked(i, 3);
    mask.set_blocked(1, i);
    mask.set_blocked(3, i);
  }
  const DistanceField f = dijkstra_field(spec, mask, {2.5, 2.5});
  CHECK(f.at(2, 2) == 0.0);
  for (int iy = 0; iy < 5; ++iy) {
    for (int ix = 0; ix < 5; ++ix) {
      if (ix != 2 || iy != 2) CHECK(std::isinf(f.at(ix, iy)));
    }
  }
  CHECK_THROWS_AS(dijkstra_field(spec, mask, {1.5, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(dijkstra_field(spec, mask, {7.0, 1.5}), std::out_of_range);
}

TEST_CASE("field_lookup") {
  GridSpec spec{0, 6, 0, 6, 1.0, 8};
  OccupancyMask mask(6, 6);
  mask.set_blocked(4, 4);
  const DistanceField f = dijkstra_field(spec, mask, {0.5, 0.5});
  CHECK(field_lookup(f, 0.5, 0.5) == 0.0);
  CHECK(field_lookup(f, 2.1, 3.2) == field_lookup(f, 2.9, 3.9));
  CHECK(std::isinf(field_lookup(f, 4.5, 4.5)));
  CHECK_THROWS_AS(field_lookup(f, -0.1, 1.0), std::out_of_range);
}
