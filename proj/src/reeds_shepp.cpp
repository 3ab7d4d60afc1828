#include "mhha/reeds_shepp.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace mhha {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZero = 10.0 * std::numeric_limits<double>::epsilon();
// Segments shorter than this (in turning radii) are dropped from the output.
constexpr double kNegligible = 1e-10;

enum Seg : unsigned char { L, S, R, NOP };

// Segment kind patterns, indexed by the formulas below.
constexpr std::array<std::array<Seg, 5>, 18> kWords{{
    {L, R, L, NOP, NOP},  // 0
    {R, L, R, NOP, NOP},  // 1
    {L, R, L, R, NOP},    // 2
    {R, L, R, L, NOP},    // 3
    {L, R, S, L, NOP},    // 4
    {R, L, S, R, NOP},    // 5
    {L, S, R, L, NOP},    // 6
    {R, S, L, R, NOP},    // 7
    {L, R, S, R, NOP},    // 8
    {R, L, S, L, NOP},    // 9
    {R, S, R, L, NOP},    // 10
    {L, S, L, R, NOP},    // 11
    {L, S, R, NOP, NOP},  // 12
    {R, S, L, NOP, NOP},  // 13
    {L, S, L, NOP, NOP},  // 14
    {R, S, R, NOP, NOP},  // 15
    {L, R, S, L, R},      // 16
    {R, L, S, R, L},      // 17
}};

double mod2pi(double x) {
  double v = std::fmod(x, 2.0 * kPi);
  if (v < -kPi) {
    v += 2.0 * kPi;
  } else if (v > kPi) {
    v -= 2.0 * kPi;
  }
  return v;
}

void polar(double x, double y, double& r, double& theta) {
  r = std::hypot(x, y);
  theta = std::atan2(y, x);
}

void tau_omega(double u, double v, double xi, double eta, double phi, double& tau, double& omega) {
  const double delta = mod2pi(u - v);
  const double a = std::sin(u) - std::sin(delta);
  const double b = std::cos(u) - std::cos(delta) - 1.0;
  const double t1 = std::atan2(eta * a - xi * b, xi * a + eta * b);
  const double t2 = 2.0 * (std::cos(delta) - std::cos(v) - std::cos(u)) + 3.0;
  tau = (t2 < 0.0) ? mod2pi(t1 + kPi) : mod2pi(t1);
  omega = mod2pi(tau - u + v - phi);
}

// The primitive solvers work in a normalized frame: start at the origin facing
// +x, unit turning radius, goal at (x, y, phi).

bool lp_sp_lp(double x, double y, double phi, double& t, double& u, double& v) {
  polar(x - std::sin(phi), y - 1.0 + std::cos(phi), u, t);
  if (t >= -kZero) {
    v = mod2pi(phi - t);
    if (v >= -kZero) return true;
  }
  return false;
}

bool lp_sp_rp(double x, double y, double phi, double& t, double& u, double& v) {
  double t1 = 0.0;
  double u1 = 0.0;
  polar(x + std::sin(phi), y - 1.0 - std::cos(phi), u1, t1);
  u1 = u1 * u1;
  if (u1 >= 4.0) {
    u = std::sqrt(u1 - 4.0);
    const double theta = std::atan2(2.0, u);
    t = mod2pi(t1 + theta);
    v = mod2pi(t - phi);
    return t >= -kZero && v >= -kZero;
  }
  return false;
}

bool lp_rm_l(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x - std::sin(phi);
  const double eta = y - 1.0 + std::cos(phi);
  double u1 = 0.0;
  double theta = 0.0;
  polar(xi, eta, u1, theta);
  if (u1 <= 4.0) {
    u = -2.0 * std::asin(0.25 * u1);
    t = mod2pi(theta + 0.5 * u + kPi);
    v = mod2pi(phi - t + u);
    return t >= -kZero && u <= kZero;
  }
  return false;
}

bool lp_rup_lum_rm(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  const double rho = 0.25 * (2.0 + std::hypot(xi, eta));
  if (rho <= 1.0) {
    u = std::acos(rho);
    tau_omega(u, -u, xi, eta, phi, t, v);
    return t >= -kZero && v <= kZero;
  }
  return false;
}

bool lp_rum_lum_rp(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  const double rho = (20.0 - xi * xi - eta * eta) / 16.0;
  if (rho >= 0.0 && rho <= 1.0) {
    u = -std::acos(rho);
    if (u >= -0.5 * kPi) {
      tau_omega(u, u, xi, eta, phi, t, v);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

bool lp_rm_sm_lm(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x - std::sin(phi);
  const double eta = y - 1.0 + std::cos(phi);
  double rho = 0.0;
  double theta = 0.0;
  polar(xi, eta, rho, theta);
  if (rho >= 2.0) {
    const double r = std::sqrt(rho * rho - 4.0);
    u = 2.0 - r;
    t = mod2pi(theta + std::atan2(r, -2.0));
    v = mod2pi(phi - 0.5 * kPi - t);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

bool lp_rm_sm_rm(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  double rho = 0.0;
  double theta = 0.0;
  polar(-eta, xi, rho, theta);
  if (rho >= 2.0) {
    t = theta;
    u = 2.0 - rho;
    v = mod2pi(t + 0.5 * kPi - phi);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

bool lp_rm_s_lm_rp(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  double rho = 0.0;
  double theta = 0.0;
  polar(xi, eta, rho, theta);
  if (rho >= 2.0) {
    u = 4.0 - std::sqrt(rho * rho - 4.0);
    if (u <= kZero) {
      t = mod2pi(std::atan2((4.0 - u) * xi - 2.0 * eta, -2.0 * xi + (u - 4.0) * eta));
      v = mod2pi(t - phi);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

// Receives (word index, signed segment lengths) for each valid solution.
using Sink = std::function<void(int, std::array<double, 5>)>;
using Solver = bool (*)(double, double, double, double&, double&, double&);
using Lengths = std::array<double, 5>;

// Runs one solver under the timeflip and reflection symmetries. `make(flipped)`
// returns the mapping from (t, u, v) to signed segment lengths; `word` and
// `reflected_word` are the kind patterns before and after swapping L and R.
template <typename Make>
void emit4(Solver solve, double x, double y, double phi, int word, int reflected_word, Make make, const Sink& sink) {
  double t = 0.0;
  double u = 0.0;
  double v = 0.0;
  if (solve(x, y, phi, t, u, v)) sink(word, make(false)(t, u, v));
  if (solve(-x, y, -phi, t, u, v)) sink(word, make(true)(-t, -u, -v));              // timeflip
  if (solve(x, -y, -phi, t, u, v)) sink(reflected_word, make(false)(t, u, v));      // reflect
  if (solve(-x, -y, phi, t, u, v)) sink(reflected_word, make(true)(-t, -u, -v));    // both
}

void enumerate(double x, double y, double phi, const Sink& sink) {
  const double hp = 0.5 * kPi;
  const double xb = x * std::cos(phi) + y * std::sin(phi);
  const double yb = x * std::sin(phi) - y * std::cos(phi);

  auto tuv = [](bool) { return [](double t, double u, double v) { return Lengths{t, u, v, 0.0, 0.0}; }; };
  auto vut = [](bool) { return [](double t, double u, double v) { return Lengths{v, u, t, 0.0, 0.0}; }; };

  // CSC
  emit4(lp_sp_lp, x, y, phi, 14, 15, tuv, sink);
  emit4(lp_sp_rp, x, y, phi, 12, 13, tuv, sink);

  // CCC, forwards and backwards
  emit4(lp_rm_l, x, y, phi, 0, 1, tuv, sink);
  emit4(lp_rm_l, xb, yb, phi, 0, 1, vut, sink);

  // CCCC
  emit4(lp_rup_lum_rm, x, y, phi, 2, 3,
        [](bool) { return [](double t, double u, double v) { return Lengths{t, u, -u, v, 0.0}; }; }, sink);
  emit4(lp_rum_lum_rp, x, y, phi, 2, 3,
        [](bool) { return [](double t, double u, double v) { return Lengths{t, u, u, v, 0.0}; }; }, sink);

  // CCSC, forwards and backwards. The fixed quarter turn changes sign under timeflip.
  auto ccsc_fwd = [hp](bool flipped) {
    return [q = flipped ? hp : -hp](double t, double u, double v) { return Lengths{t, q, u, v, 0.0}; };
  };
  auto ccsc_bwd = [hp](bool flipped) {
    return [q = flipped ? hp : -hp](double t, double u, double v) { return Lengths{v, u, q, t, 0.0}; };
  };
  emit4(lp_rm_sm_lm, x, y, phi, 4, 5, ccsc_fwd, sink);
  emit4(lp_rm_sm_rm, x, y, phi, 8, 9, ccsc_fwd, sink);
  emit4(lp_rm_sm_lm, xb, yb, phi, 6, 7, ccsc_bwd, sink);
  emit4(lp_rm_sm_rm, xb, yb, phi, 10, 11, ccsc_bwd, sink);

  // CCSCC
  auto ccscc = [hp](bool flipped) {
    return [q = flipped ? hp : -hp](double t, double u, double v) { return Lengths{t, q, u, q, v}; };
  };
  emit4(lp_rm_s_lm_rp, x, y, phi, 16, 17, ccscc, sink);
}

RSPath make_path(int word, const std::array<double, 5>& lengths, double turning_radius) {
  RSPath path;
  path.family = word;
  double total = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    const Seg kind = kWords[static_cast<std::size_t>(word)][k];
    if (kind == NOP) break;
    const double len = std::abs(lengths[k]);
    if (len < kNegligible) continue;
    path.segments.push_back({kind == L   ? SegmentKind::Left
                             : kind == R ? SegmentKind::Right
                                         : SegmentKind::Straight,
                             lengths[k] >= 0.0 ? Gear::Forward : Gear::Reverse, len});
    total += len;
  }
  path.total_length = total * turning_radius;
  return path;
}

void normalized_goal(const Pose& start, const Pose& goal, double turning_radius, double& x, double& y, double& phi) {
  if (!(turning_radius > 0.0)) throw std::invalid_argument("turning radius must be positive");
  const double dx = goal.x() - start.x();
  const double dy = goal.y() - start.y();
  const double c = std::cos(start.theta());
  const double s = std::sin(start.theta());
  x = (c * dx + s * dy) / turning_radius;
  y = (-s * dx + c * dy) / turning_radius;
  phi = normalize_angle(goal.theta() - start.theta());
}

}  // namespace

RSPath rs_shortest(const Pose& start, const Pose& goal, double turning_radius) {
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;
  normalized_goal(start, goal, turning_radius, x, y, phi);
  double best = std::numeric_limits<double>::infinity();
  int best_word = -1;
  std::array<double, 5> best_lengths{};
  enumerate(x, y, phi, [&](int word, std::array<double, 5> lengths) {
    const double len = std::abs(lengths[0]) + std::abs(lengths[1]) + std::abs(lengths[2]) + std::abs(lengths[3]) +
                       std::abs(lengths[4]);
    if (len < best) {
      best = len;
      best_word = word;
      best_lengths = lengths;
    }
  });
  if (best_word < 0) throw std::logic_error("no Reeds-Shepp family produced a path");
  return make_path(best_word, best_lengths, turning_radius);
}

std::vector<RSPath> rs_candidates(const Pose& start, const Pose& goal, double turning_radius) {
  double x = 0.0;
  double y = 0.0;
  double phi = 0.0;
  normalized_goal(start, goal, turning_radius, x, y, phi);
  std::vector<RSPath> out;
  enumerate(x, y, phi,
            [&](int word, std::array<double, 5> lengths) { out.push_back(make_path(word, lengths, turning_radius)); });
  return out;
}

Pose advance_segment(const Pose& from, SegmentKind kind, Gear gear, double distance, double turning_radius) {
  const double v = gear_sign(gear) * distance;
  const double th = from.theta();
  switch (kind) {
    case SegmentKind::Straight:
      return {from.x() + v * std::cos(th), from.y() + v * std::sin(th), th};
    case SegmentKind::Left: {
      const double th1 = th + v / turning_radius;
      return {from.x() + turning_radius * (std::sin(th1) - std::sin(th)),
              from.y() - turning_radius * (std::cos(th1) - std::cos(th)), th1};
    }
    case SegmentKind::Right: {
      const double th1 = th - v / turning_radius;
      return {from.x() - turning_radius * (std::sin(th1) - std::sin(th)),
              from.y() + turning_radius * (std::cos(th1) - std::cos(th)), th1};
    }
  }
  return from;
}

Pose rs_endpoint(const RSPath& path, const Pose& start, double turning_radius) {
  Pose p = start;
  for (const auto& seg : path.segments) {
    p = advance_segment(p, seg.kind, seg.gear, seg.length * turning_radius, turning_radius);
  }
  return p;
}

std::vector<RSSample> rs_sample(const RSPath& path, const Pose& start, double turning_radius, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("sample spacing must be positive");
  std::vector<RSSample> out;
  const Gear first_gear = path.segments.empty() ? Gear::Forward : path.segments.front().gear;
  out.push_back({start, first_gear, 0.0});
  Pose seg_start = start;
  double s0 = 0.0;
  for (const auto& seg : path.segments) {
    const double len = seg.length * turning_radius;
    // Steps of exactly `spacing`; the remainder (if any) becomes the last step.
    const auto steps = static_cast<long>(std::ceil(len / spacing - 1e-9));
    for (long k = 1; k < steps; ++k) {
      const double s = static_cast<double>(k) * spacing;
      out.push_back({advance_segment(seg_start, seg.kind, seg.gear, s, turning_radius), seg.gear, s0 + s});
    }
    seg_start = advance_segment(seg_start, seg.kind, seg.gear, len, turning_radius);
    s0 += len;
    out.push_back({seg_start, seg.gear, s0});
  }
  return out;
}

bool rs_collision_free(const RSPath& path, const Pose& start, double turning_radius, const VehicleGeometry& geometry,
                       const DiskCover& cover, const ObstacleSet& obstacles, double spacing) {
  for (const auto& sample : rs_sample(path, start, turning_radius, spacing)) {
    if (vehicle_collides(sample.pose, geometry, cover, obstacles)) return false;
  }
  return true;
}

}  // namespace mhha
