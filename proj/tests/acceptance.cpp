// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "mhha/cli.hpp"
#include "mhha/reeds_shepp.hpp"
#include "mhha/search.hpp"
#include "support/oracles.hpp"

using namespace mhha;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }

  void note(const std::string& text) { detail = detail.empty() ? text : detail + "; " + text; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

struct ScenarioRun {
  PlanResult mhha;
  PlanResult hybrid;
  double mhha_wall = 0.0;
  double hybrid_wall = 0.0;
};

ScenarioRun run_scenario(ParkingCase c) {
  const Scenario sc = parking_scenario(c);
  ScenarioRun run;
  auto t0 = std::chrono::steady_clock::now();
  run.mhha = mhha_star(sc);
  run.mhha_wall = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  run.hybrid = hybrid_a_star(sc);
  run.hybrid_wall = seconds_since(t0);
  return run;
}

bool path_collision_free(const Scenario& sc, const PlanResult& r) {
  const std::vector<Point2> pts(sc.obstacles.points().begin(), sc.obstacles.points().end());
  for (const PathPoint& p : r.path) {
    if (!sc.workspace.contains(p.pose.x(), p.pose.y())) return false;
    if (oracle::footprint_hits_any(p.pose, sc.vehicle, pts)) return false;
  }
  return true;
}

Outcome parking_case(ParkingCase c, const ScenarioRun& run, double mhha_ref, double hybrid_ref) {
  const Scenario sc = parking_scenario(c);
  Outcome o;
  const auto within = [](double v, double ref) { return v >= 0.7 * ref && v <= 1.3 * ref; };
  o.require(run.mhha.found() && run.hybrid.found(), "a planner found no path");
  o.require(path_collision_free(sc, run.mhha), "MHHA* path collides");
  o.require(path_collision_free(sc, run.hybrid), "Hybrid A* path collides");
  o.require(within(run.mhha.path_length, mhha_ref), "MHHA* length outside +-30%");
  o.require(within(run.hybrid.path_length, hybrid_ref), "Hybrid A* length outside +-30%");
  o.require(run.mhha_wall < 60.0 && run.hybrid_wall < 60.0, "run exceeded 60 s");
  const std::string summary = fmt("MHHA* %.4f m (ref %.3f), Hybrid A* %.4f m (ref %.3f)", run.mhha.path_length,
                                  mhha_ref, run.hybrid.path_length, hybrid_ref) +
                              fmt(", %.3f s / %.3f s", run.mhha_wall, run.hybrid_wall);
  o.note(summary);
  return o;
}

Outcome dominance(const ScenarioRun& fwd, const ScenarioRun& bwd) {
  Outcome o;
  for (const ScenarioRun* r : {&fwd, &bwd}) {
    o.require(r->mhha.nodes_expanded < r->hybrid.nodes_expanded, "MHHA* did not expand fewer nodes");
    o.require(r->mhha.iterations < r->hybrid.iterations, "MHHA* did not use fewer iterations");
  }
  const std::string summary = fmt("forward nodes %.0f vs %.0f, iterations %.0f vs %.0f", fwd.mhha.nodes_expanded,
                                  fwd.hybrid.nodes_expanded, fwd.mhha.iterations, fwd.hybrid.iterations) +
                              fmt("; backward nodes %.0f vs %.0f, iterations %.0f vs %.0f", bwd.mhha.nodes_expanded,
                                  bwd.hybrid.nodes_expanded, bwd.mhha.iterations, bwd.hybrid.iterations);
  o.note(summary);
  return o;
}

Outcome collision_oracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240615);
  std::uniform_real_distribution<double> off(-6.0, 6.0);
  const VehicleGeometry g;
  const DiskCover cover = disk_cover(g, 1);
  long pairs = 0, mismatches = 0, unsound = 0, boundary = 0;
  while (pairs < 100000) {
    const Pose pose = oracle::random_pose(rng, -20, 20);
    const Point2 p{pose.x() + off(rng), pose.y() + off(rng)};
    const auto truth = oracle::footprint_contains(pose, g, p, 1e-9);
    ++pairs;
    if (truth == oracle::Containment::Boundary) {
      ++boundary;
      continue;
    }
    const bool inside = truth == oracle::Containment::Inside;
    const bool clear = coarse_clear(pose, cover, p);
    const bool two_stage = !clear && point_in_rectangle(world_to_body(pose, p), g);
    mismatches += two_stage != inside;
    unsound += clear && inside;
  }
  const double t = seconds_since(t0);
  o.require(mismatches == 0, "two-stage check disagrees with the polygon oracle");
  o.require(unsound == 0, "coarse_clear accepted an inside point");
  o.require(t < 10.0, "took longer than 10 s");
  o.note(fmt("%.0f pairs, %.0f mismatches, %.0f unsound, %.0f on boundary", pairs, mismatches, unsound, boundary) +
              fmt(", %.2f s", t));
  return o;
}

Outcome reeds_shepp_checks() {
  Outcome o;
  std::mt19937_64 rng(777);
  double worst_sym = 0.0, worst_end = 0.0;
  long not_min = 0, below_euclid = 0;
  for (int k = 0; k < 10000; ++k) {
    const double rho = 1.0 + (k % 7) * 0.75;
    const Pose s = oracle::random_pose(rng, -25, 25), g = oracle::random_pose(rng, -25, 25);
    const RSPath best = rs_shortest(s, g, rho);
    for (const RSPath& c : rs_candidates(s, g, rho)) not_min += c.total_length < best.total_length;
    below_euclid += best.total_length < distance(s.position(), g.position()) - 1e-12;
    worst_sym = std::max(worst_sym, std::abs(best.total_length - rs_shortest(g, s, rho).total_length));
    const Pose end = rs_sample(best, s, rho, 0.1).back().pose;
    worst_end = std::max({worst_end, std::abs(end.x() - g.x()), std::abs(end.y() - g.y()),
                          std::abs(normalize_angle(end.theta() - g.theta()))});
  }
  o.require(not_min == 0, "a candidate was shorter than rs_shortest");
  o.require(below_euclid == 0, "length below Euclidean distance");
  o.require(worst_sym <= 1e-9, "asymmetric under endpoint swap");
  o.require(worst_end < 1e-6, "sampled endpoint misses the goal");
  o.note(fmt("10000 pairs, max swap asymmetry %.2e, max endpoint error %.2e", worst_sym, worst_end));
  return o;
}

Outcome heuristic_admissibility() {
  Outcome o;
  long states = 0;
  double worst = -1e9;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario sc = oracle::coarse_scenario({12, seed, 0.12});
    const auto lattice = oracle::solve_lattice(sc);
    const SearchContext ctx(sc, sc.start, sc.goal, sc.search);
    for (const auto& [state, cost] : lattice.cost_to_goal) {
      if (std::isinf(cost)) continue;
      const double h = ctx.heuristics().anchor(lattice.pose.at(state));
      worst = std::max(worst, h - cost);
      ++states;
    }
    for (int i = 0; i <= ctx.heuristics().n(); ++i) {
      o.require(std::abs(ctx.heuristics().h_index(i, sc.goal)) < 1e-12, "h(goal) != 0");
    }
  }
  o.require(worst <= 1e-9, "h_anchor exceeds the optimal cost somewhere");
  o.require(states > 100, "too few reachable states checked");
  o.note(fmt("%.0f reachable states on 10 lattices of 12x12 cells, max h - cost = %.3g", states, worst));
  return o;
}

Outcome degeneracy_and_bound() {
  Outcome o;
  for (const ParkingCase c : {ParkingCase::ForwardParking, ParkingCase::BackwardParking}) {
    Scenario sc = parking_scenario(c);
    SearchConfig cfg = sc.search;
    cfg.record_trace = true;
    cfg.inflation_factors.clear();
    const PlanResult a = mhha_star(sc.start, sc.goal, sc, cfg);
    const PlanResult b = hybrid_a_star(sc.start, sc.goal, sc, cfg);
    bool same = a.trace.size() == b.trace.size() && a.path.size() == b.path.size();
    for (std::size_t k = 0; same && k < a.trace.size(); ++k) {
      same = a.trace[k].pose == b.trace[k].pose && a.trace[k].cell == b.trace[k].cell;
    }
    for (std::size_t k = 0; same && k < a.path.size(); ++k) same = a.path[k].pose == b.path[k].pose;
    o.require(same, "n = 0 expansion sequence differs from Hybrid A*");
  }
  long runs = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scenario sc = oracle::coarse_scenario({12, seed, 0.12});
    const auto lattice = oracle::solve_lattice(sc);
    if (std::isinf(lattice.optimum) || lattice.optimum == 0.0) continue;
    const PlanResult h = hybrid_a_star(sc);
    o.require(h.termination == Termination::GoalKey && std::abs(h.cost - lattice.optimum) < 1e-9,
              "Hybrid A* cost differs from the lattice optimum");
    for (double omega : {1.5, 2.0, 3.0}) {
      SearchConfig cfg = sc.search;
      cfg.omega_factor = omega;
      cfg.inflation_factors = {omega, 2 * omega};
      const PlanResult m = mhha_star(sc.start, sc.goal, sc, cfg);
      if (m.termination != Termination::GoalKey) continue;
      ++runs;
      worst_ratio = std::max(worst_ratio, m.cost / lattice.optimum / omega);
      o.require(m.cost <= omega * lattice.optimum + 1e-9, "MHHA* cost exceeds omega times the optimum");
    }
  }
  o.require(runs >= 15, "too few goal-key terminations");
  o.note(fmt("n = 0 traces identical on both parking scenarios; %.0f goal-key runs, max cost/(omega*opt) = %.3f",
                  runs, worst_ratio));
  return o;
}

Outcome dijkstra_vs_bellman_ford() {
  Outcome o;
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> dim(2, 20);
  std::uniform_real_distribution<double> u(0, 1);
  int exact = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int nx = dim(rng), ny = dim(rng);
    const GridSpec spec{0, nx * 0.3, 0, ny * 0.3, 0.3, 8};
    OccupancyMask mask(spec.nx(), spec.ny());
    for (int iy = 0; iy < mask.ny; ++iy) {
      for (int ix = 0; ix < mask.nx; ++ix) mask.set_blocked(ix, iy, u(rng) < 0.25);
    }
    const int gx = static_cast<int>(u(rng) * mask.nx), gy = static_cast<int>(u(rng) * mask.ny);
    mask.set_blocked(gx, gy, false);
    const auto field = dijkstra_field(spec, mask, spec.cell_center(gx, gy));
    exact += field.values() == oracle::bellman_ford_field(spec, mask, gx, gy);
  }
  o.require(exact == 20, "Dijkstra differs from Bellman-Ford");
  bool octile = true;
  for (int trial = 0; trial < 5; ++trial) {
    const GridSpec spec{0, 6.0, 0, 4.5, 0.3, 8};
    const OccupancyMask empty(spec.nx(), spec.ny());
    const int gx = trial * 3, gy = trial * 2;
    const auto field = dijkstra_field(spec, empty, spec.cell_center(gx, gy));
    for (int iy = 0; iy < spec.ny(); ++iy) {
      for (int ix = 0; ix < spec.nx(); ++ix) {
        octile = octile && field.at(ix, iy) == oracle::octile_closed_form(spec.cell_size, ix, iy, gx, gy);
      }
    }
  }
  o.require(octile, "empty-map field differs from the octile distance");
  o.note(fmt("%.0f/20 random masks identical; empty maps match closed-form octile", exact));
  return o;
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "mhha_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto slurp = [](const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int compared = 0;
  for (const auto& [name, c] : {std::pair{"forward", ParkingCase::ForwardParking}, {"backward", ParkingCase::BackwardParking}}) {
    const fs::path file = root / (std::string(name) + ".json");
    save_scenario(parking_scenario(c), file);
    std::ostringstream out, err;
    for (const char* run : {"run1", "run2"}) {
      CompareOptions opt;
      opt.scenario = file;
      opt.out_dir = root / name / run;
      o.require(cmd_compare(opt, out, err) == kExitFound, std::string("compare failed: ") + err.str());
    }
    for (const char* f : {"mhha_path.txt", "hybrid_path.txt", "mhha.svg", "hybrid.svg"}) {
      const std::string a = slurp(root / name / "run1" / f), b = slurp(root / name / "run2" / f);
      o.require(!a.empty() && a == b, std::string(name) + "/" + f + " differs between runs");
      ++compared;
    }
  }
  o.note(fmt("%.0f output files byte-identical across two compare runs", compared));
  return o;
}

}  // namespace

int main() {
  const ScenarioRun fwd = run_scenario(ParkingCase::ForwardParking);
  const ScenarioRun bwd = run_scenario(ParkingCase::BackwardParking);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"forward parking", [&] { return parking_case(ParkingCase::ForwardParking, fwd, 21.097, 18.659); }},
      {"backward parking", [&] { return parking_case(ParkingCase::BackwardParking, bwd, 18.16321, 16.691); }},
      {"directional dominance", [&] { return dominance(fwd, bwd); }},
      {"collision oracle equivalence", collision_oracle},
      {"Reeds-Shepp correctness", reeds_shepp_checks},
      {"heuristic admissibility", heuristic_admissibility},
      {"degeneracy and bound", degeneracy_and_bound},
      {"Dijkstra vs Bellman-Ford", dijkstra_vs_bellman_ford},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
