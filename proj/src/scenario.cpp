#include "mhha/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mhha {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void add_wall(std::vector<Point2>& out, Point2 a, Point2 b, double spacing) {
  const double len = distance(a, b);
  const auto count = std::max<long>(1, static_cast<long>(std::ceil(len / spacing - 1e-9)));
  for (long k = 0; k <= count; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(count);
    out.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)});
  }
}

}  // namespace

std::vector<Point2> build_parallel_parking(const ParkingLayout& layout) {
  const GridSpec& ws = layout.workspace;
  const ParkingSpot& spot = layout.spot;
  ws.validate();
  if (!(spot.depth > 0.0 && spot.length > 0.0)) throw std::invalid_argument("spot dimensions must be positive");
  if (!(layout.point_spacing > 0.0)) throw std::invalid_argument("point spacing must be positive");
  if (spot.left() < ws.x_min || spot.right() > ws.x_max || spot.back_y < ws.y_min || spot.curb_y() > ws.y_max) {
    throw std::invalid_argument("parking spot does not fit inside the workspace");
  }
  const double s = layout.point_spacing;
  const double curb = spot.curb_y();
  std::vector<Point2> pts;
  if (spot.left() > ws.x_min) add_wall(pts, {ws.x_min, curb}, {spot.left(), curb}, s);
  if (spot.right() < ws.x_max) add_wall(pts, {spot.right(), curb}, {ws.x_max, curb}, s);
  add_wall(pts, {spot.left(), curb}, {spot.left(), spot.back_y}, s);
  add_wall(pts, {spot.left(), spot.back_y}, {spot.right(), spot.back_y}, s);
  add_wall(pts, {spot.right(), spot.back_y}, {spot.right(), curb}, s);
  add_wall(pts, {ws.x_min, ws.y_max}, {ws.x_max, ws.y_max}, s);

  // Shared wall corners appear twice.
  std::vector<Point2> unique;
  unique.reserve(pts.size());
  std::set<std::pair<double, double>> seen;
  for (const Point2& p : pts) {
    if (seen.insert({p.x, p.y}).second) unique.push_back(p);
  }
  return unique;
}

void rebuild_obstacles(Scenario& scenario) {
  auto pts = build_parallel_parking({scenario.workspace, scenario.spot, scenario.point_spacing});
  pts.insert(pts.end(), scenario.extra_points.begin(), scenario.extra_points.end());
  scenario.obstacles = ObstacleSet(std::move(pts));
}

Scenario parking_scenario(ParkingCase which) {
  Scenario sc;
  sc.name = which == ParkingCase::ForwardParking ? "forward_parking" : "backward_parking";
  sc.workspace = GridSpec{-21.0, 21.0, -1.0, 11.0, 0.3, 72};
  sc.vehicle = VehicleGeometry{4.7, 2.0, 2.7, 1.0};
  sc.limits = VehicleLimits{};
  sc.limits.phi_max = 0.6;
  sc.goal = Pose(-1.35, 1.5, 0.0);
  sc.start = which == ParkingCase::ForwardParking ? Pose(-9.0, 8.0, 0.0) : Pose(12.0, 8.0, 0.0);
  // Spot centered on the parked vehicle's body, depth-wise and along the curb.
  sc.spot = ParkingSpot{3.0, 7.2, sc.goal.x() + sc.vehicle.center_offset(), sc.goal.y() - 1.5};
  sc.point_spacing = 0.1;
  rebuild_obstacles(sc);
  return sc;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& item : j_.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
        throw ScenarioError("unknown key '" + qualify(item.key()) + "'");
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  void number(const char* key, double& out) const {
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ScenarioError("field '" + qualify(key) + "': expected a number");
    out = v.get<double>();
  }

  template <typename Int>
  void integer(const char* key, Int& out) const {
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ScenarioError("field '" + qualify(key) + "': expected an integer");
    out = v.get<Int>();
  }

  void boolean(const char* key, bool& out) const {
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ScenarioError("field '" + qualify(key) + "': expected true or false");
    out = v.get<bool>();
  }

  void numbers(const char* key, std::vector<double>& out) const {
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (!v.is_array()) throw ScenarioError("field '" + qualify(key) + "': expected an array of numbers");
    out.clear();
    for (const auto& e : v) {
      if (!e.is_number()) throw ScenarioError("field '" + qualify(key) + "': expected an array of numbers");
      out.push_back(e.get<double>());
    }
  }

  Reader child(const char* key) const {
    if (!j_.contains(key)) throw ScenarioError("missing section '" + qualify(key) + "'");
    return Reader(j_.at(key), qualify(key));
  }

  const json& raw(const char* key) const { return j_.at(key); }
  std::string qualify(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ScenarioError("section '" + path_ + "': " + what);
  }

  const json& j_;
  std::string path_;
};

Pose read_pose(const Reader& r) {
  r.allow({"x", "y", "theta"});
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  if (!r.has("x") || !r.has("y")) throw ScenarioError("pose '" + r.qualify("") + "' needs x and y");
  r.number("x", x);
  r.number("y", y);
  r.number("theta", theta);
  return {x, y, theta};
}

ordered_json pose_json(const Pose& p) { return {{"x", p.x()}, {"y", p.y()}, {"theta", p.theta()}}; }

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source_name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(source_name + ": " + e.what());
  }
  try {
    Scenario sc = parking_scenario(ParkingCase::ForwardParking);
    sc.name = source_name;
    sc.extra_points.clear();
    const Reader top(root, "");
    top.allow({"name", "workspace", "vehicle", "spot", "start", "goal", "search", "obstacles"});
    if (root.contains("name")) {
      if (!root["name"].is_string()) throw ScenarioError("field 'name': expected a string");
      sc.name = root["name"].get<std::string>();
    }
    if (top.has("workspace")) {
      const Reader w = top.child("workspace");
      w.allow({"x_min", "x_max", "y_min", "y_max", "cell_size", "heading_bins"});
      w.number("x_min", sc.workspace.x_min);
      w.number("x_max", sc.workspace.x_max);
      w.number("y_min", sc.workspace.y_min);
      w.number("y_max", sc.workspace.y_max);
      w.number("cell_size", sc.workspace.cell_size);
      w.integer("heading_bins", sc.workspace.heading_bins);
    }
    if (top.has("vehicle")) {
      const Reader v = top.child("vehicle");
      v.allow({"length", "width", "wheelbase", "rear_overhang", "phi_max"});
      v.number("length", sc.vehicle.length);
      v.number("width", sc.vehicle.width);
      v.number("wheelbase", sc.vehicle.wheelbase);
      v.number("rear_overhang", sc.vehicle.rear_overhang);
      v.number("phi_max", sc.limits.phi_max);
    }
    sc.start = read_pose(top.child("start"));
    sc.goal = read_pose(top.child("goal"));
    sc.spot.center_x = sc.goal.x() + sc.vehicle.center_offset();
    bool back_given = false;
    if (top.has("spot")) {
      const Reader s = top.child("spot");
      s.allow({"depth", "length", "center_x", "back_y"});
      s.number("depth", sc.spot.depth);
      s.number("length", sc.spot.length);
      s.number("center_x", sc.spot.center_x);
      back_given = s.has("back_y");
      s.number("back_y", sc.spot.back_y);
    }
    if (!back_given) sc.spot.back_y = sc.goal.y() - 0.5 * sc.spot.depth;
    if (top.has("search")) {
      const Reader s = top.child("search");
      s.allow({"omega_factor", "setvalue", "inflation_factors", "penalties", "arc_length", "steering_angles",
               "max_iterations", "split_closed_sets", "collision_spacing", "occupancy_inflation", "disk_count"});
      SearchConfig& c = sc.search;
      s.number("omega_factor", c.omega_factor);
      s.integer("setvalue", c.setvalue);
      s.numbers("inflation_factors", c.inflation_factors);
      s.number("arc_length", c.primitives.arc_length);
      s.numbers("steering_angles", c.primitives.steering_angles);
      s.integer("max_iterations", c.max_iterations);
      s.boolean("split_closed_sets", c.split_closed_sets);
      s.number("collision_spacing", c.collision_spacing);
      s.number("occupancy_inflation", c.occupancy_inflation);
      s.integer("disk_count", c.disk_count);
      if (s.has("penalties")) {
        const Reader p = s.child("penalties");
        p.allow({"reverse_mult", "switchback", "steer_change", "steer_hold"});
        p.number("reverse_mult", c.penalties.reverse_mult);
        p.number("switchback", c.penalties.switchback);
        p.number("steer_change", c.penalties.steer_change);
        p.number("steer_hold", c.penalties.steer_hold);
      }
    }
    if (top.has("obstacles")) {
      const Reader o = top.child("obstacles");
      o.allow({"extra_points", "spacing"});
      o.number("spacing", sc.point_spacing);
      if (o.has("extra_points")) {
        const json& arr = o.raw("extra_points");
        if (!arr.is_array()) throw ScenarioError("field 'obstacles.extra_points': expected an array");
        for (std::size_t k = 0; k < arr.size(); ++k) {
          const json& e = arr[k];
          if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ScenarioError("field 'obstacles.extra_points[" + std::to_string(k) + "]': expected [x, y]");
          }
          sc.extra_points.push_back({e[0].get<double>(), e[1].get<double>()});
        }
      }
    }
    try {
      rebuild_obstacles(sc);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
    return sc;
  } catch (const ScenarioError& e) {
    throw ScenarioError(source_name + ": " + e.what());
  } catch (const json::exception& e) {
    throw ScenarioError(source_name + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ScenarioError("cannot open scenario file '" + file.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str(), file.string());
  return sc;
}

std::string dump_scenario(const Scenario& sc) {
  ordered_json j;
  j["name"] = sc.name;
  j["workspace"] = {{"x_min", sc.workspace.x_min},         {"x_max", sc.workspace.x_max},
                    {"y_min", sc.workspace.y_min},         {"y_max", sc.workspace.y_max},
                    {"cell_size", sc.workspace.cell_size}, {"heading_bins", sc.workspace.heading_bins}};
  j["vehicle"] = {{"length", sc.vehicle.length},
                  {"width", sc.vehicle.width},
                  {"wheelbase", sc.vehicle.wheelbase},
                  {"rear_overhang", sc.vehicle.rear_overhang},
                  {"phi_max", sc.limits.phi_max}};
  j["spot"] = {{"depth", sc.spot.depth},
               {"length", sc.spot.length},
               {"center_x", sc.spot.center_x},
               {"back_y", sc.spot.back_y}};
  j["start"] = pose_json(sc.start);
  j["goal"] = pose_json(sc.goal);
  const SearchConfig& c = sc.search;
  j["search"] = {{"omega_factor", c.omega_factor},
                 {"setvalue", c.setvalue},
                 {"inflation_factors", c.inflation_factors},
                 {"penalties",
                  {{"reverse_mult", c.penalties.reverse_mult},
                   {"switchback", c.penalties.switchback},
                   {"steer_change", c.penalties.steer_change},
                   {"steer_hold", c.penalties.steer_hold}}},
                 {"arc_length", c.primitives.arc_length},
                 {"steering_angles", c.primitives.steering_angles},
                 {"max_iterations", c.max_iterations},
                 {"split_closed_sets", c.split_closed_sets},
                 {"collision_spacing", c.collision_spacing},
                 {"occupancy_inflation", c.occupancy_inflation},
                 {"disk_count", c.disk_count}};
  ordered_json extra = ordered_json::array();
  for (const Point2& p : sc.extra_points) extra.push_back({p.x, p.y});
  j["obstacles"] = {{"spacing", sc.point_spacing}, {"extra_points", extra}};
  return j.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw ScenarioError("cannot write scenario file '" + file.string() + "'");
  out << dump_scenario(scenario);
}

std::vector<std::string> validate(const Scenario& sc) {
  std::vector<std::string> v;
  auto check = [&](auto&& fn) {
    try {
      fn();
      return true;
    } catch (const std::invalid_argument& e) {
      v.emplace_back(e.what());
      return false;
    }
  };
  const bool grid_ok = check([&] { sc.workspace.validate(); });
  const bool vehicle_ok = check([&] { sc.vehicle.validate(); });
  check([&] { sc.limits.validate(); });

  const SearchConfig& c = sc.search;
  if (!(c.omega_factor >= 1.0)) v.emplace_back("omega_factor < 1");
  if (c.setvalue < 1) v.emplace_back("setvalue < 1");
  if (c.max_iterations < 1) v.emplace_back("max_iterations < 1");
  if (!(c.penalties.reverse_mult >= 1.0)) v.emplace_back("reverse_mult < 1");
  if (!(c.penalties.switchback >= 0.0)) v.emplace_back("switchback penalty < 0");
  if (!(c.penalties.steer_change >= 0.0)) v.emplace_back("steer_change penalty < 0");
  if (!(c.penalties.steer_hold >= 0.0)) v.emplace_back("steer_hold penalty < 0");
  for (double w : c.inflation_factors) {
    if (!(w >= 1.0)) v.emplace_back("inflation factor < 1");
  }
  if (!(c.primitives.arc_length > 0.0)) v.emplace_back("arc_length must be positive");
  if (c.primitives.steering_angles.empty()) v.emplace_back("steering_angles is empty");
  for (double phi : c.primitives.steering_angles) {
    if (std::abs(phi) > sc.limits.phi_max) v.emplace_back("steering angle exceeds phi_max");
  }
  if (!(c.collision_spacing > 0.0 && c.collision_spacing <= 0.1)) v.emplace_back("collision_spacing outside (0, 0.1]");
  if (!(sc.point_spacing > 0.0 && sc.point_spacing <= 0.1)) v.emplace_back("obstacle point spacing outside (0, 0.1]");
  if (!(c.occupancy_inflation >= 0.0)) v.emplace_back("occupancy_inflation < 0");
  if (c.disk_count < 1) v.emplace_back("disk_count < 1");
  if (!grid_ok) return v;

  for (const Point2& p : sc.obstacles.points()) {
    if (!sc.workspace.contains(p.x, p.y)) {
      v.emplace_back("obstacle point outside workspace");
      break;
    }
  }
  if (!sc.workspace.contains(sc.start.x(), sc.start.y())) v.emplace_back("start outside workspace");
  if (!sc.workspace.contains(sc.goal.x(), sc.goal.y())) v.emplace_back("goal outside workspace");
  if (vehicle_ok && c.disk_count >= 1) {
    const DiskCover cover = disk_cover(sc.vehicle, c.disk_count);
    if (vehicle_collides(sc.start, sc.vehicle, cover, sc.obstacles)) v.emplace_back("start in collision");
    if (vehicle_collides(sc.goal, sc.vehicle, cover, sc.obstacles)) v.emplace_back("goal in collision");
  }
  return v;
}

std::vector<std::string> warnings(const Scenario& sc) {
  std::vector<std::string> w;
  if (sc.search.occupancy_inflation > 0.0) {
    w.emplace_back("occupancy_inflation > 0 can make the holonomic heuristic inadmissible");
  }
  if (sc.search.primitives.arc_length <= sc.workspace.cell_size * std::numbers::sqrt2) {
    w.emplace_back("arc_length does not exceed the cell diagonal; successors may stay in their parent's cell");
  }
  return w;
}

}  // namespace mhha
