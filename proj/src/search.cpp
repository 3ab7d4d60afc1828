#include "mhha/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace mhha {

// ---------------------------------------------------------------------------
// OpenList

void OpenList::insert_or_update(NodeId id, double key) {
  const auto slot = static_cast<std::size_t>(id);
  if (where_.size() <= slot) where_.resize(slot + 1);
  if (where_[slot]) entries_.erase(*where_[slot]);
  where_[slot] = entries_.insert(Entry{key, counter_++, id}).first;
}

void OpenList::erase(NodeId id) {
  const auto slot = static_cast<std::size_t>(id);
  if (slot >= where_.size() || !where_[slot]) return;
  entries_.erase(*where_[slot]);
  where_[slot].reset();
}

bool OpenList::contains(NodeId id) const {
  const auto slot = static_cast<std::size_t>(id);
  return slot < where_.size() && where_[slot].has_value();
}

double OpenList::key_of(NodeId id) const { return (*where_.at(static_cast<std::size_t>(id)))->key; }

const char* to_string(Termination t) {
  switch (t) {
    case Termination::GoalKey:
      return "goal_key";
    case Termination::RsShortcut:
      return "rs_shortcut";
    case Termination::NoSolution:
      return "no_solution";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SearchContext

namespace {

DistanceField build_field(const Scenario& sc, const SearchConfig& config, const Pose& goal, bool& goal_blocked) {
  const OccupancyMask mask = build_occupancy(sc.workspace, sc.obstacles, config.occupancy_inflation);
  const GridSpec& spec = sc.workspace;
  goal_blocked = mask.is_blocked(spec.column(goal.x()), spec.row(goal.y()));
  if (goal_blocked) {
    return DistanceField(spec, std::vector<double>(static_cast<std::size_t>(spec.nx()) * spec.ny(), kInfinity));
  }
  return dijkstra_field(spec, mask, goal.position());
}

}  // namespace

SearchContext::SearchContext(const Scenario& scenario, const Pose& start, const Pose& goal,
                             const SearchConfig& config)
    : scenario_(&scenario),
      config_(config),
      start_(start),
      goal_(goal),
      turning_radius_(scenario.turning_radius()),
      cover_(disk_cover(scenario.vehicle, config.disk_count)),
      field_(),
      heuristics_(goal, field_, turning_radius_, config.inflation_factors) {
  if (config_.setvalue < 1) throw std::invalid_argument("setvalue must be >= 1");
  if (!(config_.omega_factor >= 1.0)) throw std::invalid_argument("omega_factor must be >= 1");
  if (!(config_.penalties.reverse_mult >= 1.0)) throw std::invalid_argument("reverse_mult must be >= 1");
  if (!pose_valid(start_)) throw std::invalid_argument("start pose is outside the workspace or in collision");
  if (!pose_valid(goal_)) throw std::invalid_argument("goal pose is outside the workspace or in collision");
  const auto t0 = std::chrono::steady_clock::now();
  field_ = build_field(scenario, config_, goal_, goal_blocked_);
  setup_time_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool SearchContext::pose_valid(const Pose& pose) const {
  const Scenario& sc = *scenario_;
  return sc.workspace.contains(pose.x(), pose.y()) && !vehicle_collides(pose, sc.vehicle, cover_, sc.obstacles);
}

std::vector<Pose> SearchContext::primitive_samples(const Pose& from, Gear gear, double steering) const {
  const double ds = config_.primitives.arc_length;
  auto m = static_cast<long>(std::ceil(ds / config_.collision_spacing - 1e-9));
  // An even count puts the arc midpoint among the samples.
  if (m % 2 != 0) ++m;
  std::vector<Pose> out;
  out.reserve(static_cast<std::size_t>(m));
  const double wheelbase = scenario_->vehicle.wheelbase;
  const double phi_max = scenario_->limits.phi_max;
  for (long k = 1; k < m; ++k) {
    out.push_back(integrate_arc(from, gear, steering, ds * static_cast<double>(k) / static_cast<double>(m), wheelbase,
                                phi_max));
  }
  out.push_back(integrate_arc(from, gear, steering, ds, wheelbase, phi_max));
  return out;
}

// ---------------------------------------------------------------------------
// MultiHeuristicSearch

MultiHeuristicSearch::MultiHeuristicSearch(const SearchContext& context) : ctx_(&context) { initialize(); }

std::optional<NodeId> MultiHeuristicSearch::find(const CellKey& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double MultiHeuristicSearch::key(const SearchNode& n, int i) const {
  return n.g + ctx_->heuristics().from_anchor(i, n.h_anchor);
}

void MultiHeuristicSearch::initialize() {
  const GridSpec& spec = ctx_->scenario().workspace;
  const int n = ctx_->heuristics().n();
  nodes_.clear();
  index_.clear();
  open_.assign(static_cast<std::size_t>(n + 1), OpenList{});
  trace_.clear();
  iterations_ = 0;
  expanded_ = 0;
  generated_ = 0;
  goal_cell_ = discretize(ctx_->goal(), Gear::Forward, spec);

  SearchNode start;
  start.pose = ctx_->start();
  start.cell = discretize(start.pose, Gear::Forward, spec);
  start.g = 0.0;
  start.bp = kNoNode;
  start.h_anchor = ctx_->heuristics().anchor(start.pose);
  nodes_.push_back(start);
  index_.emplace(start.cell, 0);

  goal_g_ = kInfinity;
  goal_node_ = kNoNode;
  if (start.cell.same_place(goal_cell_)) {
    goal_g_ = 0.0;
    goal_node_ = 0;
  }
  for (int i = 0; i <= n; ++i) open_[static_cast<std::size_t>(i)].insert_or_update(0, key(nodes_[0], i));
}

void MultiHeuristicSearch::relax(NodeId id) {
  const SearchNode& nd = nodes_[static_cast<std::size_t>(id)];
  open_[0].insert_or_update(id, key(nd, 0));
  if (!nd.closed_inadmissible) {
    for (int i = 1; i < queue_count(); ++i) open_[static_cast<std::size_t>(i)].insert_or_update(id, key(nd, i));
  }
  if (nd.cell.same_place(goal_cell_) && nd.g < goal_g_) {
    goal_g_ = nd.g;
    goal_node_ = id;
  }
}

void MultiHeuristicSearch::expand_node(NodeId s, int queue) {
  for (auto& list : open_) list.erase(s);
  {
    SearchNode& nd = nodes_[static_cast<std::size_t>(s)];
    if (ctx_->config().split_closed_sets) {
      (queue == 0 ? nd.closed_anchor : nd.closed_inadmissible) = true;
    } else {
      nd.closed_anchor = true;
      nd.closed_inadmissible = true;
    }
  }
  ++expanded_;

  const SearchNode parent = nodes_[static_cast<std::size_t>(s)];
  if (ctx_->config().record_trace) {
    std::optional<Pose> from;
    if (parent.bp != kNoNode) from = nodes_[static_cast<std::size_t>(parent.bp)].pose;
    trace_.push_back({queue, parent.pose, from, parent.cell});
  }

  const Scenario& sc = ctx_->scenario();
  const SearchConfig& cfg = ctx_->config();
  const std::optional<Gear> prev_gear = parent.has_incoming_step ? std::optional<Gear>(parent.gear) : std::nullopt;
  const std::optional<double> prev_steer =
      parent.has_incoming_step ? std::optional<double>(parent.steering) : std::nullopt;

  for (const MotionStep& step : successors(parent.pose, cfg.primitives, sc.vehicle.wheelbase, sc.limits.phi_max)) {
    if (!sc.workspace.contains(step.end_pose.x(), step.end_pose.y())) continue;
    const CellKey cell = discretize(step.end_pose, step.direction, sc.workspace);
    const auto existing = find(cell);
    if (existing && nodes_[static_cast<std::size_t>(*existing)].closed_anchor) continue;
    const double g = parent.g + step_cost(step.direction, step.steering, step.length, prev_gear, prev_steer,
                                          cfg.penalties);
    if (existing && !(g < nodes_[static_cast<std::size_t>(*existing)].g)) continue;

    bool clear = true;
    for (const Pose& p : ctx_->primitive_samples(parent.pose, step.direction, step.steering)) {
      if (!ctx_->pose_valid(p)) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    const double h = ctx_->heuristics().anchor(step.end_pose);
    if (h == kInfinity) continue;

    NodeId id = kNoNode;
    if (existing) {
      id = *existing;
    } else {
      id = static_cast<NodeId>(nodes_.size());
      nodes_.emplace_back();
      index_.emplace(cell, id);
    }
    SearchNode& child = nodes_[static_cast<std::size_t>(id)];
    child.pose = step.end_pose;
    child.gear = step.direction;
    child.steering = step.steering;
    child.has_incoming_step = true;
    child.cell = cell;
    child.g = g;
    child.bp = s;
    child.h_anchor = h;
    ++generated_;
    relax(id);
  }
}

std::optional<RSPath> MultiHeuristicSearch::analytic_expansion(NodeId s) const {
  const Pose& from = nodes_.at(static_cast<std::size_t>(s)).pose;
  RSPath path = rs_shortest(from, ctx_->goal(), ctx_->turning_radius());
  for (const RSSample& sample : rs_sample(path, from, ctx_->turning_radius(), ctx_->config().collision_spacing)) {
    if (!ctx_->pose_valid(sample.pose)) return std::nullopt;
  }
  return path;
}

std::vector<PathPoint> MultiHeuristicSearch::reconstruct_path(NodeId id, double* length) const {
  std::vector<NodeId> chain;
  for (NodeId cur = id; cur != kNoNode; cur = nodes_.at(static_cast<std::size_t>(cur)).bp) {
    if (chain.size() > nodes_.size()) throw std::logic_error("cyclic back-pointer chain");
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());

  std::vector<PathPoint> path;
  double total = 0.0;
  const SearchNode& root = nodes_[static_cast<std::size_t>(chain.front())];
  const Gear first_gear =
      chain.size() > 1 ? nodes_[static_cast<std::size_t>(chain[1])].gear : Gear::Forward;
  path.push_back({root.pose, first_gear});
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const SearchNode& prev = nodes_[static_cast<std::size_t>(chain[k - 1])];
    const SearchNode& nd = nodes_[static_cast<std::size_t>(chain[k])];
    for (const Pose& p : ctx_->primitive_samples(prev.pose, nd.gear, nd.steering)) path.push_back({p, nd.gear});
    total += ctx_->config().primitives.arc_length;
  }
  if (length) *length = total;
  return path;
}

PlanResult MultiHeuristicSearch::finish_goal(int queue) {
  if (queue >= 1 && !(goal_g_ <= ctx_->config().omega_factor * open_[0].min_key())) {
    throw std::logic_error("suboptimality bound violated at goal termination");
  }
  PlanResult r;
  r.termination = Termination::GoalKey;
  r.path = reconstruct_path(goal_node_, &r.path_length);
  r.rs_tail_begin = r.path.size();
  r.cost = goal_g_;
  return r;
}

PlanResult MultiHeuristicSearch::finish_shortcut(NodeId s, const RSPath& rs) {
  PlanResult r;
  r.termination = Termination::RsShortcut;
  r.path = reconstruct_path(s, &r.path_length);
  r.rs_tail_begin = r.path.size();
  const SearchNode& nd = nodes_[static_cast<std::size_t>(s)];
  const auto samples = rs_sample(rs, nd.pose, ctx_->turning_radius(), ctx_->config().collision_spacing);
  for (std::size_t k = 1; k < samples.size(); ++k) r.path.push_back({samples[k].pose, samples[k].gear});
  r.rs_tail_length = rs.total_length;
  r.path_length += rs.total_length;

  // Tail cost under the same penalties as the primitives (steering penalties excluded).
  const PenaltyConfig& pen = ctx_->config().penalties;
  double tail = 0.0;
  bool has_gear = nd.has_incoming_step;
  Gear gear = nd.gear;
  for (const RSSegment& seg : rs.segments) {
    tail += seg.length * ctx_->turning_radius() * (seg.gear == Gear::Reverse ? pen.reverse_mult : 1.0);
    if (has_gear && gear != seg.gear) tail += pen.switchback;
    gear = seg.gear;
    has_gear = true;
  }
  r.cost = nd.g + tail;
  return r;
}

PlanResult MultiHeuristicSearch::run() {
  const auto t0 = std::chrono::steady_clock::now();
  initialize();
  const SearchConfig& cfg = ctx_->config();
  const int n = queue_count() - 1;

  auto finalize = [&](PlanResult r) {
    r.nodes_expanded = expanded_;
    r.iterations = iterations_;
    r.nodes_generated = generated_;
    r.extension_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.setup_time = ctx_->setup_time();
    r.trace = std::move(trace_);
    return r;
  };

  if (ctx_->goal_blocked() || nodes_[0].h_anchor == kInfinity) return finalize(PlanResult{});

  // One iteration on queue q; returns a result when the search terminates.
  auto step = [&](int q) -> std::optional<PlanResult> {
    ++iterations_;
    if (iterations_ > cfg.max_iterations) throw std::runtime_error("max_iterations exceeded");
    const OpenList& list = open_[static_cast<std::size_t>(q)];
    if (goal_g_ <= list.min_key()) return finish_goal(q);
    const NodeId s = list.top();
    if (iterations_ % cfg.setvalue == 0) {
      if (auto rs = analytic_expansion(s)) return finish_shortcut(s, *rs);
    }
    expand_node(s, q);
    return std::nullopt;
  };

  while (!open_[0].empty()) {
    if (n == 0) {
      if (auto r = step(0)) return finalize(std::move(*r));
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      if (open_[0].empty()) break;
      const bool inadmissible =
          open_[static_cast<std::size_t>(i)].min_key() <= cfg.omega_factor * open_[0].min_key();
      if (auto r = step(inadmissible ? i : 0)) return finalize(std::move(*r));
    }
  }
  return finalize(PlanResult{});
}

// ---------------------------------------------------------------------------

PlanResult mhha_star(const Pose& start, const Pose& goal, const Scenario& scenario, const SearchConfig& config) {
  const SearchContext ctx(scenario, start, goal, config);
  MultiHeuristicSearch search(ctx);
  return search.run();
}

PlanResult mhha_star(const Scenario& scenario) {
  return mhha_star(scenario.start, scenario.goal, scenario, scenario.search);
}

PlanResult hybrid_a_star(const Pose& start, const Pose& goal, const Scenario& scenario, const SearchConfig& config) {
  SearchConfig anchor_only = config;
  anchor_only.inflation_factors.clear();
  return mhha_star(start, goal, scenario, anchor_only);
}

PlanResult hybrid_a_star(const Scenario& scenario) {
  return hybrid_a_star(scenario.start, scenario.goal, scenario, scenario.search);
}

}  // namespace mhha
