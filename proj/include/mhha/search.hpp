#pragma once

// Multi-heuristic hybrid A*: one anchor queue ordered by an admissible
// heuristic plus inadmissible queues served round-robin while their minimum key
// stays within omega times the anchor's. Hybrid A* is the anchor-only case.

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "mhha/geometry.hpp"
#include "mhha/grid.hpp"
#include "mhha/heuristics.hpp"
#include "mhha/reeds_shepp.hpp"
#include "mhha/scenario.hpp"
#include "mhha/search_config.hpp"
#include "mhha/vehicle.hpp"

namespace mhha {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct SearchNode {
  Pose pose;
  /// Gear and steering of the primitive that produced this node.
  Gear gear = Gear::Forward;
  double steering = 0.0;
  bool has_incoming_step = false;
  CellKey cell;
  double g = kInfinity;
  NodeId bp = kNoNode;
  double h_anchor = 0.0;
  bool closed_anchor = false;
  bool closed_inadmissible = false;
};

/// Priority queue with keyed update and removal. Pops by ascending key, ties
/// by insertion order.
class OpenList {
 public:
  void insert_or_update(NodeId id, double key);
  void erase(NodeId id);
  bool contains(NodeId id) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  /// +inf when empty.
  double min_key() const { return entries_.empty() ? kInfinity : entries_.begin()->key; }
  NodeId top() const { return entries_.begin()->id; }
  /// Key currently stored for `id`; requires contains(id).
  double key_of(NodeId id) const;

 private:
  struct Entry {
    double key;
    std::uint64_t order;
    NodeId id;
    bool operator<(const Entry& o) const { return key < o.key || (key == o.key && order < o.order); }
  };
  std::set<Entry> entries_;
  std::vector<std::optional<std::set<Entry>::const_iterator>> where_;
  std::uint64_t counter_ = 0;
};

enum class Termination { GoalKey, RsShortcut, NoSolution };
const char* to_string(Termination t);

struct PathPoint {
  Pose pose;
  Gear gear = Gear::Forward;
};

struct ExpansionRecord {
  int queue = 0;
  Pose pose;
  std::optional<Pose> parent;
  CellKey cell;
};

struct PlanResult {
  std::vector<PathPoint> path;
  double path_length = 0.0;
  long nodes_expanded = 0;
  long iterations = 0;
  /// Successor nodes inserted or improved.
  long nodes_generated = 0;
  /// Search time only, seconds.
  double extension_time = 0.0;
  /// Distance-field and heuristic setup, seconds.
  double setup_time = 0.0;
  Termination termination = Termination::NoSolution;
  /// g of the goal node, plus the penalized shortcut cost for RsShortcut.
  double cost = kInfinity;
  /// Index into `path` where the shortcut samples begin (== path.size() without one).
  std::size_t rs_tail_begin = 0;
  double rs_tail_length = 0.0;
  /// Filled when SearchConfig::record_trace is set.
  std::vector<ExpansionRecord> trace;

  bool found() const { return termination != Termination::NoSolution; }
};

/// Immutable per-problem data shared by searches over one scenario.
class SearchContext {
 public:
  SearchContext(const Scenario& scenario, const Pose& start, const Pose& goal, const SearchConfig& config);
  SearchContext(const SearchContext&) = delete;
  SearchContext& operator=(const SearchContext&) = delete;

  const Scenario& scenario() const { return *scenario_; }
  const SearchConfig& config() const { return config_; }
  const Pose& start() const { return start_; }
  const Pose& goal() const { return goal_; }
  const DiskCover& cover() const { return cover_; }
  const DistanceField& field() const { return field_; }
  const HeuristicSet& heuristics() const { return heuristics_; }
  double turning_radius() const { return turning_radius_; }
  double setup_time() const { return setup_time_; }
  /// Goal cell occupied in the holonomic mask.
  bool goal_blocked() const { return goal_blocked_; }

  bool pose_valid(const Pose& pose) const;
  /// Poses at which a primitive of this kind is collision-checked and later
  /// stored in the path, excluding the start and including the end.
  std::vector<Pose> primitive_samples(const Pose& from, Gear gear, double steering) const;

 private:
  const Scenario* scenario_;
  SearchConfig config_;
  Pose start_;
  Pose goal_;
  double turning_radius_;
  DiskCover cover_;
  bool goal_blocked_ = false;
  DistanceField field_;
  HeuristicSet heuristics_;
  double setup_time_ = 0.0;
};

/// Search state for one run. Exposes the expansion step for inspection.
class MultiHeuristicSearch {
 public:
  explicit MultiHeuristicSearch(const SearchContext& context);

  /// Resets all state and seeds every queue with the start node.
  void initialize();
  PlanResult run();

  /// Removes s from every open list, closes it and relaxes its successors.
  void expand_node(NodeId s, int queue);
  /// Collision-free shortcut from s to the goal, if one exists.
  std::optional<RSPath> analytic_expansion(NodeId s) const;

  int queue_count() const { return static_cast<int>(open_.size()); }
  const OpenList& open(int i) const { return open_.at(static_cast<std::size_t>(i)); }
  const SearchNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::size_t node_count() const { return nodes_.size(); }
  std::optional<NodeId> find(const CellKey& key) const;
  NodeId start_node() const { return 0; }
  double goal_g() const { return goal_g_; }
  long expansions() const { return expanded_; }

  /// Path and length from start to `id` following back-pointers. Throws
  /// std::logic_error on a cyclic chain.
  std::vector<PathPoint> reconstruct_path(NodeId id, double* length = nullptr) const;

 private:
  double key(const SearchNode& n, int i) const;
  void relax(NodeId id);
  PlanResult finish_goal(int queue);
  PlanResult finish_shortcut(NodeId s, const RSPath& path);

  const SearchContext* ctx_;
  CellKey goal_cell_;
  std::vector<SearchNode> nodes_;
  std::unordered_map<CellKey, NodeId, CellKeyHash> index_;
  std::vector<OpenList> open_;
  double goal_g_ = kInfinity;
  NodeId goal_node_ = kNoNode;
  long iterations_ = 0;
  long expanded_ = 0;
  long generated_ = 0;
  std::vector<ExpansionRecord> trace_;
};

/// Runs MHHA* with the scenario's own configuration unless one is given.
PlanResult mhha_star(const Pose& start, const Pose& goal, const Scenario& scenario, const SearchConfig& config);
PlanResult mhha_star(const Scenario& scenario);

/// The anchor-only search: mhha_star with no inadmissible queues.
PlanResult hybrid_a_star(const Pose& start, const Pose& goal, const Scenario& scenario, const SearchConfig& config);
PlanResult hybrid_a_star(const Scenario& scenario);

}  // namespace mhha
