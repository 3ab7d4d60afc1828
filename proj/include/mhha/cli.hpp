#pragma once

// Commands behind the mhha executable. Exit codes: 0 path found, 2 no
// solution, 1 error (bad input, failed validation, planner fault).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhha/scenario.hpp"
#include "mhha/search.hpp"

namespace mhha {

inline constexpr int kExitFound = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoSolution = 2;

enum class PlannerKind { Mhha, Hybrid };
const char* to_string(PlannerKind kind);

struct PlanOptions {
  std::filesystem::path scenario;
  PlannerKind planner = PlannerKind::Mhha;
  std::optional<std::filesystem::path> svg;
  std::optional<std::filesystem::path> path_out;
  std::optional<std::filesystem::path> report;
  bool trace = false;
};

struct CompareOptions {
  std::filesystem::path scenario;
  std::filesystem::path out_dir;
  /// Run the two planners on separate threads.
  bool parallel = false;
  /// Record expansions for the SVG trees.
  bool trace = true;
};

int cmd_plan(const PlanOptions& options, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);

/// One "x y theta gear" line per pose.
std::string format_path(const std::vector<PathPoint>& path);
/// key=value lines; numbers printed with full round-trip precision.
std::string format_metrics(const PlanResult& result, PlannerKind planner);
/// Two-column table; a null result prints "no solution" in its column.
std::string format_table(const PlanResult* mhha, const PlanResult* hybrid);
/// Four significant digits, as shown in the table.
std::string display_number(double value);

nlohmann::ordered_json metrics_json(const PlanResult& result);
PlanResult run_planner(PlannerKind planner, const Scenario& scenario, bool trace);

}  // namespace mhha
