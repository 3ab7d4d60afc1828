#include "mhha/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

#include "mhha/svg.hpp"

namespace mhha {

namespace fs = std::filesystem;

const char* to_string(PlannerKind kind) { return kind == PlannerKind::Mhha ? "mhha" : "hybrid"; }

namespace {

std::string fmt_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_long(long v) { return std::to_string(v); }

void write_file(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  os << text;
  if (!os) throw std::runtime_error("write failed: " + file.string());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Loads and validates; prints diagnostics and returns nullopt on failure.
std::optional<Scenario> load_checked(const fs::path& file, std::ostream& err) {
  Scenario sc;
  try {
    sc = load_scenario(file);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  const auto violations = validate(sc);
  for (const auto& v : violations) err << "violation: " << v << "\n";
  if (!violations.empty()) return std::nullopt;
  for (const auto& w : warnings(sc)) err << "warning: " << w << "\n";
  return sc;
}

}  // namespace

std::string display_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

std::string format_path(const std::vector<PathPoint>& path) {
  std::string out;
  char buf[128];
  for (const PathPoint& p : path) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %c\n", p.pose.x(), p.pose.y(), p.pose.theta(),
                  gear_char(p.gear));
    out += buf;
  }
  return out;
}

std::string format_metrics(const PlanResult& r, PlannerKind planner) {
  std::string out;
  auto kv = [&out](const char* k, const std::string& v) { out.append(k).append("=").append(v).append("\n"); };
  kv("planner", to_string(planner));
  kv("termination", to_string(r.termination));
  kv("path_length", fmt_exact(r.path_length));
  kv("cost", fmt_exact(r.cost));
  kv("nodes_expanded", fmt_long(r.nodes_expanded));
  kv("iterations", fmt_long(r.iterations));
  kv("nodes_generated", fmt_long(r.nodes_generated));
  kv("extension_time", fmt_exact(r.extension_time));
  kv("setup_time", fmt_exact(r.setup_time));
  kv("rs_tail_length", fmt_exact(r.rs_tail_length));
  kv("path_points", std::to_string(r.path.size()));
  return out;
}

std::string format_table(const PlanResult* mhha, const PlanResult* hybrid) {
  auto cell = [](const PlanResult* r, auto get) -> std::string {
    if (!r || !r->found()) return "no solution";
    return get(*r);
  };
  struct Row {
    const char* label;
    std::string a, b;
  };
  const auto nodes = [](const PlanResult& r) { return std::to_string(r.nodes_expanded); };
  const auto iters = [](const PlanResult& r) { return std::to_string(r.iterations); };
  const auto time = [](const PlanResult& r) { return display_number(r.extension_time); };
  const auto len = [](const PlanResult& r) { return display_number(r.path_length); };
  const std::vector<Row> rows{
      {"Number of Extended Nodes", cell(mhha, nodes), cell(hybrid, nodes)},
      {"Number of Iterations", cell(mhha, iters), cell(hybrid, iters)},
      {"Extension Time (s)", cell(mhha, time), cell(hybrid, time)},
      {"Path lengths (m)", cell(mhha, len), cell(hybrid, len)},
  };
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-26s %14s %14s\n", "", "MHHA*", "Hybrid A*");
  out += buf;
  for (const Row& row : rows) {
    std::snprintf(buf, sizeof buf, "%-26s %14s %14s\n", row.label, row.a.c_str(), row.b.c_str());
    out += buf;
  }
  return out;
}

nlohmann::ordered_json metrics_json(const PlanResult& r) {
  nlohmann::ordered_json j;
  j["termination"] = to_string(r.termination);
  j["found"] = r.found();
  j["path_length"] = r.path_length;
  j["cost"] = r.found() ? nlohmann::ordered_json(r.cost) : nlohmann::ordered_json(nullptr);
  j["nodes_expanded"] = r.nodes_expanded;
  j["iterations"] = r.iterations;
  j["nodes_generated"] = r.nodes_generated;
  j["extension_time"] = r.extension_time;
  j["setup_time"] = r.setup_time;
  j["rs_tail_length"] = r.rs_tail_length;
  j["path_points"] = r.path.size();
  return j;
}

PlanResult run_planner(PlannerKind planner, const Scenario& scenario, bool trace) {
  SearchConfig config = scenario.search;
  config.record_trace = trace;
  return planner == PlannerKind::Mhha ? mhha_star(scenario.start, scenario.goal, scenario, config)
                                      : hybrid_a_star(scenario.start, scenario.goal, scenario, config);
}

int cmd_validate(const fs::path& scenario, std::ostream& out, std::ostream& err) {
  if (!load_checked(scenario, err)) return kExitError;
  out << "ok\n";
  return kExitFound;
}

int cmd_plan(const PlanOptions& options, std::ostream& out, std::ostream& err) {
  const auto sc = load_checked(options.scenario, err);
  if (!sc) return kExitError;
  try {
    const std::string started = utc_timestamp();
    const PlanResult r = run_planner(options.planner, *sc, options.trace || options.svg.has_value());
    const std::string path_text = format_path(r.path);
    if (options.path_out) {
      write_file(*options.path_out, path_text);
    } else {
      out << path_text;
    }
    out << format_metrics(r, options.planner);
    if (options.svg) write_file(*options.svg, render_svg(*sc, r, r.trace));
    if (options.report) {
      nlohmann::ordered_json j;
      j["scenario"] = sc->name.empty() ? options.scenario.string() : sc->name;
      j["started"] = started;
      j["finished"] = utc_timestamp();
      j["config"] = nlohmann::ordered_json::parse(dump_scenario(*sc))["search"];
      j[to_string(options.planner)] = metrics_json(r);
      write_file(*options.report, j.dump(2) + "\n");
    }
    if (!r.found()) {
      err << "no solution\n";
      return kExitNoSolution;
    }
    return kExitFound;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& err) {
  const auto sc = load_checked(options.scenario, err);
  if (!sc) return kExitError;
  try {
    const std::string started = utc_timestamp();
    PlanResult results[2];
    std::exception_ptr errors[2];
    const PlannerKind kinds[2] = {PlannerKind::Mhha, PlannerKind::Hybrid};
    auto job = [&](int k) {
      try {
        results[k] = run_planner(kinds[k], *sc, options.trace);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    };
    if (options.parallel) {
      std::thread other(job, 1);
      job(0);
      other.join();
    } else {
      job(0);
      job(1);
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    const std::string table = format_table(&results[0], &results[1]);
    out << table;
    fs::create_directories(options.out_dir);
    write_file(options.out_dir / "table.txt", table);
    nlohmann::ordered_json report;
    report["scenario"] = sc->name.empty() ? options.scenario.string() : sc->name;
    report["started"] = started;
    report["finished"] = utc_timestamp();
    report["config"] = nlohmann::ordered_json::parse(dump_scenario(*sc))["search"];
    for (int k = 0; k < 2; ++k) {
      const std::string name = to_string(kinds[k]);
      write_file(options.out_dir / (name + "_path.txt"), format_path(results[k].path));
      write_file(options.out_dir / (name + ".svg"), render_svg(*sc, results[k], results[k].trace));
      report[name] = metrics_json(results[k]);
    }
    write_file(options.out_dir / "report.json", report.dump(2) + "\n");

    if (!results[0].found() || !results[1].found()) {
      err << "no solution\n";
      return kExitNoSolution;
    }
    return kExitFound;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace mhha
