// mhha: plan, compare and validate parking scenarios from the command line.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "mhha/cli.hpp"

int main(int argc, char** argv) {
  using namespace mhha;
  CLI::App app{"Multi-heuristic hybrid A* parking planner"};
  app.require_subcommand(1);

  PlanOptions plan;
  std::string svg, path_out, report;
  auto* plan_cmd = app.add_subcommand("plan", "Run one planner on a scenario");
  plan_cmd->add_option("--scenario", plan.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  plan_cmd->add_option("--planner", plan.planner, "mhha or hybrid")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, PlannerKind>{{"mhha", PlannerKind::Mhha}, {"hybrid", PlannerKind::Hybrid}}));
  plan_cmd->add_option("--svg", svg, "Write an SVG figure");
  plan_cmd->add_option("--path", path_out, "Write the path here instead of standard output");
  plan_cmd->add_option("--report", report, "Write a JSON metrics report");
  plan_cmd->add_flag("--trace", plan.trace, "Record the expansion tree");

  CompareOptions compare;
  bool no_trace = false;
  auto* compare_cmd = app.add_subcommand("compare", "Run MHHA* and Hybrid A* and tabulate their metrics");
  compare_cmd->add_option("--scenario", compare.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--out", compare.out_dir, "Output directory")->required();
  compare_cmd->add_flag("--parallel", compare.parallel, "Run the planners on two threads");
  compare_cmd->add_flag("--no-trace", no_trace, "Skip the expansion trees in the SVGs");

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("--scenario", validate_file, "Scenario JSON file")->required();

  std::string which, export_out;
  auto* export_cmd = app.add_subcommand("export", "Write a built-in parking scenario as JSON");
  export_cmd->add_option("--case", which, "forward or backward")
      ->required()
      ->check(CLI::IsMember({"forward", "backward"}));
  export_cmd->add_option("--out", export_out, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  if (*plan_cmd) {
    if (!svg.empty()) plan.svg = svg;
    if (!path_out.empty()) plan.path_out = path_out;
    if (!report.empty()) plan.report = report;
    return cmd_plan(plan, std::cout, std::cerr);
  }
  if (*compare_cmd) {
    compare.trace = !no_trace;
    return cmd_compare(compare, std::cout, std::cerr);
  }
  if (*validate_cmd) return cmd_validate(validate_file, std::cout, std::cerr);
  try {
    Scenario sc = parking_scenario(which == "forward" ? ParkingCase::ForwardParking : ParkingCase::BackwardParking);
    save_scenario(sc, export_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitFound;
}
