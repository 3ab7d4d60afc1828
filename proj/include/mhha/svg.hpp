#pragma once

// Static SVG figures of a planning result: obstacle points, the expansion tree,
// the path and the vehicle outline at start and goal.

#include <string>
#include <vector>

#include "mhha/scenario.hpp"
#include "mhha/search.hpp"

namespace mhha {

struct SvgStyle {
  double pixels_per_meter = 20.0;
  double margin_px = 10.0;
};

/// Deterministic for deterministic input; coordinates are printed with fixed
/// precision so the output does not depend on the platform's float formatting.
std::string render_svg(const Scenario& scenario, const PlanResult& result,
                       const std::vector<ExpansionRecord>& trace, const SvgStyle& style = {});

}  // namespace mhha
