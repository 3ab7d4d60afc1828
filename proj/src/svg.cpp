#include "mhha/svg.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <string>

namespace mhha {

namespace {

class Canvas {
 public:
  Canvas(const GridSpec& ws, const SvgStyle& style) : ws_(ws), style_(style) {}

  double px(double x) const { return style_.margin_px + (x - ws_.x_min) * style_.pixels_per_meter; }
  double py(double y) const { return style_.margin_px + (ws_.y_max - y) * style_.pixels_per_meter; }
  double width() const { return 2.0 * style_.margin_px + (ws_.x_max - ws_.x_min) * style_.pixels_per_meter; }
  double height() const { return 2.0 * style_.margin_px + (ws_.y_max - ws_.y_min) * style_.pixels_per_meter; }

  void printf(const char* fmt, ...) __attribute__((format(printf, 2, 3)));
  std::string str() && { return std::move(out_); }
  void point(double x, double y) { printf("%.2f,%.2f ", px(x), py(y)); }

 private:
  const GridSpec& ws_;
  SvgStyle style_;
  std::string out_;
};

void Canvas::printf(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  const int n = std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  if (n > 0) out_.append(buf, static_cast<std::size_t>(n) < sizeof buf ? static_cast<std::size_t>(n) : sizeof buf - 1);
}

void draw_vehicle(Canvas& c, const Pose& pose, const VehicleGeometry& geometry, const char* color) {
  c.printf("<polygon fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"", color);
  for (const Point2& p : vehicle_corners(pose, geometry)) c.point(p.x, p.y);
  c.printf("\"/>\n");
  // Heading tick from the rear axle.
  const Point2 tip = body_to_world(pose, Point2{geometry.wheelbase, 0.0});
  c.printf("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"1.5\"/>\n",
           c.px(pose.x()), c.py(pose.y()), c.px(tip.x), c.py(tip.y), color);
}

void draw_polyline(Canvas& c, const std::vector<PathPoint>& path, std::size_t begin, std::size_t end,
                   const char* attrs) {
  if (end <= begin + 1) return;
  c.printf("<polyline fill=\"none\" %s points=\"", attrs);
  for (std::size_t k = begin; k < end; ++k) c.point(path[k].pose.x(), path[k].pose.y());
  c.printf("\"/>\n");
}

}  // namespace

std::string render_svg(const Scenario& scenario, const PlanResult& result,
                       const std::vector<ExpansionRecord>& trace, const SvgStyle& style) {
  Canvas c(scenario.workspace, style);
  c.printf("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  c.printf("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.2f %.2f\">\n",
           c.width(), c.height(), c.width(), c.height());
  c.printf("<rect x=\"0\" y=\"0\" width=\"%.2f\" height=\"%.2f\" fill=\"white\"/>\n", c.width(), c.height());

  c.printf("<g id=\"obstacles\" fill=\"black\">\n");
  for (const Point2& p : scenario.obstacles.points()) {
    c.printf("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1\"/>\n", c.px(p.x), c.py(p.y));
  }
  c.printf("</g>\n");

  c.printf("<g id=\"expansions\" stroke-width=\"0.5\">\n");
  for (const ExpansionRecord& e : trace) {
    if (!e.parent) continue;
    c.printf("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\"/>\n", c.px(e.parent->x()),
             c.py(e.parent->y()), c.px(e.pose.x()), c.py(e.pose.y()), e.queue == 0 ? "#4a7fd4" : "#e89a2c");
  }
  c.printf("</g>\n");

  c.printf("<g id=\"path\">\n");
  const std::size_t tail = std::min(result.rs_tail_begin, result.path.size());
  draw_polyline(c, result.path, 0, tail, "stroke=\"#1b9e3a\" stroke-width=\"2\"");
  if (tail > 0 && tail < result.path.size()) {
    draw_polyline(c, result.path, tail - 1, result.path.size(),
                  "stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6,3\"");
  }
  c.printf("</g>\n");

  c.printf("<g id=\"vehicles\">\n");
  draw_vehicle(c, scenario.start, scenario.vehicle, "#2060c0");
  draw_vehicle(c, scenario.goal, scenario.vehicle, "#c02020");
  c.printf("</g>\n");
  c.printf("</svg>\n");
  return std::move(c).str();
}

}  // namespace mhha
