#include "masonry/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace masonry {

namespace {

const char* kPalette[] = {"#4477aa", "#66ccee", "#228833", "#ccbb44", "#ee6677",
                          "#aa3377", "#bbbbbb", "#e07020", "#117755", "#7755cc"};
constexpr int kPaletteSize = 10;

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void rect(std::ostream& out, double x, double y, double w, double h, const std::string& fill,
          const std::string& stroke = "#333333") {
  out << "<rect x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" width=\"" << f2(w)
      << "\" height=\"" << f2(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
      << "\" stroke-width=\"0.5\"/>\n";
}

void text(std::ostream& out, double x, double y, const std::string& s, int size = 10) {
  out << "<text x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" font-family=\"sans-serif\" "
      << "font-size=\"" << size << "\" fill=\"#222222\">" << s << "</text>\n";
}

}  // namespace

void write_wall_svg(const WallPlan& plan, std::ostream& out) {
  const double scale = 200.0;  // px per meter
  const double margin = 30.0;
  double w = plan.wall.length * scale + 2 * margin;
  double h = plan.wall.height * scale + 2 * margin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f2(w) << "\" height=\""
      << f2(h) << "\" viewBox=\"0 0 " << f2(w) << " " << f2(h) << "\">\n";
  rect(out, margin, margin, plan.wall.length * scale, plan.wall.height * scale, "#ffffff");
  auto px = [&](double x) { return margin + x * scale; };
  auto py = [&](double z) { return margin + (plan.wall.height - z) * scale; };
  for (const auto& b : plan.bricks) {
    rect(out, px(b.x_start), py(b.z_base + plan.brick.height), b.width() * scale,
         plan.brick.height * scale, kPalette[b.id % kPaletteSize]);
    text(out, px(b.center.x) - 6, py(b.z_base) - plan.brick.height * scale / 2 + 4,
         "B" + std::to_string(b.id), 9);
  }
  for (const auto& a : plan.adhesions)
    rect(out, px(a.x_start), py(a.z) - 2, a.width * scale, 4, "#888888", "#555555");
  out << "</svg>\n";
}

void write_gantt_svg(const Schedule& s, const WallPlan& plan, const ScheduleProblem& prob,
                     std::ostream& out) {
  const double width = 900.0, lane_h = 34.0, margin_l = 70.0, margin_t = 20.0;
  const int lanes = prob.n_robots + 1;
  double t_max = std::max(s.makespan, 1.0);
  double sx = (width - margin_l - 20.0) / t_max;
  double h = margin_t + lanes * lane_h + 40.0;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f2(width) << "\" height=\""
      << f2(h) << "\" viewBox=\"0 0 " << f2(width) << " " << f2(h) << "\">\n";

  for (int k = 0; k < prob.n_robots; ++k)
    text(out, 8, margin_t + k * lane_h + lane_h / 2 + 4, "UAV " + std::to_string(k));
  text(out, 8, margin_t + prob.n_robots * lane_h + lane_h / 2 + 4, "adhesion");

  for (const auto& [id, robot] : s.brick_assignments) {
    double t0 = s.brick_starts.at(id);
    rect(out, margin_l + t0 * sx, margin_t + robot * lane_h + 4, prob.d_brick * sx,
         lane_h - 8, kPalette[id % kPaletteSize]);
    text(out, margin_l + t0 * sx + 2, margin_t + robot * lane_h + lane_h / 2 + 3,
         "B" + std::to_string(id), 8);
  }

  double lane_y = margin_t + prob.n_robots * lane_h;
  for (const auto& [id, t0] : s.adhesion_starts) {
    double dur = s.adhesion_durations.count(id) ? s.adhesion_durations.at(id) : prob.d_spray;
    rect(out, margin_l + t0 * sx, lane_y + 4, prob.d_spray * sx, lane_h - 8, "#aaaaaa");
    if (dur > prob.d_spray)  // dynamic logistics leg to the next task
      rect(out, margin_l + (t0 + prob.d_spray) * sx, lane_y + 4, (dur - prob.d_spray) * sx,
           lane_h - 8, "#000000");
    text(out, margin_l + t0 * sx + 2, lane_y + lane_h / 2 + 3, "A" + std::to_string(id), 8);
  }

  // time axis
  double axis_y = margin_t + lanes * lane_h + 12.0;
  out << "<line x1=\"" << f2(margin_l) << "\" y1=\"" << f2(axis_y) << "\" x2=\""
      << f2(margin_l + t_max * sx) << "\" y2=\"" << f2(axis_y)
      << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  double tick = std::pow(10.0, std::floor(std::log10(t_max)));
  if (t_max / tick < 3.0) tick /= 2.0;
  for (double t = 0.0; t <= t_max + 1e-9; t += tick)
    text(out, margin_l + t * sx - 6, axis_y + 14, f2(t), 9);
  out << "</svg>\n";
}

void write_min_distance_svg(const SimTrace& trace, double clearance, std::ostream& out) {
  const double width = 900.0, height = 300.0, margin = 40.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f2(width) << "\" height=\""
      << f2(height) << "\" viewBox=\"0 0 " << f2(width) << " " << f2(height) << "\">\n";
  if (trace.times.empty()) {
    text(out, margin, height / 2, "empty trace");
    out << "</svg>\n";
    return;
  }
  double t_max = std::max(trace.times.back(), 1e-9);
  double d_max = clearance;
  for (double d : trace.min_pairwise_distance)
    if (std::isfinite(d)) d_max = std::max(d_max, d);
  double sx = (width - 2 * margin) / t_max;
  double sy = (height - 2 * margin) / d_max;
  auto px = [&](double t) { return margin + t * sx; };
  auto py = [&](double d) { return height - margin - d * sy; };

  out << "<polyline fill=\"none\" stroke=\"#4477aa\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < trace.times.size(); ++i) {
    double d = trace.min_pairwise_distance[i];
    if (!std::isfinite(d)) d = d_max;
    out << f2(px(trace.times[i])) << "," << f2(py(d)) << " ";
  }
  out << "\"/>\n";

  out << "<line x1=\"" << f2(px(0)) << "\" y1=\"" << f2(py(clearance)) << "\" x2=\""
      << f2(px(t_max)) << "\" y2=\"" << f2(py(clearance))
      << "\" stroke=\"#cc3333\" stroke-width=\"1.5\" stroke-dasharray=\"6,3\"/>\n";
  text(out, px(0) + 4, py(clearance) - 4, "r_c = " + f2(clearance) + " m", 10);
  text(out, width / 2 - 30, height - 8, "time [s]", 10);
  out << "</svg>\n";
}

}  // namespace masonry
