#include "masonry/wallplan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace masonry {

namespace {
constexpr double kGeomTol = 1e-9;

bool is_integer_multiple(double value, double unit, double* count_out) {
  if (unit <= 0.0) return false;
  double q = value / unit;
  double rounded = std::round(q);
  if (std::abs(q - rounded) > 1e-6 || rounded < 1.0) return false;
  *count_out = rounded;
  return true;
}
}  // namespace

double distance(const PlanPoint& a, const PlanPoint& b) {
  return std::hypot(a.x - b.x, a.z - b.z);
}

void BrickSpec::validate() const {
  if (full_width <= 0.0 || height <= 0.0 || thickness <= 0.0)
    throw PlanError("brick dimensions must be positive");
}

void WallSpec::validate() const {
  if (length <= 0.0 || height <= 0.0 || width <= 0.0)
    throw PlanError("wall dimensions must be positive");
}

bool DependencyGraph::has_path(const NodeRef& from, const NodeRef& to) const {
  if (from == to) return false;
  std::multimap<NodeRef, NodeRef> adj;
  for (const auto& e : edges) adj.insert(e);
  std::queue<NodeRef> frontier;
  std::set<NodeRef> seen;
  frontier.push(from);
  seen.insert(from);
  while (!frontier.empty()) {
    NodeRef cur = frontier.front();
    frontier.pop();
    auto [lo, hi] = adj.equal_range(cur);
    for (auto it = lo; it != hi; ++it) {
      if (it->second == to) return true;
      if (seen.insert(it->second).second) frontier.push(it->second);
    }
  }
  return false;
}

bool DependencyGraph::connected_either_direction(const NodeRef& a, const NodeRef& b) const {
  return has_path(a, b) || has_path(b, a);
}

std::vector<BrickTask> generate_layout(const WallSpec& wall, const BrickSpec& brick) {
  wall.validate();
  brick.validate();
  double cols = 0.0, rows = 0.0;
  if (!is_integer_multiple(wall.length, brick.full_width, &cols))
    throw PlanError("wall length is not an integer multiple of the full brick width");
  if (!is_integer_multiple(wall.height, brick.height, &rows))
    throw PlanError("wall height is not an integer multiple of the brick height");

  const int n_cols = static_cast<int>(cols);
  const int n_rows = static_cast<int>(rows);
  const double wf = brick.full_width;
  const double wh = brick.half_width();

  std::vector<BrickTask> bricks;
  int next_id = 0;
  auto push = [&](BrickKind kind, int row, double x0, double x1) {
    BrickTask b;
    b.id = next_id++;
    b.kind = kind;
    b.row = row;
    b.x_start = x0;
    b.x_end = x1;
    b.z_base = row * brick.height;
    b.center = {(x0 + x1) / 2.0, b.z_base + brick.height / 2.0};
    bricks.push_back(b);
  };

  // Running bond: even rows are all full bricks, odd rows start and end
  // with a half brick.
  for (int row = 0; row < n_rows; ++row) {
    if (row % 2 == 0) {
      for (int c = 0; c < n_cols; ++c) push(BrickKind::Full, row, c * wf, (c + 1) * wf);
    } else {
      push(BrickKind::Half, row, 0.0, wh);
      for (int c = 0; c < n_cols - 1; ++c)
        push(BrickKind::Full, row, wh + c * wf, wh + (c + 1) * wf);
      push(BrickKind::Half, row, wall.length - wh, wall.length);
    }
  }
  return bricks;
}

std::optional<std::pair<double, double>> horizontal_overlap(const BrickTask& top,
                                                            const BrickTask& bottom) {
  double lo = std::max(top.x_start, bottom.x_start);
  double hi = std::min(top.x_end, bottom.x_end);
  if (hi - lo <= kGeomTol) return std::nullopt;
  return std::make_pair(lo, hi - lo);
}

std::pair<DependencyGraph, std::vector<AdhesionTask>>
compute_dependencies(const std::vector<BrickTask>& bricks) {
  DependencyGraph graph;
  std::vector<AdhesionTask> adhesions;
  for (const auto& top : bricks) {
    for (const auto& bottom : bricks) {
      if (top.row != bottom.row + 1) continue;
      auto overlap = horizontal_overlap(top, bottom);
      if (!overlap) continue;
      AdhesionTask a;
      a.id = static_cast<int>(adhesions.size());
      a.x_start = overlap->first;
      a.width = overlap->second;
      a.z = top.z_base;
      a.top_brick = top.id;
      a.bottom_brick = bottom.id;
      a.center = {a.x_start + a.width / 2.0, a.z};
      adhesions.push_back(a);
      NodeRef bn{NodeKind::Brick, top.id};
      NodeRef an{NodeKind::Adhesion, a.id};
      NodeRef un{NodeKind::Brick, bottom.id};
      graph.edges.emplace_back(bn, an);
      graph.edges.emplace_back(an, un);
    }
  }
  return {graph, adhesions};
}

WallPlan make_wall_plan(const WallSpec& wall, const BrickSpec& brick) {
  WallPlan plan;
  plan.wall = wall;
  plan.brick = brick;
  plan.bricks = generate_layout(wall, brick);
  auto [graph, adhesions] = compute_dependencies(plan.bricks);
  plan.graph = std::move(graph);
  plan.adhesions = std::move(adhesions);
  for (const auto& a : plan.adhesions) {
    plan.precedence_ab.emplace_back(a.id, a.top_brick);
    plan.precedence_ba.emplace_back(a.bottom_brick, a.id);
  }
  return plan;
}

ConflictSets compute_conflicts(const WallPlan& plan, double clearance_radius) {
  if (clearance_radius <= 0.0) throw PlanError("clearance radius must be positive");
  ConflictSets out;
  const auto& bricks = plan.bricks;
  for (size_t i = 0; i < bricks.size(); ++i) {
    for (size_t j = i + 1; j < bricks.size(); ++j) {
      if (distance(bricks[i].center, bricks[j].center) > clearance_radius) continue;
      NodeRef a{NodeKind::Brick, bricks[i].id};
      NodeRef b{NodeKind::Brick, bricks[j].id};
      if (plan.graph.connected_either_direction(a, b)) continue;
      out.brick_brick.emplace(bricks[i].id, bricks[j].id);
    }
  }
  for (const auto& b : bricks) {
    for (const auto& a : plan.adhesions) {
      if (distance(b.center, a.center) > clearance_radius) continue;
      NodeRef bn{NodeKind::Brick, b.id};
      NodeRef an{NodeKind::Adhesion, a.id};
      if (plan.graph.connected_either_direction(bn, an)) continue;
      out.brick_adhesion.emplace(b.id, a.id);
    }
  }
  return out;
}

}  // namespace masonry
