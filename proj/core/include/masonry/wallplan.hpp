#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace masonry {

struct PlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Point in the wall plane: x along the wall, z up.
struct PlanPoint {
  double x = 0.0;
  double z = 0.0;
};

double distance(const PlanPoint& a, const PlanPoint& b);

struct BrickSpec {
  double full_width = 0.0;
  double height = 0.0;
  double thickness = 0.0;

  double half_width() const { return full_width / 2.0; }
  void validate() const;
};

struct WallSpec {
  double length = 0.0;
  double height = 0.0;
  double width = 0.0;

  void validate() const;
};

enum class BrickKind { Full, Half };

struct BrickTask {
  int id = -1;
  BrickKind kind = BrickKind::Full;
  int row = 0;
  double x_start = 0.0;
  double x_end = 0.0;
  double z_base = 0.0;
  PlanPoint center;

  double width() const { return x_end - x_start; }
};

struct AdhesionTask {
  int id = -1;
  double x_start = 0.0;
  double width = 0.0;
  double z = 0.0;  // interface height == top brick z_base
  int top_brick = -1;
  int bottom_brick = -1;
  PlanPoint center;

  double x_end() const { return x_start + width; }
};

enum class NodeKind { Brick, Adhesion };

struct NodeRef {
  NodeKind kind = NodeKind::Brick;
  int id = -1;

  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

/// Directed edge (a, b) means task a starts only after task b completes.
struct DependencyGraph {
  std::vector<std::pair<NodeRef, NodeRef>> edges;

  bool has_path(const NodeRef& from, const NodeRef& to) const;
  bool connected_either_direction(const NodeRef& a, const NodeRef& b) const;
};

struct ConflictSets {
  std::set<std::pair<int, int>> brick_brick;      // unordered, stored i<j
  std::set<std::pair<int, int>> brick_adhesion;   // (brick id, adhesion id)
};

struct WallPlan {
  WallSpec wall;
  BrickSpec brick;
  std::vector<BrickTask> bricks;
  std::vector<AdhesionTask> adhesions;
  DependencyGraph graph;
  std::vector<std::pair<int, int>> precedence_ab;  // (adhesion, its top brick)
  std::vector<std::pair<int, int>> precedence_ba;  // (bottom brick, adhesion)

  /// The wall is centered at the workspace origin; layout coordinates run
  /// over [0, length], so world x = layout x - length/2.
  double x_offset() const { return -wall.length / 2.0; }
  PlanPoint world_center(const PlanPoint& p) const { return {p.x + x_offset(), p.z}; }
};

std::vector<BrickTask> generate_layout(const WallSpec& wall, const BrickSpec& brick);

std::optional<std::pair<double, double>> horizontal_overlap(const BrickTask& top,
                                                            const BrickTask& bottom);

std::pair<DependencyGraph, std::vector<AdhesionTask>>
compute_dependencies(const std::vector<BrickTask>& bricks);

WallPlan make_wall_plan(const WallSpec& wall, const BrickSpec& brick);

ConflictSets compute_conflicts(const WallPlan& plan, double clearance_radius);

/// Axis-aligned bounding box of an STL mesh (binary or ASCII), extents
/// mapped to (length, height, width) by descending magnitude.
WallSpec ingest_mesh_bounds(const std::string& stl_bytes);

}  // namespace masonry
