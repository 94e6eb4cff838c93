#include <cstring>
#include <set>

#include "doctest.h"
#include "masonry/wallplan.hpp"

using namespace masonry;

TEST_CASE("running bond layout for the 2.5 x 0.3 case study wall") {
  auto bricks = generate_layout(WallSpec{2.5, 0.3, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  CHECK(bricks.size() == 16);
  int rows[3] = {0, 0, 0};
  int halves = 0;
  for (const auto& b : bricks) {
    REQUIRE(b.row >= 0);
    REQUIRE(b.row < 3);
    ++rows[b.row];
    if (b.kind == BrickKind::Half) ++halves;
    CHECK(b.z_base == doctest::Approx(b.row * 0.1));
  }
  CHECK(rows[0] == 5);  // even rows: full bricks only
  CHECK(rows[1] == 6);  // odd rows: half + 4 full + half
  CHECK(rows[2] == 5);
  CHECK(halves == 2);

  auto [graph, adhesions] = compute_dependencies(bricks);
  CHECK(adhesions.size() == 20);
}

TEST_CASE("single-brick wall") {
  WallPlan plan = make_wall_plan(WallSpec{0.5, 0.1, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  CHECK(plan.bricks.size() == 1);
  CHECK(plan.adhesions.empty());
  CHECK(plan.graph.edges.empty());
  CHECK(plan.bricks[0].x_start == doctest::Approx(0.0));
  CHECK(plan.bricks[0].x_end == doctest::Approx(0.5));
}

TEST_CASE("1.0 x 0.2 wall gives 5 bricks and 4 adhesions") {
  WallPlan plan = make_wall_plan(WallSpec{1.0, 0.2, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  CHECK(plan.bricks.size() == 5);
  CHECK(plan.adhesions.size() == 4);

  // every adhesion spans the horizontal overlap of its brick pair
  for (const auto& a : plan.adhesions) {
    const auto& top = plan.bricks[a.top_brick];
    const auto& bot = plan.bricks[a.bottom_brick];
    CHECK(top.row == bot.row + 1);
    CHECK(a.x_start >= bot.x_start - 1e-12);
    CHECK(a.x_start >= top.x_start - 1e-12);
    CHECK(a.x_start + a.width <= bot.x_end + 1e-12);
    CHECK(a.x_start + a.width <= top.x_end + 1e-12);
    CHECK(a.z == doctest::Approx(top.z_base));
  }
}

TEST_CASE("layout rejects non-modular dimensions") {
  CHECK_THROWS_AS(generate_layout(WallSpec{2.4, 0.3, 0.3}, BrickSpec{0.5, 0.1, 0.3}),
                  PlanError);
  CHECK_THROWS_AS(generate_layout(WallSpec{2.5, 0.25, 0.3}, BrickSpec{0.5, 0.1, 0.3}),
                  PlanError);
  CHECK_THROWS_AS(generate_layout(WallSpec{0.0, 0.3, 0.3}, BrickSpec{0.5, 0.1, 0.3}),
                  PlanError);
}

TEST_CASE("horizontal overlap") {
  BrickTask a{0, BrickKind::Full, 1, 0.25, 0.75, 0.1, {0.5, 0.15}};
  BrickTask b{1, BrickKind::Full, 0, 0.0, 0.5, 0.0, {0.25, 0.05}};
  auto ov = horizontal_overlap(a, b);  // (start, width)
  REQUIRE(ov.has_value());
  CHECK(ov->first == doctest::Approx(0.25));
  CHECK(ov->second == doctest::Approx(0.25));

  BrickTask c{2, BrickKind::Full, 0, 0.75, 1.25, 0.0, {1.0, 0.05}};
  CHECK_FALSE(horizontal_overlap(a, c).has_value());  // edge contact only
}

TEST_CASE("dependency graph connects bricks through interfaces") {
  WallPlan plan = make_wall_plan(WallSpec{1.0, 0.2, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  for (const auto& a : plan.adhesions) {
    NodeRef top{NodeKind::Brick, a.top_brick};
    NodeRef bot{NodeKind::Brick, a.bottom_brick};
    NodeRef node{NodeKind::Adhesion, a.id};
    CHECK(plan.graph.has_path(top, node));
    CHECK(plan.graph.has_path(node, bot));
    CHECK(plan.graph.has_path(top, bot));
    CHECK_FALSE(plan.graph.has_path(bot, top));
  }
}

TEST_CASE("conflict sets exclude dependency-connected pairs") {
  WallPlan plan = make_wall_plan(WallSpec{1.0, 0.2, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  ConflictSets cs = compute_conflicts(plan, 0.8);
  for (const auto& [i, j] : cs.brick_brick) {
    CHECK(i < j);
    CHECK(distance(plan.bricks[i].center, plan.bricks[j].center) < 0.8);
    CHECK_FALSE(plan.graph.connected_either_direction({NodeKind::Brick, i},
                                                      {NodeKind::Brick, j}));
  }
  for (const auto& [b, a] : cs.brick_adhesion) {
    CHECK(distance(plan.bricks[b].center, plan.adhesions[a].center) < 0.8);
    CHECK_FALSE(plan.graph.connected_either_direction({NodeKind::Brick, b},
                                                      {NodeKind::Adhesion, a}));
    CHECK(plan.adhesions[a].top_brick != b);
    CHECK(plan.adhesions[a].bottom_brick != b);
  }
  // a generous radius pulls in every unrelated pair, a tiny one none
  ConflictSets none = compute_conflicts(plan, 1e-6);
  CHECK(none.brick_brick.empty());
  CHECK(none.brick_adhesion.empty());
}

namespace {

std::string ascii_stl_box(double lx, double ly, double lz) {
  // a degenerate "mesh": two triangles spanning the box diagonal are enough
  // for bounding-box ingestion
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "solid box\n"
                " facet normal 0 0 1\n  outer loop\n"
                "   vertex 0 0 0\n   vertex %g 0 0\n   vertex %g %g %g\n"
                "  endloop\n endfacet\n"
                "endsolid box\n",
                lx, lx, ly, lz);
  return buf;
}

std::string binary_stl_box(double lx, double ly, double lz) {
  std::string out(80, '\0');
  uint32_t n = 1;
  out.append(reinterpret_cast<const char*>(&n), 4);
  float tri[12] = {0, 0, 1,  0, 0, 0,  static_cast<float>(lx), 0, 0,
                   static_cast<float>(lx), static_cast<float>(ly), static_cast<float>(lz)};
  out.append(reinterpret_cast<const char*>(tri), 48);
  out.append(2, '\0');  // attribute byte count
  return out;
}

}  // namespace

TEST_CASE("STL ingestion maps extents to wall dimensions by magnitude") {
  WallSpec w = ingest_mesh_bounds(ascii_stl_box(2.5, 0.3, 0.3));
  CHECK(w.length == doctest::Approx(2.5));
  CHECK(w.height == doctest::Approx(0.3));
  CHECK(w.width == doctest::Approx(0.3));

  WallSpec wb = ingest_mesh_bounds(binary_stl_box(2.5, 0.2, 0.3));
  CHECK(wb.length == doctest::Approx(2.5));
  CHECK(wb.height == doctest::Approx(0.3));
  CHECK(wb.width == doctest::Approx(0.2));
}

TEST_CASE("STL ingestion rejects malformed input") {
  CHECK_THROWS_AS(ingest_mesh_bounds(""), PlanError);
  CHECK_THROWS_AS(ingest_mesh_bounds("solid empty\nendsolid empty\n"), PlanError);
  std::string truncated(80, '\0');
  uint32_t n = 5;
  truncated.append(reinterpret_cast<const char*>(&n), 4);
  CHECK_THROWS_AS(ingest_mesh_bounds(truncated), PlanError);
}
