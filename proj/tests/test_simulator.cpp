#include <cmath>

#include "doctest.h"
#include "masonry/simulator.hpp"
#include "masonry/solver.hpp"
#include "test_util.hpp"

using namespace masonry;
using namespace masonry::testutil;

namespace {

SimConfig sim_for(const Instance& inst) {
  SimConfig cfg;
  cfg.clearance = inst.prob.clearance;
  cfg.home_positions = inst.prob.pickup_points;
  cfg.home_positions.push_back({0.0, -1.5});  // adhesion UAV home
  return cfg;
}

double dist3(const Vec3& a, const Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace

TEST_CASE("timelines are continuous and time-monotone") {
  Instance inst = make_instance(1.0, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  SimConfig cfg = sim_for(inst);
  auto timelines = plan_timelines(g, inst.plan, inst.prob, cfg);
  REQUIRE(timelines.size() == 3);  // 2 brick UAVs + adhesion UAV

  for (const auto& tl : timelines) {
    REQUIRE_FALSE(tl.phases.empty());
    CHECK(tl.phases.front().t0 == doctest::Approx(0.0));
    for (size_t p = 0; p < tl.phases.size(); ++p) {
      const Phase& ph = tl.phases[p];
      CAPTURE(tl.uav);
      CAPTURE(p);
      CHECK(ph.t1 >= ph.t0 - 1e-9);
      if (p > 0) {
        const Phase& prev = tl.phases[p - 1];
        CHECK(ph.t0 == doctest::Approx(prev.t1));
        CHECK(dist3(ph.p0, prev.p1) < 1e-9);  // no teleports
      }
    }
  }
}

TEST_CASE("placement phases line up with the schedule") {
  Instance inst = make_instance(1.0, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  SimConfig cfg = sim_for(inst);
  auto timelines = plan_timelines(g, inst.plan, inst.prob, cfg);

  // each brick's Place phase happens inside [S_i, S_i + d_brick] at the
  // brick's world position
  for (const auto& [brick, k] : g.brick_assignments) {
    double s = g.brick_starts.at(brick);
    const auto& b = inst.plan.bricks.at(brick);
    PlanPoint w = inst.plan.world_center(b.center);
    const auto& tl = timelines.at(k);
    bool found = false;
    for (const auto& ph : tl.phases) {
      if (ph.kind != PhaseKind::Place) continue;
      if (std::abs(ph.p1[0] - w.x) > 1e-6 || std::abs(ph.p1[2] - w.z) > 1e-6) continue;
      found = true;
      CHECK(ph.construction_zone);
      CHECK(ph.t0 >= s - 1e-6);
      CHECK(ph.t1 <= s + inst.prob.d_brick + 1e-6);
    }
    CAPTURE(brick);
    CHECK(found);
  }

  // each adhesion's Spray phase covers [S_j, S_j + d_spray]
  const auto& adh_tl = timelines.back();
  int sprays = 0;
  for (const auto& ph : adh_tl.phases)
    if (ph.kind == PhaseKind::Spray) {
      ++sprays;
      CHECK(ph.construction_zone);
      CHECK(ph.t1 - ph.t0 == doctest::Approx(inst.prob.d_spray));
    }
  CHECK(sprays == static_cast<int>(inst.plan.adhesions.size()));
}

TEST_CASE("mission trace maintains construction-zone clearance") {
  Instance inst = make_instance(1.0, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  SimConfig cfg = sim_for(inst);
  auto timelines = resolve_logistics_conflicts(
      plan_timelines(g, inst.plan, inst.prob, cfg), cfg);
  SimTrace trace = run_mission(timelines, cfg);

  REQUIRE_FALSE(trace.times.empty());
  REQUIRE(trace.positions.size() == timelines.size());
  CHECK(trace.min_pairwise_distance.size() == trace.times.size());

  double min_con = 1e30;
  for (double d : trace.min_construction_distance) min_con = std::min(min_con, d);
  CHECK(min_con >= cfg.clearance - 1e-9);

  // trace covers the whole mission
  double end = 0.0;
  for (const auto& tl : timelines) end = std::max(end, tl.end_time());
  CHECK(trace.times.back() >= end - cfg.timestep - 1e-9);
}

TEST_CASE("sampled positions follow the timelines") {
  Instance inst = make_instance(0.5, 0.1, 1);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  SimConfig cfg = sim_for(inst);
  auto timelines = plan_timelines(g, inst.plan, inst.prob, cfg);
  SimTrace trace = run_mission(timelines, cfg);
  for (size_t u = 0; u < timelines.size(); ++u)
    for (size_t i = 0; i < trace.times.size(); i += 25) {
      Vec3 expect = timelines[u].position(trace.times[i]);
      CHECK(dist3(trace.positions[u][i], expect) < 1e-9);
    }
}

TEST_CASE("events are emitted in chronological order per UAV") {
  Instance inst = make_instance(1.0, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  SimConfig cfg = sim_for(inst);
  SimTrace trace = run_mission(plan_timelines(g, inst.plan, inst.prob, cfg), cfg);
  REQUIRE_FALSE(trace.events.empty());
  std::map<int, double> last;
  for (const auto& e : trace.events) {
    auto it = last.find(e.uav);
    if (it != last.end()) CHECK(e.time >= it->second - 1e-9);
    last[e.uav] = e.time;
    CHECK_FALSE(e.description.empty());
  }
}

TEST_CASE("over-tight schedules are rejected, not silently stretched") {
  Instance inst = make_instance(1.0, 0.2, 2);
  inst.prob.d_brick = 0.5;  // less than descend + place + ascend time
  Schedule g;
  // hand-build a schedule dense enough to break the kinematics
  int robot = 0;
  double t = 0.0;
  for (const auto& b : inst.plan.bricks) {
    if (b.row > 0) continue;
    g.brick_assignments[b.id] = robot;
    g.brick_starts[b.id] = t;
    t += inst.prob.d_brick;
  }
  for (const auto& a : inst.plan.adhesions) {
    g.adhesion_starts[a.id] = 1000.0 + a.id * 100.0;
    g.adhesion_durations[a.id] = inst.prob.d_spray;
    g.adhesion_order.push_back(a.id);
  }
  // bricks of upper rows, far in the future
  for (const auto& b : inst.plan.bricks) {
    if (b.row == 0) continue;
    g.brick_assignments[b.id] = robot;
    g.brick_starts[b.id] = 2000.0 + b.id * 100.0;
  }
  g.makespan = 4000.0;
  SimConfig cfg = sim_for(inst);
  CHECK_THROWS_AS(plan_timelines(g, inst.plan, inst.prob, cfg), SimError);
}
