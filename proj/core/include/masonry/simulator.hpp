#pragma once

#include <array>
#include <string>
#include <vector>

#include "masonry/solver.hpp"
#include "masonry/validator.hpp"

namespace masonry {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vec3 = std::array<double, 3>;

struct SimConfig {
  double h_cruise = 2.0;
  double v_travel = 1.5;
  double v_vertical = 0.5;
  double stabilize_pause = 1.0;
  double timestep = 0.05;
  double clearance = 0.8;
  std::vector<std::pair<double, double>> home_positions;  // per UAV (x, y), ground level
};

enum class PhaseKind { Idle, Takeoff, Cruise, Descend, Place, Ascend, Spray, Hover };

const char* to_string(PhaseKind k);

struct Phase {
  PhaseKind kind = PhaseKind::Idle;
  double t0 = 0.0;
  double t1 = 0.0;
  Vec3 p0{0, 0, 0};
  Vec3 p1{0, 0, 0};
  bool construction_zone = false;

  Vec3 at(double t) const;
};

struct UavTimeline {
  int uav = -1;
  std::vector<Phase> phases;

  Vec3 position(double t) const;
  double end_time() const { return phases.empty() ? 0.0 : phases.back().t1; }
};

struct SimEvent {
  double time = 0.0;
  int uav = -1;
  std::string description;
};

struct SimTrace {
  double timestep = 0.05;
  std::vector<double> times;
  std::vector<std::vector<Vec3>> positions;  // [uav][step]
  std::vector<SimEvent> events;
  std::vector<double> min_pairwise_distance;      // all UAV pairs
  std::vector<double> min_construction_distance;  // pairs with both UAVs in
                                                  // construction-zone phases
  std::vector<CuringRecord> curing;               // attached post-hoc
};

/// Expands a validated schedule into per-UAV kinematic phase timelines.
/// Brick UAV k is UAV k; the adhesion UAV is UAV n_robots.
std::vector<UavTimeline> plan_timelines(const Schedule& s, const WallPlan& plan,
                                        const ScheduleProblem& prob, const SimConfig& cfg);

SimTrace run_mission(const std::vector<UavTimeline>& timelines, const SimConfig& cfg);

/// Priority-delay resolution of cruise-phase crossings: the adhesion UAV has
/// right-of-way (its paced timeline carries no slack), then brick UAVs in id
/// order; a lower-priority UAV consumes its own hover slack to delay the
/// offending cruise. Construction-zone phases are never touched.
std::vector<UavTimeline> resolve_logistics_conflicts(std::vector<UavTimeline> timelines,
                                                     const SimConfig& cfg);

}  // namespace masonry
