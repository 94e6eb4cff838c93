#include "masonry/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace masonry {

namespace {

double dist3(const Vec3& a, const Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

std::string fmt_phase(const Phase& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s -> (%.3f, %.3f, %.3f)", to_string(p.kind), p.p1[0],
                p.p1[1], p.p1[2]);
  return buf;
}

}  // namespace

const char* to_string(PhaseKind k) {
  switch (k) {
    case PhaseKind::Idle: return "Idle";
    case PhaseKind::Takeoff: return "Takeoff";
    case PhaseKind::Cruise: return "Cruise";
    case PhaseKind::Descend: return "Descend";
    case PhaseKind::Place: return "Place";
    case PhaseKind::Ascend: return "Ascend";
    case PhaseKind::Spray: return "Spray";
    case PhaseKind::Hover: return "Hover";
  }
  return "?";
}

Vec3 Phase::at(double t) const {
  if (t1 <= t0 || t <= t0) return p0;
  if (t >= t1) return p1;
  double f = (t - t0) / (t1 - t0);
  return {p0[0] + f * (p1[0] - p0[0]), p0[1] + f * (p1[1] - p0[1]),
          p0[2] + f * (p1[2] - p0[2])};
}

Vec3 UavTimeline::position(double t) const {
  if (phases.empty()) return {0, 0, 0};
  if (t <= phases.front().t0) return phases.front().p0;
  for (const auto& p : phases)
    if (t <= p.t1) return p.at(t);
  return phases.back().p1;
}

namespace {

struct TimelineBuilder {
  UavTimeline tl;
  double t = 0.0;
  Vec3 pos{0, 0, 0};

  void seg(PhaseKind kind, double duration, const Vec3& to, bool construction = false) {
    if (duration < 0.0) duration = 0.0;
    Phase p;
    p.kind = kind;
    p.t0 = t;
    p.t1 = t + duration;
    p.p0 = pos;
    p.p1 = to;
    p.construction_zone = construction;
    tl.phases.push_back(p);
    t = p.t1;
    pos = to;
  }
};

}  // namespace

std::vector<UavTimeline> plan_timelines(const Schedule& s, const WallPlan& plan,
                                        const ScheduleProblem& prob, const SimConfig& cfg) {
  const int n_uavs = prob.n_robots + 1;
  if (static_cast<int>(cfg.home_positions.size()) < n_uavs)
    throw SimError("a home position is required for every UAV");
  if (cfg.v_travel <= 0 || cfg.v_vertical <= 0) throw SimError("speeds must be positive");
  if (cfg.timestep <= 0 || cfg.timestep > 0.5) throw SimError("timestep must be in (0, 0.5]");

  std::vector<UavTimeline> out;

  auto world = [&](const PlanPoint& p) { return Vec3{p.x + plan.x_offset(), 0.0, p.z}; };

  // Each UAV cruises in its own altitude lane (brick UAV k lowest, the
  // adhesion UAV on top) so cruise-phase paths of different UAVs never meet;
  // lanes are crossed only in vertical task transits.
  const double lane_step = cfg.clearance + 0.2;

  // brick pick-place UAVs
  for (int k = 0; k < prob.n_robots; ++k) {
    const double lane = cfg.h_cruise + k * lane_step;
    TimelineBuilder b;
    b.tl.uav = k;
    Vec3 home{cfg.home_positions[k].first, cfg.home_positions[k].second, 0.0};
    Vec3 pickup{prob.pickup_points[k].first, prob.pickup_points[k].second, lane};
    b.pos = home;

    std::vector<int> tasks;
    for (const auto& [id, robot] : s.brick_assignments)
      if (robot == k) tasks.push_back(id);
    std::sort(tasks.begin(), tasks.end(),
              [&](int a, int c) { return s.brick_starts.at(a) < s.brick_starts.at(c); });

    bool airborne = false;
    for (int id : tasks) {
      const BrickTask& brick = plan.bricks.at(id);
      double start = s.brick_starts.at(id);
      Vec3 target = world(brick.center);
      Vec3 above{target[0], target[1], lane};

      if (b.t < start) {
        double gap = start - b.t;
        if (airborne) {
          // wait out long gaps back at the pickup point, not over the wall
          double t_back = dist3(b.pos, pickup) / cfg.v_travel;
          if (gap > 2.0 * t_back + 1e-9 && t_back > 1e-9) {
            b.seg(PhaseKind::Cruise, t_back, pickup);
            b.seg(PhaseKind::Hover, gap - t_back, pickup);
          } else {
            b.seg(PhaseKind::Hover, gap, b.pos);
          }
        } else {
          b.seg(PhaseKind::Idle, gap, b.pos);
        }
      }

      double t_takeoff = airborne ? 0.0 : lane / cfg.v_vertical;
      Vec3 lift{b.pos[0], b.pos[1], lane};
      double t_to_pickup = dist3(lift, pickup) / cfg.v_travel;
      double t_to_wall = dist3(pickup, above) / cfg.v_travel;
      double t_desc = (lane - target[2]) / cfg.v_vertical;
      double fixed = t_takeoff + t_to_pickup + t_to_wall + t_desc + cfg.stabilize_pause +
                     t_desc;  // descend + place + ascend
      double slack = prob.d_brick - fixed;
      if (slack < -1e-9)
        throw SimError("brick task " + std::to_string(id) +
                       " does not fit its duration envelope at the configured speeds");

      if (!airborne) {
        b.seg(PhaseKind::Takeoff, t_takeoff, lift);
        airborne = true;
      }
      b.seg(PhaseKind::Cruise, t_to_pickup, pickup);
      b.seg(PhaseKind::Cruise, t_to_wall, above);
      b.seg(PhaseKind::Hover, slack, above, /*construction=*/true);
      b.seg(PhaseKind::Descend, t_desc, target, /*construction=*/true);
      b.seg(PhaseKind::Place, cfg.stabilize_pause, target, /*construction=*/true);
      b.seg(PhaseKind::Ascend, t_desc, above);
    }
    if (airborne) {
      Vec3 above_home{home[0], home[1], lane};
      b.seg(PhaseKind::Cruise, dist3(b.pos, above_home) / cfg.v_travel, above_home);
      b.seg(PhaseKind::Descend, lane / cfg.v_vertical, home);
    } else if (b.tl.phases.empty()) {
      b.seg(PhaseKind::Idle, 0.0, home);
    }
    out.push_back(std::move(b.tl));
  }

  // adhesion UAV
  {
    TimelineBuilder b;
    b.tl.uav = prob.n_robots;
    Vec3 home{cfg.home_positions[prob.n_robots].first, cfg.home_positions[prob.n_robots].second,
              0.0};
    b.pos = home;

    std::vector<int> tasks;
    for (const auto& [id, start] : s.adhesion_starts) tasks.push_back(id);
    std::sort(tasks.begin(), tasks.end(),
              [&](int a, int c) { return s.adhesion_starts.at(a) < s.adhesion_starts.at(c); });

    const double adh_alt = cfg.h_cruise + prob.n_robots * lane_step;
    // staging points sit behind the wall so the diagonal approach/departure
    // legs cross the brick cruise lanes far from any hovering UAV
    const double y_stage = std::min(home[1], -(2.0 * cfg.clearance + 0.4));

    // diagonal legs honor both axis speed limits
    auto leg_time = [&](const Vec3& a, const Vec3& c) {
      double dz = std::abs(c[2] - a[2]);
      double dxy = std::hypot(c[0] - a[0], c[1] - a[1]);
      return std::max(dz / cfg.v_vertical, dxy / cfg.v_travel);
    };

    if (!tasks.empty()) {
      const AdhesionTask& first = plan.adhesions.at(tasks.front());
      Vec3 spray_from = world(PlanPoint{first.x_start, first.z});
      Vec3 lift{home[0], home[1], adh_alt};
      Vec3 stage_first{spray_from[0], y_stage, adh_alt};
      double t_takeoff = adh_alt / cfg.v_vertical;
      double t_cruise = dist3(lift, stage_first) / cfg.v_travel;
      double t_desc = leg_time(stage_first, spray_from);
      double start = s.adhesion_starts.at(tasks.front());
      double pre = start - t_takeoff - t_cruise - t_desc;
      if (pre < -1e-9)
        throw SimError("adhesion UAV cannot reach the first task in time");
      b.seg(PhaseKind::Idle, pre, home);
      b.seg(PhaseKind::Takeoff, t_takeoff, lift);
      b.seg(PhaseKind::Cruise, t_cruise, stage_first);
      b.seg(PhaseKind::Descend, t_desc, spray_from);

      for (size_t p = 0; p < tasks.size(); ++p) {
        const AdhesionTask& a = plan.adhesions.at(tasks[p]);
        double start_p = s.adhesion_starts.at(tasks[p]);
        Vec3 from = world(PlanPoint{a.x_start, a.z});
        Vec3 to = world(PlanPoint{a.x_end(), a.z});
        b.seg(PhaseKind::Spray, prob.d_spray, to, /*construction=*/true);
        if (p + 1 < tasks.size()) {
          const AdhesionTask& nxt = plan.adhesions.at(tasks[p + 1]);
          Vec3 nxt_from = world(PlanPoint{nxt.x_start, nxt.z});
          double available = s.adhesion_starts.at(tasks[p + 1]) - (start_p + prob.d_spray);
          double direct = dist3(to, nxt_from) / cfg.v_travel;
          if (direct > available + 1e-9)
            throw SimError("adhesion logistics leg " + std::to_string(tasks[p]) + " -> " +
                           std::to_string(tasks[p + 1]) +
                           " does not fit the schedule at the configured speed");
          // retreat off the wall between sprays so placements can proceed on
          // the freshly coated interface; fall back to a direct paced hop
          // when the window is too tight for the detour
          Vec3 staging{nxt_from[0], y_stage, adh_alt};
          double t_out = leg_time(to, staging);
          double t_in = leg_time(staging, nxt_from);
          if (t_out + t_in <= available + 1e-9) {
            b.seg(PhaseKind::Ascend, t_out, staging);
            b.seg(PhaseKind::Hover, available - t_out - t_in, staging);
            b.seg(PhaseKind::Descend, t_in, nxt_from);
          } else {
            b.seg(PhaseKind::Cruise, available, nxt_from);
          }
        }
        (void)from;
      }
      Vec3 above_home{home[0], home[1], adh_alt};
      b.seg(PhaseKind::Cruise, dist3(b.pos, above_home) / cfg.v_travel, above_home);
      b.seg(PhaseKind::Descend, adh_alt / cfg.v_vertical, home);
    } else {
      b.seg(PhaseKind::Idle, 0.0, home);
    }
    out.push_back(std::move(b.tl));
  }

  return out;
}

SimTrace run_mission(const std::vector<UavTimeline>& timelines, const SimConfig& cfg) {
  SimTrace trace;
  trace.timestep = cfg.timestep;
  double t_end = 0.0;
  for (const auto& tl : timelines) {
    t_end = std::max(t_end, tl.end_time());
    for (const auto& p : tl.phases)
      trace.events.push_back({p.t0, tl.uav, fmt_phase(p)});
  }
  std::stable_sort(trace.events.begin(), trace.events.end(),
                   [](const SimEvent& a, const SimEvent& b) { return a.time < b.time; });

  const size_t n = timelines.size();
  trace.positions.resize(n);
  size_t steps = static_cast<size_t>(std::floor(t_end / cfg.timestep)) + 1;

  auto in_construction = [&](const UavTimeline& tl, double t) {
    for (const auto& p : tl.phases)
      if (t >= p.t0 && t <= p.t1 && p.construction_zone) return true;
    return false;
  };

  const double inf = std::numeric_limits<double>::infinity();
  for (size_t step = 0; step < steps; ++step) {
    double t = step * cfg.timestep;
    trace.times.push_back(t);
    for (size_t u = 0; u < n; ++u) trace.positions[u].push_back(timelines[u].position(t));
    double dmin = inf, cmin = inf;
    for (size_t u = 0; u < n; ++u) {
      for (size_t v = u + 1; v < n; ++v) {
        double d = dist3(trace.positions[u].back(), trace.positions[v].back());
        dmin = std::min(dmin, d);
        if (in_construction(timelines[u], t) && in_construction(timelines[v], t))
          cmin = std::min(cmin, d);
      }
    }
    trace.min_pairwise_distance.push_back(dmin);
    trace.min_construction_distance.push_back(cmin);
  }
  return trace;
}

std::vector<UavTimeline> resolve_logistics_conflicts(std::vector<UavTimeline> timelines,
                                                     const SimConfig& cfg) {
  const double dt = cfg.timestep;
  const double delay_step = dt * 10.0;

  // The adhesion UAV's timeline is rigid (paced transits, no slack) and has
  // right-of-way; brick UAVs yield to it and to lower-id brick UAVs.
  const size_t n = timelines.size();
  for (size_t u = 0; u + 1 < n; ++u) {
    UavTimeline& tl = timelines[u];
    std::vector<size_t> opponents;
    if (n >= 1) opponents.push_back(n - 1);
    for (size_t v = 0; v < u; ++v) opponents.push_back(v);
    for (size_t pi = 0; pi < tl.phases.size(); ++pi) {
      if (tl.phases[pi].kind != PhaseKind::Cruise) continue;
      int insertions = 0;
      while (true) {
        const Phase& cruise = tl.phases[pi];
        bool conflict = false;
        for (size_t vi = 0; vi < opponents.size() && !conflict; ++vi) {
          size_t v = opponents[vi];
          for (double t = cruise.t0; t <= cruise.t1 + 1e-12; t += dt) {
            if (dist3(cruise.at(t), timelines[v].position(t)) < cfg.clearance) {
              conflict = true;
              break;
            }
          }
        }
        if (!conflict) break;
        if (++insertions > 1000)
          throw SimError("logistics conflict resolution livelocked for UAV " +
                         std::to_string(tl.uav));

        // consume hover slack that follows this cruise within the same task
        size_t slack_idx = pi + 1;
        while (slack_idx < tl.phases.size() && tl.phases[slack_idx].kind != PhaseKind::Hover &&
               tl.phases[slack_idx].kind == PhaseKind::Cruise)
          ++slack_idx;
        if (slack_idx >= tl.phases.size() || tl.phases[slack_idx].kind != PhaseKind::Hover ||
            tl.phases[slack_idx].t1 - tl.phases[slack_idx].t0 < delay_step)
          throw SimError("UAV " + std::to_string(tl.uav) +
                         " has insufficient hover slack to yield during logistics");

        // insert the delay at the segment start and shift up to the slack
        Phase wait;
        wait.kind = PhaseKind::Hover;
        wait.t0 = tl.phases[pi].t0;
        wait.t1 = wait.t0 + delay_step;
        wait.p0 = tl.phases[pi].p0;
        wait.p1 = tl.phases[pi].p0;
        for (size_t q = pi; q <= slack_idx; ++q) {
          tl.phases[q].t0 += delay_step;
          tl.phases[q].t1 += delay_step;
        }
        tl.phases[slack_idx].t1 -= delay_step;  // shrink the slack back into place
        if (tl.phases[slack_idx].t1 < tl.phases[slack_idx].t0 - 1e-9)
          throw SimError("hover slack bookkeeping underflow");
        tl.phases.insert(tl.phases.begin() + pi, wait);
        ++pi;  // the cruise moved one slot to the right
      }
    }
  }
  return timelines;
}

}  // namespace masonry
