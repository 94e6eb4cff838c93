#pragma once

#include <iosfwd>
#include <string>

#include "masonry/model.hpp"
#include "masonry/simulator.hpp"
#include "masonry/solver.hpp"
#include "masonry/wallplan.hpp"

namespace masonry {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a mission needs, read from one JSON file. Defaults match the
/// shipped examples/paper_wall configuration.
struct MissionConfig {
  WallSpec wall;
  std::string stl_path;  // if set, overrides the wall dimensions
  BrickSpec brick{0.5, 0.1, 0.3};
  ScheduleProblem prob;
  std::pair<double, double> adhesion_home{0.0, -1.5};
  std::string solver_backend = "builtin";  // builtin | export
  SolveOptions solve;
  SimConfig sim;

  /// Home positions: brick UAVs start at their pickup points, the adhesion
  /// UAV at adhesion_home.
  SimConfig sim_with_homes() const;
};

MissionConfig load_config(std::istream& in);
MissionConfig load_config_file(const std::string& path);

WallPlan plan_from_config(const MissionConfig& cfg);

// Structured-file round trips. All writers emit deterministic, key-ordered
// JSON so identical inputs give byte-identical files.
void write_plan(const WallPlan& plan, const ConflictSets& conflicts, std::ostream& out);
std::pair<WallPlan, ConflictSets> read_plan(std::istream& in);

void write_schedule(const Schedule& s, const Solution& sol, std::ostream& out);
std::pair<Schedule, Solution> read_schedule(std::istream& in);

void write_report(const ValidationReport& report, std::ostream& out);

// Simulator trace exports.
void write_positions_csv(const SimTrace& trace, std::ostream& out);
void write_min_distance_csv(const SimTrace& trace, std::ostream& out);
void write_events_log(const SimTrace& trace, std::ostream& out);

/// Human-readable mission summary (instance sizes, objective breakdown,
/// curing slacks, observed clearance).
std::string make_summary(const MissionConfig& cfg, const WallPlan& plan, const Schedule& s,
                         const Solution& sol, const std::vector<CuringRecord>& curing,
                         const SimTrace* trace);

}  // namespace masonry
