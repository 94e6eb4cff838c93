#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "masonry/lp.hpp"
#include "masonry/model.hpp"
#include "masonry/wallplan.hpp"

namespace masonry {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

struct Solution {
  std::map<std::string, double> values;
  double objective = 0.0;
  double best_bound = -std::numeric_limits<double>::infinity();
  SolveStatus status = SolveStatus::Infeasible;
  long node_count = 0;
  double wall_time = 0.0;
};

struct ObjectiveBreakdown {
  double c_max = 0.0;
  double j_brick_log = 0.0;
  double j_cure = 0.0;
  double j_adh_log = 0.0;
  double total = 0.0;
};

struct Schedule {
  std::map<int, int> brick_assignments;      // brick id -> robot index
  std::map<int, double> brick_starts;        // brick id -> seconds
  std::map<int, double> adhesion_starts;     // adhesion id -> seconds
  std::map<int, double> adhesion_durations;  // adhesion id -> seconds
  std::vector<int> adhesion_order;
  double makespan = 0.0;
  ObjectiveBreakdown objective_breakdown;
};

struct SolveOptions {
  double time_limit = 60.0;
  double gap_tolerance = 1e-6;
  long node_limit = 50'000'000;
  unsigned deterministic_seed = 0;
};

/// List-scheduling incumbent: topological task order, earliest feasible slot
/// per robot, adhesions serialized in interface-then-x order. The result is
/// feasible for the full constraint set (curing handled by iterated
/// right-shifting of adhesion starts).
Schedule greedy_schedule(const WallPlan& plan, const ConflictSets& conflicts,
                         const ScheduleProblem& prob);

/// Encodes a feasible schedule as a full variable assignment of the model.
Solution encode_schedule(const Schedule& s, const MilpModel& model, const VarIndex& ix,
                         const WallPlan& plan, const ScheduleProblem& prob);

/// Best-first branch-and-bound over the LP relaxation. Branches on the most
/// fractional binary/integer column, ties by lowest column index; fully
/// deterministic for fixed inputs and options.
Solution solve_bb(const MilpModel& model, const Solution* incumbent, const SolveOptions& opts);

Schedule extract_schedule(const Solution& sol, const VarIndex& ix, const WallPlan& plan,
                          const ScheduleProblem& prob);

}  // namespace masonry
