#pragma once

#include <string>
#include <vector>

#include "masonry/solver.hpp"

namespace masonry {

enum class ViolationFamily {
  StartBound,
  RobotSeriality,
  AdhesionSeriality,
  Precedence,
  Conflict,
  Curing,
  SuccessorStructure,
};

const char* to_string(ViolationFamily f);

struct Violation {
  ViolationFamily family;
  std::vector<int> task_ids;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool passed = false;
  ObjectiveBreakdown objective;
};

struct CuringRecord {
  int brick = -1;
  int adhesion = -1;
  double mortar_end = 0.0;
  double window_open = 0.0;
  double window_close = 0.0;
  double placed_end = 0.0;
  double slack = 0.0;
};

/// Arithmetic re-check of every constraint family; no MILP machinery involved.
ValidationReport check_schedule(const Schedule& s, const WallPlan& plan,
                                const ConflictSets& conflicts, const ScheduleProblem& prob);

ObjectiveBreakdown evaluate_objective(const Schedule& s, const WallPlan& plan,
                                      const ScheduleProblem& prob);

std::vector<CuringRecord> curing_report(const Schedule& s, const WallPlan& plan,
                                        const ScheduleProblem& prob);

struct OracleLimits {
  int max_bricks = 4;
  int max_adhesions = 3;
  int max_robots = 2;
};

/// Exhaustive enumeration over assignments, per-robot orders, adhesion
/// permutations, and free conflict orientations; continuous part solved by
/// the LP engine at each leaf. Test oracle only; exponential.
Schedule brute_force_oracle(const WallPlan& plan, const ConflictSets& conflicts,
                            const ScheduleProblem& prob, const OracleLimits& limits = {});

/// Objective of the best oracle leaf (same enumeration as brute_force_oracle).
double brute_force_oracle_objective(const WallPlan& plan, const ConflictSets& conflicts,
                                    const ScheduleProblem& prob, const OracleLimits& limits = {});

}  // namespace masonry
