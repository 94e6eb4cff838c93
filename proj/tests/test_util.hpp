#pragma once

#include <random>
#include <string>
#include <vector>

#include "masonry/model.hpp"
#include "masonry/solver.hpp"
#include "masonry/wallplan.hpp"

namespace masonry::testutil {

struct Instance {
  WallPlan plan;
  ConflictSets conflicts;
  ScheduleProblem prob;
};

inline Instance make_instance(double wall_l, double wall_h, int n_robots,
                              const ScheduleProblem& base = {}) {
  Instance inst;
  BrickSpec brick{0.5, 0.1, 0.3};
  inst.plan = make_wall_plan(WallSpec{wall_l, wall_h, 0.3}, brick);
  inst.prob = base;
  inst.prob.n_robots = n_robots;
  inst.prob.pickup_points.clear();
  for (int k = 0; k < n_robots; ++k)
    inst.prob.pickup_points.push_back({k % 2 == 0 ? 1.5 : -1.5, -1.0});
  inst.conflicts = compute_conflicts(inst.plan, inst.prob.clearance);
  return inst;
}

inline void finalize_big_m(Instance& inst, double incumbent_makespan) {
  auto [mt, mr] = choose_big_m(inst.plan, inst.prob, incumbent_makespan);
  inst.prob.big_m_time = mt;
  inst.prob.big_m_rank = mr;
}

/// Randomized tiny instance (<= 4 bricks, <= 3 adhesions, <= 2 robots)
/// drawn from the geometry templates that stay within the oracle limits.
inline Instance random_tiny_instance(std::mt19937& rng) {
  struct Tpl { double l, h; };
  static const Tpl templates[] = {
      {0.5, 0.1},  // 1 brick
      {1.0, 0.1},  // 2 bricks, one row
      {2.0, 0.1},  // 4 bricks, one row
      {0.5, 0.2},  // 3 bricks, 2 rows, 2 adhesions
  };
  std::uniform_int_distribution<int> tpl(0, 3);
  std::uniform_int_distribution<int> robots(1, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  const Tpl& t = templates[tpl(rng)];
  Instance inst = make_instance(t.l, t.h, robots(rng));
  inst.prob.d_brick = 5.0 + 25.0 * u(rng);
  inst.prob.d_spray = 2.0 + 6.0 * u(rng);
  inst.prob.d_cure = inst.prob.d_brick + 10.0 + 60.0 * u(rng);
  inst.prob.v_log = 0.3 + 1.2 * u(rng);
  inst.prob.w_span = 0.5 + 3.0 * u(rng);
  inst.prob.w_brick_log = 0.5 + 5.0 * u(rng);
  inst.prob.w_cure = 0.05 + 0.4 * u(rng);
  inst.prob.w_adh_log = 0.5 + 6.0 * u(rng);
  return inst;
}

/// Max constraint violation of a named-value solution over all model rows.
inline double max_row_violation(const MilpModel& model, const Solution& sol) {
  std::vector<double> v(model.columns.size(), 0.0);
  for (size_t c = 0; c < model.columns.size(); ++c) {
    auto it = sol.values.find(model.columns[c].name);
    if (it != sol.values.end()) v[c] = it->second;
  }
  double worst = 0.0;
  for (const auto& row : model.rows) {
    double lhs = 0.0;
    for (const auto& [c, coef] : row.coeffs) lhs += coef * v[c];
    double viol = 0.0;
    switch (row.relation) {
      case Relation::LessEqual: viol = lhs - row.rhs; break;
      case Relation::GreaterEqual: viol = row.rhs - lhs; break;
      case Relation::Equal: viol = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, viol);
  }
  for (size_t c = 0; c < model.columns.size(); ++c) {
    worst = std::max(worst, model.columns[c].lb - v[c]);
    worst = std::max(worst, v[c] - model.columns[c].ub);
  }
  return worst;
}

}  // namespace masonry::testutil
