#include "masonry/validator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "masonry/lp.hpp"

namespace masonry {

namespace {
constexpr double kTol = 1e-6;

std::vector<int> start_order(const Schedule& s) {
  std::vector<int> order;
  for (const auto& [id, t] : s.adhesion_starts) order.push_back(id);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double ta = s.adhesion_starts.at(a), tb = s.adhesion_starts.at(b);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  return order;
}
}  // namespace

const char* to_string(ViolationFamily f) {
  switch (f) {
    case ViolationFamily::StartBound: return "StartBound";
    case ViolationFamily::RobotSeriality: return "RobotSeriality";
    case ViolationFamily::AdhesionSeriality: return "AdhesionSeriality";
    case ViolationFamily::Precedence: return "Precedence";
    case ViolationFamily::Conflict: return "Conflict";
    case ViolationFamily::Curing: return "Curing";
    case ViolationFamily::SuccessorStructure: return "SuccessorStructure";
  }
  return "?";
}

ObjectiveBreakdown evaluate_objective(const Schedule& s, const WallPlan& plan,
                                      const ScheduleProblem& prob) {
  ObjectiveBreakdown b;
  for (const auto& [id, t] : s.brick_starts) b.c_max = std::max(b.c_max, t + prob.d_brick);
  for (const auto& [id, k] : s.brick_assignments)
    b.j_brick_log += brick_logistics_distance(plan, prob, id, k);
  for (const auto& a : plan.adhesions) {
    b.j_cure += s.brick_starts.at(a.top_brick) - s.adhesion_starts.at(a.id) -
                s.adhesion_durations.at(a.id);
  }
  auto order = start_order(s);
  for (size_t p = 0; p + 1 < order.size(); ++p)
    b.j_adh_log += adhesion_distance(plan, order[p], order[p + 1]);
  b.total = prob.w_span * b.c_max + prob.w_brick_log * b.j_brick_log +
            prob.w_cure * b.j_cure + prob.w_adh_log * b.j_adh_log;
  return b;
}

ValidationReport check_schedule(const Schedule& s, const WallPlan& plan,
                                const ConflictSets& conflicts, const ScheduleProblem& prob) {
  ValidationReport report;
  auto add = [&](ViolationFamily fam, std::vector<int> ids, double measured, double bound,
                 std::string detail) {
    report.violations.push_back({fam, std::move(ids), measured, bound, std::move(detail)});
  };

  for (const auto& [id, t] : s.brick_starts)
    if (t < -kTol) add(ViolationFamily::StartBound, {id}, t, 0.0, "brick start before t=0");
  for (const auto& [id, t] : s.adhesion_starts)
    if (t < -kTol) add(ViolationFamily::StartBound, {id}, t, 0.0, "adhesion start before t=0");

  // per-robot brick intervals pairwise disjoint
  std::map<int, std::vector<int>> by_robot;
  for (const auto& [id, k] : s.brick_assignments) by_robot[k].push_back(id);
  for (auto& [k, ids] : by_robot) {
    std::sort(ids.begin(), ids.end(),
              [&](int a, int b) { return s.brick_starts.at(a) < s.brick_starts.at(b); });
    for (size_t p = 0; p + 1 < ids.size(); ++p) {
      double gap = s.brick_starts.at(ids[p + 1]) - (s.brick_starts.at(ids[p]) + prob.d_brick);
      if (gap < -kTol)
        add(ViolationFamily::RobotSeriality, {ids[p], ids[p + 1]}, gap, 0.0,
            "robot " + std::to_string(k) + " overlapping bricks");
    }
  }

  auto order = start_order(s);
  for (size_t p = 0; p + 1 < order.size(); ++p) {
    int a = order[p], b = order[p + 1];
    double gap = s.adhesion_starts.at(b) -
                 (s.adhesion_starts.at(a) + s.adhesion_durations.at(a));
    if (gap < -kTol)
      add(ViolationFamily::AdhesionSeriality, {a, b}, gap, 0.0, "overlapping adhesion tasks");
  }

  for (const auto& [a, top] : plan.precedence_ab) {
    double gap = s.brick_starts.at(top) -
                 (s.adhesion_starts.at(a) + s.adhesion_durations.at(a));
    if (gap < -kTol)
      add(ViolationFamily::Precedence, {a, top}, gap, 0.0,
          "brick " + std::to_string(top) + " starts before adhesion " + std::to_string(a) +
              " ends");
  }
  for (const auto& [bottom, a] : plan.precedence_ba) {
    double gap = s.adhesion_starts.at(a) - (s.brick_starts.at(bottom) + prob.d_brick);
    if (gap < -kTol)
      add(ViolationFamily::Precedence, {bottom, a}, gap, 0.0,
          "adhesion " + std::to_string(a) + " starts before brick " + std::to_string(bottom) +
              " ends");
  }

  auto interval_overlap = [](double s1, double e1, double s2, double e2) {
    return std::min(e1, e2) - std::max(s1, s2);
  };
  for (const auto& [i, j] : conflicts.brick_brick) {
    double ov = interval_overlap(s.brick_starts.at(i), s.brick_starts.at(i) + prob.d_brick,
                                 s.brick_starts.at(j), s.brick_starts.at(j) + prob.d_brick);
    if (ov > kTol)
      add(ViolationFamily::Conflict, {i, j}, ov, 0.0, "conflicting bricks overlap in time");
  }
  for (const auto& [b, a] : conflicts.brick_adhesion) {
    double ov = interval_overlap(s.brick_starts.at(b), s.brick_starts.at(b) + prob.d_brick,
                                 s.adhesion_starts.at(a),
                                 s.adhesion_starts.at(a) + s.adhesion_durations.at(a));
    if (ov > kTol)
      add(ViolationFamily::Conflict, {b, a}, ov, 0.0,
          "conflicting brick/adhesion pair overlaps in time");
  }

  for (const auto& a : plan.adhesions) {
    double anchor = s.adhesion_starts.at(a.id) +
                    (prob.cure_from_end ? s.adhesion_durations.at(a.id) : 0.0);
    double slack = anchor + prob.d_cure - (s.brick_starts.at(a.top_brick) + prob.d_brick);
    if (slack < -kTol)
      add(ViolationFamily::Curing, {a.id, a.top_brick}, slack, 0.0,
          "brick placed after the curing deadline");
  }

  // adhesion durations must match the spray + travel-to-successor model under
  // the schedule's own temporal order
  for (size_t p = 0; p < order.size(); ++p) {
    double expected = prob.d_spray;
    if (p + 1 < order.size())
      expected += adhesion_distance(plan, order[p], order[p + 1]) / prob.v_log;
    double got = s.adhesion_durations.at(order[p]);
    if (std::abs(got - expected) > kTol)
      add(ViolationFamily::SuccessorStructure, {order[p]}, got, expected,
          "adhesion duration inconsistent with successor travel");
  }

  report.objective = evaluate_objective(s, plan, prob);
  report.passed = report.violations.empty();
  return report;
}

std::vector<CuringRecord> curing_report(const Schedule& s, const WallPlan& plan,
                                        const ScheduleProblem& prob) {
  std::vector<CuringRecord> records;
  for (const auto& a : plan.adhesions) {
    CuringRecord rec;
    rec.brick = a.top_brick;
    rec.adhesion = a.id;
    rec.mortar_end = s.adhesion_starts.at(a.id) + s.adhesion_durations.at(a.id);
    rec.window_open = rec.mortar_end;
    rec.window_close = (prob.cure_from_end ? rec.mortar_end : s.adhesion_starts.at(a.id)) +
                       prob.d_cure;
    rec.placed_end = s.brick_starts.at(a.top_brick) + prob.d_brick;
    rec.slack = rec.window_close - rec.placed_end;
    records.push_back(rec);
  }
  std::sort(records.begin(), records.end(), [](const CuringRecord& x, const CuringRecord& y) {
    if (x.brick != y.brick) return x.brick < y.brick;
    return x.adhesion < y.adhesion;
  });
  return records;
}

namespace {

struct OracleSearch {
  const WallPlan& plan;
  const ConflictSets& conflicts;
  const ScheduleProblem& prob;
  const MilpModel& model;
  const VarIndex& ix;

  int nB, nA, N;
  std::vector<int> assign;             // brick -> robot
  std::vector<double> lb, ub;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> best_values;

  void fix(int col, double v) { lb[col] = v; ub[col] = v; }

  void run() {
    assign.assign(nB, 0);
    enumerate_assignments(0);
  }

  void enumerate_assignments(int brick) {
    if (brick == nB) {
      enumerate_orders();
      return;
    }
    for (int k = 0; k < N; ++k) {
      assign[brick] = k;
      enumerate_assignments(brick + 1);
    }
  }

  void enumerate_orders() {
    // per-robot permutations of the assigned bricks
    std::vector<std::vector<int>> groups(N);
    for (int i = 0; i < nB; ++i) groups[assign[i]].push_back(i);
    std::vector<std::vector<int>> perms;  // flattened choice per robot
    std::function<void(int)> rec = [&](int k) {
      if (k == N) {
        enumerate_adhesions(groups);
        return;
      }
      std::vector<int>& g = groups[k];
      std::sort(g.begin(), g.end());
      do {
        rec(k + 1);
      } while (std::next_permutation(g.begin(), g.end()));
      std::sort(g.begin(), g.end());
    };
    rec(0);
  }

  void enumerate_adhesions(const std::vector<std::vector<int>>& robot_orders) {
    std::vector<int> perm(nA);
    for (int i = 0; i < nA; ++i) perm[i] = i;
    if (nA == 0) {
      enumerate_conflicts(robot_orders, perm);
      return;
    }
    std::sort(perm.begin(), perm.end());
    do {
      enumerate_conflicts(robot_orders, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  void enumerate_conflicts(const std::vector<std::vector<int>>& robot_orders,
                           const std::vector<int>& adh_perm) {
    // position of each brick in its robot's order, and robot lookup
    std::vector<int> pos(nB, 0);
    for (const auto& g : robot_orders)
      for (size_t p = 0; p < g.size(); ++p) pos[g[p]] = static_cast<int>(p);
    std::vector<int> rank(nA, 0);
    for (int p = 0; p < nA; ++p) rank[adh_perm[p]] = p;

    // conflict orientations: same-robot brick pairs are implied by the order,
    // the rest are enumerated
    std::vector<std::pair<int, int>> free_bb, free_ba;
    std::vector<std::pair<std::pair<int, int>, double>> fixed_gamma;
    for (const auto& [i, j] : ix.conflict_bb) {
      if (assign[i] == assign[j])
        fixed_gamma.push_back({{i, j}, pos[i] < pos[j] ? 1.0 : 0.0});
      else
        free_bb.emplace_back(i, j);
    }
    for (const auto& p : ix.conflict_ba) free_ba.push_back(p);

    size_t n_free = free_bb.size() + free_ba.size();
    for (size_t mask = 0; mask < (size_t{1} << n_free); ++mask) {
      // build the leaf bounds
      lb.assign(model.columns.size(), 0.0);
      ub.assign(model.columns.size(), 0.0);
      for (size_t c = 0; c < model.columns.size(); ++c) {
        lb[c] = model.columns[c].lb;
        ub[c] = model.columns[c].ub;
      }
      for (int i = 0; i < nB; ++i)
        for (int k = 0; k < N; ++k) fix(ix.x(i, k), assign[i] == k ? 1.0 : 0.0);
      for (int k = 0; k < N; ++k)
        for (int i = 0; i < nB; ++i)
          for (int j = 0; j < nB; ++j) {
            if (i == j) continue;
            double v = (assign[i] == k && assign[j] == k && pos[i] < pos[j]) ? 1.0 : 0.0;
            fix(ix.alpha(k, i, j), v);
          }
      for (int i = 0; i < nA; ++i)
        for (int j = i + 1; j < nA; ++j) fix(ix.beta(i, j), rank[i] < rank[j] ? 1.0 : 0.0);
      for (int i = 0; i < nA; ++i) fix(ix.r(i), rank[i]);
      for (int i = 0; i < nA; ++i)
        for (int j = 0; j < nA; ++j) {
          if (i == j) continue;
          fix(ix.o(i, j), rank[j] == rank[i] + 1 ? 1.0 : 0.0);
        }
      for (int i = 0; i < nA; ++i) fix(ix.s(i), rank[i] == nA - 1 ? 1.0 : 0.0);
      for (const auto& [pr, v] : fixed_gamma) fix(ix.gamma_bb(pr.first, pr.second), v);
      size_t bit = 0;
      for (const auto& [i, j] : free_bb)
        fix(ix.gamma_bb(i, j), (mask >> bit++) & 1 ? 1.0 : 0.0);
      for (const auto& [b, a] : free_ba)
        fix(ix.gamma_ba(b, a), (mask >> bit++) & 1 ? 1.0 : 0.0);

      LpResult res = solve_lp(model, &lb, &ub);
      if (res.status != LpStatus::Optimal) continue;
      if (res.objective < best_obj - 1e-12) {
        best_obj = res.objective;
        best_values = res.values;
      }
    }
  }
};

}  // namespace

namespace {

std::pair<Solution, ModelBuild> oracle_solve(const WallPlan& plan, const ConflictSets& conflicts,
                                             const ScheduleProblem& prob,
                                             const OracleLimits& limits) {
  if (static_cast<int>(plan.bricks.size()) > limits.max_bricks ||
      static_cast<int>(plan.adhesions.size()) > limits.max_adhesions ||
      prob.n_robots > limits.max_robots)
    throw SolverError("instance exceeds the oracle's enumeration limits");

  ModelBuild built = build_model(plan, conflicts, prob);
  Solution sol;
  if (plan.bricks.empty()) {
    sol.status = SolveStatus::Optimal;
    sol.objective = built.model.objective_constant;
    sol.best_bound = sol.objective;
    return {std::move(sol), std::move(built)};
  }

  OracleSearch search{plan, conflicts, prob, built.model, built.index,
                      built.index.n_bricks, built.index.n_adhesions, built.index.n_robots};
  search.run();
  if (!std::isfinite(search.best_obj)) throw SolverError("oracle found no feasible leaf");

  for (size_t c = 0; c < built.model.columns.size(); ++c)
    sol.values[built.model.columns[c].name] = search.best_values[c];
  sol.objective = search.best_obj;
  sol.status = SolveStatus::Optimal;
  sol.best_bound = search.best_obj;
  return {std::move(sol), std::move(built)};
}

}  // namespace

Schedule brute_force_oracle(const WallPlan& plan, const ConflictSets& conflicts,
                            const ScheduleProblem& prob, const OracleLimits& limits) {
  auto [sol, built] = oracle_solve(plan, conflicts, prob, limits);
  if (plan.bricks.empty()) return Schedule{};
  return extract_schedule(sol, built.index, plan, prob);
}

double brute_force_oracle_objective(const WallPlan& plan, const ConflictSets& conflicts,
                                    const ScheduleProblem& prob, const OracleLimits& limits) {
  return oracle_solve(plan, conflicts, prob, limits).first.objective;
}

}  // namespace masonry
