#include "masonry/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <queue>

#include "masonry/validator.hpp"

namespace masonry {

namespace {

constexpr double kIntTol = 1e-6;

/// Bricks in construction order: by row, then x, then id.
std::vector<int> brick_sequence(const WallPlan& plan) {
  std::vector<int> seq(plan.bricks.size());
  for (size_t i = 0; i < seq.size(); ++i) seq[i] = static_cast<int>(i);
  std::sort(seq.begin(), seq.end(), [&](int a, int b) {
    const auto& ta = plan.bricks[a];
    const auto& tb = plan.bricks[b];
    if (ta.row != tb.row) return ta.row < tb.row;
    if (ta.center.x != tb.center.x) return ta.center.x < tb.center.x;
    return a < b;
  });
  return seq;
}

/// Adhesion ids grouped just-in-time under their top brick (bricks in
/// construction order, each brick's interfaces by x). Spraying immediately
/// before the placement keeps the curing gap near d_spray + d_brick.
std::vector<int> adhesion_sequence(const WallPlan& plan, const std::vector<int>& bricks) {
  std::vector<int> seq;
  for (int b : bricks) {
    std::vector<int> below;
    for (const auto& a : plan.adhesions)
      if (a.top_brick == b) below.push_back(a.id);
    std::sort(below.begin(), below.end(), [&](int i, int j) {
      if (plan.adhesions[i].x_start != plan.adhesions[j].x_start)
        return plan.adhesions[i].x_start < plan.adhesions[j].x_start;
      return i < j;
    });
    seq.insert(seq.end(), below.begin(), below.end());
  }
  return seq;
}

std::map<int, double> sequence_durations(const WallPlan& plan, const ScheduleProblem& prob,
                                         const std::vector<int>& seq) {
  std::map<int, double> dur;
  for (size_t p = 0; p < seq.size(); ++p) {
    double d = prob.d_spray;
    if (p + 1 < seq.size()) d += adhesion_distance(plan, seq[p], seq[p + 1]) / prob.v_log;
    dur[seq[p]] = d;
  }
  return dur;
}

bool overlaps(double s1, double e1, double s2, double e2) {
  return std::min(e1, e2) - std::max(s1, s2) > 1e-9;
}

}  // namespace

Schedule greedy_schedule(const WallPlan& plan, const ConflictSets& conflicts,
                         const ScheduleProblem& prob) {
  if (prob.d_cure < prob.d_brick)
    throw SolverError("curing window shorter than a single brick placement");

  Schedule s;
  if (plan.bricks.empty()) return s;

  const auto bricks_in_order = brick_sequence(plan);
  const auto seq = adhesion_sequence(plan, bricks_in_order);
  const auto dur = sequence_durations(plan, prob, seq);

  // just-in-time order: each brick is preceded by the interfaces it rests on
  struct Item {
    bool is_adhesion;
    int id;
  };
  std::vector<Item> order;
  {
    std::map<int, std::vector<int>> below;
    for (int a : seq) below[plan.adhesions[a].top_brick].push_back(a);
    for (int b : bricks_in_order) {
      for (int a : below[b]) order.push_back({true, a});
      order.push_back({false, b});
    }
  }

  std::map<int, double> min_adh_start;
  for (const auto& a : plan.adhesions) min_adh_start[a.id] = 0.0;

  std::map<int, std::vector<int>> adh_below;  // brick -> adhesions underneath
  for (const auto& a : plan.adhesions) adh_below[a.top_brick].push_back(a.id);

  for (int pass = 0; pass < 500; ++pass) {
    std::map<int, int> assign;
    std::map<int, double> bstart, astart;
    std::vector<double> robot_free(prob.n_robots, 0.0);
    double adh_free = 0.0;

    auto conflict_push_brick = [&](int brick, double t) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (const auto& [i, j] : conflicts.brick_brick) {
          int other = (i == brick) ? j : (j == brick ? i : -1);
          if (other < 0 || !bstart.count(other)) continue;
          if (overlaps(t, t + prob.d_brick, bstart[other], bstart[other] + prob.d_brick)) {
            t = bstart[other] + prob.d_brick;
            moved = true;
          }
        }
        for (const auto& [b, a] : conflicts.brick_adhesion) {
          if (b != brick || !astart.count(a)) continue;
          if (overlaps(t, t + prob.d_brick, astart[a], astart[a] + dur.at(a))) {
            t = astart[a] + dur.at(a);
            moved = true;
          }
        }
      }
      return t;
    };
    auto conflict_push_adhesion = [&](int adh, double t) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (const auto& [b, a] : conflicts.brick_adhesion) {
          if (a != adh || !bstart.count(b)) continue;
          if (overlaps(t, t + dur.at(adh), bstart[b], bstart[b] + prob.d_brick)) {
            t = bstart[b] + prob.d_brick;
            moved = true;
          }
        }
      }
      return t;
    };

    for (const auto& item : order) {
      if (item.is_adhesion) {
        const auto& a = plan.adhesions[item.id];
        double t = std::max({adh_free, min_adh_start[item.id],
                             bstart.at(a.bottom_brick) + prob.d_brick});
        t = conflict_push_adhesion(item.id, t);
        astart[item.id] = t;
        adh_free = t + dur.at(item.id);
      } else {
        double base = 0.0;
        for (int a : adh_below[item.id]) base = std::max(base, astart.at(a) + dur.at(a));
        int best_k = 0;
        double best_t = std::numeric_limits<double>::infinity();
        for (int k = 0; k < prob.n_robots; ++k) {
          double t = conflict_push_brick(item.id, std::max(robot_free[k], base));
          if (t < best_t - 1e-12) { best_t = t; best_k = k; }
        }
        assign[item.id] = best_k;
        bstart[item.id] = best_t;
        robot_free[best_k] = best_t + prob.d_brick;
      }
    }

    bool cure_ok = true;
    for (const auto& a : plan.adhesions) {
      double window_anchor = astart[a.id] + (prob.cure_from_end ? dur.at(a.id) : 0.0);
      double placed_end = bstart[a.top_brick] + prob.d_brick;
      if (placed_end > window_anchor + prob.d_cure + 1e-9) {
        cure_ok = false;
        double need = placed_end - prob.d_cure - (prob.cure_from_end ? dur.at(a.id) : 0.0);
        min_adh_start[a.id] = std::max(min_adh_start[a.id], need);
      }
    }
    if (!cure_ok) continue;

    s.brick_assignments = assign;
    s.brick_starts = bstart;
    s.adhesion_starts = astart;
    for (const auto& [id, d] : dur) s.adhesion_durations[id] = d;
    s.adhesion_order = seq;
    for (const auto& [id, t] : bstart) s.makespan = std::max(s.makespan, t + prob.d_brick);
    s.objective_breakdown = evaluate_objective(s, plan, prob);
    return s;
  }
  throw SolverError("greedy scheduler failed to satisfy the curing deadline");
}

Solution encode_schedule(const Schedule& s, const MilpModel& model, const VarIndex& ix,
                         const WallPlan& plan, const ScheduleProblem& prob) {
  std::vector<double> v(model.columns.size(), 0.0);
  if (!plan.bricks.empty()) {
    for (const auto& [i, t] : s.brick_starts) v[ix.sb(i)] = t;
    for (const auto& [j, t] : s.adhesion_starts) v[ix.sa(j)] = t;
    for (const auto& [j, d] : s.adhesion_durations) {
      v[ix.da(j)] = d;
      v[ix.ta(j)] = d - prob.d_spray;
    }
    v[ix.cmax()] = s.makespan;
    for (const auto& [i, k] : s.brick_assignments) v[ix.x(i, k)] = 1.0;
    for (int i = 0; i < ix.n_bricks; ++i) {
      for (int j = 0; j < ix.n_bricks; ++j) {
        if (i == j) continue;
        int ki = s.brick_assignments.at(i), kj = s.brick_assignments.at(j);
        if (ki != kj) continue;
        if (s.brick_starts.at(i) < s.brick_starts.at(j)) v[ix.alpha(ki, i, j)] = 1.0;
      }
    }
    for (int i = 0; i < ix.n_adhesions; ++i)
      for (int j = i + 1; j < ix.n_adhesions; ++j)
        if (s.adhesion_starts.at(i) < s.adhesion_starts.at(j)) v[ix.beta(i, j)] = 1.0;
    for (const auto& [i, j] : ix.conflict_bb)
      if (s.brick_starts.at(i) + prob.d_brick <= s.brick_starts.at(j) + 1e-9)
        v[ix.gamma_bb(i, j)] = 1.0;
    for (const auto& [b, a] : ix.conflict_ba)
      if (s.brick_starts.at(b) + prob.d_brick <= s.adhesion_starts.at(a) + 1e-9)
        v[ix.gamma_ba(b, a)] = 1.0;
    const auto& ord = s.adhesion_order;
    for (size_t p = 0; p < ord.size(); ++p) {
      v[ix.r(ord[p])] = static_cast<double>(p);
      if (p + 1 < ord.size()) v[ix.o(ord[p], ord[p + 1])] = 1.0;
      else v[ix.s(ord[p])] = 1.0;
    }
  }

  Solution out;
  for (size_t c = 0; c < v.size(); ++c) out.values[model.columns[c].name] = v[c];
  out.objective = model.eval_objective(v);
  out.status = SolveStatus::Feasible;
  out.best_bound = -std::numeric_limits<double>::infinity();
  return out;
}

namespace {

struct BbNode {
  double bound;        // parent LP bound (priority)
  long id;
  int parent;          // index into arena, -1 for root
  int branch_col = -1;
  double lb = 0.0, ub = 0.0;
};

struct NodeOrder {
  bool operator()(const std::pair<double, long>& a, const std::pair<double, long>& b) const {
    if (a.first != b.first) return a.first > b.first;  // min-heap on bound
    return a.second > b.second;                        // FIFO on ties
  }
};

}  // namespace

Solution solve_bb(const MilpModel& model, const Solution* incumbent, const SolveOptions& opts) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  Solution result;
  result.node_count = 0;

  const int n = static_cast<int>(model.columns.size());
  std::vector<double> base_lb(n), base_ub(n);
  std::vector<int> int_cols;
  for (int c = 0; c < n; ++c) {
    base_lb[c] = model.columns[c].lb;
    base_ub[c] = model.columns[c].ub;
    if (model.columns[c].kind != VarKind::Continuous) int_cols.push_back(c);
  }

  double inc_obj = std::numeric_limits<double>::infinity();
  std::vector<double> inc_values;
  if (incumbent) {
    inc_obj = incumbent->objective;
    inc_values.resize(n);
    for (int c = 0; c < n; ++c) {
      auto it = incumbent->values.find(model.columns[c].name);
      inc_values[c] = it == incumbent->values.end() ? 0.0 : it->second;
    }
  }

  std::deque<BbNode> arena;
  std::priority_queue<std::pair<double, long>, std::vector<std::pair<double, long>>, NodeOrder>
      open;
  arena.push_back({-std::numeric_limits<double>::infinity(), 0, -1});
  open.emplace(arena[0].bound, 0);

  std::vector<double> lb, ub;
  bool limit_hit = false;
  bool node_limit_hit = false;

  auto finish = [&](double best_bound) {
    result.wall_time = elapsed();
    result.best_bound = best_bound;
    if (!std::isfinite(inc_obj)) {
      result.status = limit_hit || node_limit_hit ? SolveStatus::TimeLimit : SolveStatus::Infeasible;
      return result;
    }
    result.objective = inc_obj;
    for (int c = 0; c < n; ++c) result.values[model.columns[c].name] = inc_values[c];
    double gap = inc_obj - best_bound;
    if (!limit_hit && !node_limit_hit) {
      result.status = SolveStatus::Optimal;
      result.best_bound = std::min(result.best_bound, inc_obj);
    } else if (gap <= opts.gap_tolerance * std::max(1.0, std::abs(inc_obj)) + 1e-12) {
      result.status = SolveStatus::Optimal;
    } else {
      result.status = limit_hit ? SolveStatus::TimeLimit : SolveStatus::Feasible;
    }
    return result;
  };

  while (!open.empty()) {
    if (elapsed() > opts.time_limit) { limit_hit = true; break; }
    if (result.node_count >= opts.node_limit) { node_limit_hit = true; break; }

    auto [prio, node_id] = open.top();
    open.pop();
    // early optimality: every open node bound is >= this one
    if (std::isfinite(inc_obj) &&
        inc_obj - prio <= opts.gap_tolerance * std::max(1.0, std::abs(inc_obj)) + 1e-12 &&
        result.node_count > 0) {
      return finish(prio);
    }

    lb = base_lb;
    ub = base_ub;
    for (int cur = static_cast<int>(node_id); cur >= 0; cur = arena[cur].parent) {
      const BbNode& nd = arena[cur];
      if (nd.branch_col >= 0) {
        lb[nd.branch_col] = std::max(lb[nd.branch_col], nd.lb);
        ub[nd.branch_col] = std::min(ub[nd.branch_col], nd.ub);
      }
    }

    ++result.node_count;
    LpResult rel = solve_lp(model, &lb, &ub, opts.time_limit - elapsed());
    if (rel.status == LpStatus::IterLimit) {
      // unresolved node: keep it open so the reported bound stays valid
      open.emplace(prio, node_id);
      limit_hit = true;
      break;
    }
    if (rel.status == LpStatus::Infeasible) continue;
    if (rel.status == LpStatus::Unbounded)
      throw SolverError("LP relaxation unbounded: inconsistent model");
    if (std::isfinite(inc_obj) &&
        rel.objective >= inc_obj - opts.gap_tolerance * std::max(1.0, std::abs(inc_obj)) - 1e-12)
      continue;

    int branch_col = -1;
    double best_frac = kIntTol;
    for (int c : int_cols) {
      double v = rel.values[c];
      double frac = std::abs(v - std::round(v));
      if (frac > best_frac + 1e-12) { best_frac = frac; branch_col = c; }
    }
    if (branch_col < 0) {
      // integral: new incumbent
      if (rel.objective < inc_obj - 1e-12) {
        inc_obj = rel.objective;
        inc_values = rel.values;
        for (int c : int_cols) inc_values[c] = std::round(inc_values[c]);
      }
      continue;
    }

    double v = rel.values[branch_col];
    long id_down = static_cast<long>(arena.size());
    arena.push_back({rel.objective, id_down, static_cast<int>(node_id), branch_col,
                     -std::numeric_limits<double>::infinity(), std::floor(v)});
    open.emplace(rel.objective, id_down);
    long id_up = static_cast<long>(arena.size());
    arena.push_back({rel.objective, id_up, static_cast<int>(node_id), branch_col,
                     std::ceil(v), std::numeric_limits<double>::infinity()});
    open.emplace(rel.objective, id_up);
  }

  double best_bound;
  if (open.empty()) {
    best_bound = std::isfinite(inc_obj) ? inc_obj : std::numeric_limits<double>::infinity();
  } else {
    best_bound = open.top().first;
    if (!std::isfinite(best_bound)) best_bound = -std::numeric_limits<double>::infinity();
  }
  return finish(best_bound);
}

Schedule extract_schedule(const Solution& sol, const VarIndex& ix, const WallPlan& plan,
                          const ScheduleProblem& prob) {
  auto value = [&](const std::string& name) {
    auto it = sol.values.find(name);
    if (it == sol.values.end())
      throw SolverError("solution is missing variable " + name);
    return it->second;
  };

  Schedule s;
  for (const auto& b : plan.bricks) {
    std::string si = std::to_string(b.id);
    s.brick_starts[b.id] = value("SB_" + si);
    int robot = -1;
    for (int k = 0; k < ix.n_robots; ++k) {
      if (value("x_" + si + "_" + std::to_string(k)) > 0.5) {
        if (robot >= 0) throw SolverError("brick " + si + " assigned to two robots");
        robot = k;
      }
    }
    if (robot < 0) throw SolverError("brick " + si + " is unassigned");
    s.brick_assignments[b.id] = robot;
    s.makespan = std::max(s.makespan, s.brick_starts[b.id] + prob.d_brick);
  }
  std::vector<std::pair<double, int>> ranked;
  for (const auto& a : plan.adhesions) {
    std::string sj = std::to_string(a.id);
    s.adhesion_starts[a.id] = value("SA_" + sj);
    s.adhesion_durations[a.id] = value("dA_" + sj);
    ranked.emplace_back(value("r_" + sj), a.id);
  }
  std::sort(ranked.begin(), ranked.end());
  for (const auto& [r, id] : ranked) s.adhesion_order.push_back(id);
  s.objective_breakdown = evaluate_objective(s, plan, prob);
  return s;
}

}  // namespace masonry
