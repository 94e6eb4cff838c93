#include "masonry/model.hpp"

#include <algorithm>
#include <cmath>

namespace masonry {

void ScheduleProblem::validate(size_t n_adhesions) const {
  if (n_robots < 1) throw ModelError("at least one pick-place robot is required");
  if (pickup_points.size() < static_cast<size_t>(n_robots))
    throw ModelError("each robot needs a pickup point");
  if (d_brick <= 0.0 || d_spray <= 0.0 || d_cure <= 0.0)
    throw ModelError("task durations must be positive");
  if (d_cure <= d_brick)
    throw ModelError("curing window must exceed the brick placement duration");
  if (v_log <= 0.0) throw ModelError("logistics speed must be positive");
  if (w_span < 0.0 || w_brick_log < 0.0 || w_cure < 0.0 || w_adh_log < 0.0)
    throw ModelError("objective weights must be nonnegative");
  if (big_m_time <= std::max(d_brick, d_spray))
    throw ModelError("big_m_time is too small");
  if (big_m_rank < static_cast<double>(n_adhesions))
    throw ModelError("big_m_rank is too small");
}

int MilpModel::add_column(double lb, double ub, VarKind kind, std::string name) {
  Column c;
  c.lb = lb;
  c.ub = ub;
  c.kind = kind;
  c.name = std::move(name);
  columns.push_back(std::move(c));
  objective.push_back(0.0);
  return static_cast<int>(columns.size()) - 1;
}

void MilpModel::add_row(Row row) { rows.push_back(std::move(row)); }

double MilpModel::eval_objective(const std::vector<double>& values) const {
  double v = objective_constant;
  for (size_t i = 0; i < objective.size(); ++i) v += objective[i] * values[i];
  return v;
}

int VarIndex::beta(int i, int j) const {
  // triangular index over pairs i<j
  return base_beta_ + i * n_adhesions - i * (i + 1) / 2 + (j - i - 1);
}

int VarIndex::gamma_bb(int bi, int bj) const {
  auto it = std::lower_bound(conflict_bb.begin(), conflict_bb.end(), std::make_pair(bi, bj));
  return base_gbb_ + static_cast<int>(it - conflict_bb.begin());
}

int VarIndex::gamma_ba(int bi, int aj) const {
  auto it = std::lower_bound(conflict_ba.begin(), conflict_ba.end(), std::make_pair(bi, aj));
  return base_gba_ + static_cast<int>(it - conflict_ba.begin());
}

int VarIndex::num_columns() const {
  if (n_bricks == 0) return 0;
  return base_r_ + n_adhesions;
}

double brick_logistics_distance(const WallPlan& plan, const ScheduleProblem& prob,
                                int brick_id, int robot) {
  const auto& b = plan.bricks.at(brick_id);
  double bx = plan.world_center(b.center).x;
  const auto& [px, py] = prob.pickup_points.at(robot);
  return std::hypot(bx - px, py);
}

double adhesion_distance(const WallPlan& plan, int ai, int aj) {
  return distance(plan.adhesions.at(ai).center, plan.adhesions.at(aj).center);
}

std::pair<double, double> choose_big_m(const WallPlan& plan, const ScheduleProblem& prob,
                                       double incumbent_makespan) {
  double m_time = 2.0 * incumbent_makespan + prob.d_cure;
  double m_rank = static_cast<double>(plan.adhesions.size()) + 1.0;
  return {m_time, m_rank};
}

namespace {
constexpr double kInf = 1e30;

std::string id2(const char* fam, int a, int b) {
  return std::string(fam) + "_" + std::to_string(a) + "_" + std::to_string(b);
}
std::string id3(const char* fam, int a, int b, int c) {
  return id2(fam, a, b) + "_" + std::to_string(c);
}
}  // namespace

void emit_assignment(MilpModel& m, const VarIndex& ix) {
  for (int i = 0; i < ix.n_bricks; ++i) {
    Row row;
    for (int k = 0; k < ix.n_robots; ++k) row.coeffs.emplace_back(ix.x(i, k), 1.0);
    row.relation = Relation::Equal;
    row.rhs = 1.0;
    row.name = "assign_" + std::to_string(i);
    m.add_row(std::move(row));
  }
}

void emit_brick_ordering(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob) {
  const double M = prob.big_m_time;
  for (int k = 0; k < ix.n_robots; ++k) {
    for (int i = 0; i < ix.n_bricks; ++i) {
      for (int j = 0; j < ix.n_bricks; ++j) {
        if (i == j) continue;
        Row row;
        row.coeffs = {{ix.sb(i), 1.0}, {ix.sb(j), -1.0}, {ix.alpha(k, i, j), M}};
        row.relation = Relation::LessEqual;
        row.rhs = M - prob.d_brick;
        row.name = id3("bord", k, i, j);
        m.add_row(std::move(row));
      }
    }
    // AND-linearization of alpha_ij + alpha_ji = x_ik * x_jk
    for (int i = 0; i < ix.n_bricks; ++i) {
      for (int j = i + 1; j < ix.n_bricks; ++j) {
        int aij = ix.alpha(k, i, j), aji = ix.alpha(k, j, i);
        int xik = ix.x(i, k), xjk = ix.x(j, k);
        m.add_row({{{aij, 1.0}, {aji, 1.0}, {xik, -1.0}},
                   Relation::LessEqual, 0.0, id3("lina", k, i, j)});
        m.add_row({{{aij, 1.0}, {aji, 1.0}, {xjk, -1.0}},
                   Relation::LessEqual, 0.0, id3("linb", k, i, j)});
        m.add_row({{{aij, 1.0}, {aji, 1.0}, {xik, -1.0}, {xjk, -1.0}},
                   Relation::GreaterEqual, -1.0, id3("linc", k, i, j)});
      }
    }
  }
}

void emit_adhesion_ordering(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob) {
  const double M = prob.big_m_time;
  for (int i = 0; i < ix.n_adhesions; ++i) {
    for (int j = i + 1; j < ix.n_adhesions; ++j) {
      int b = ix.beta(i, j);
      // beta_ij = 1: A_i finishes before A_j starts
      m.add_row({{{ix.sa(i), 1.0}, {ix.da(i), 1.0}, {ix.sa(j), -1.0}, {b, M}},
                 Relation::LessEqual, M, id2("aord1", i, j)});
      m.add_row({{{ix.sa(j), 1.0}, {ix.da(j), 1.0}, {ix.sa(i), -1.0}, {b, -M}},
                 Relation::LessEqual, 0.0, id2("aord2", i, j)});
    }
  }
}

void emit_precedence(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                     const ScheduleProblem& prob) {
  for (const auto& [a, b] : plan.precedence_ab) {
    m.add_row({{{ix.sa(a), 1.0}, {ix.da(a), 1.0}, {ix.sb(b), -1.0}},
               Relation::LessEqual, 0.0, id2("prec_ab", a, b)});
  }
  for (const auto& [b, a] : plan.precedence_ba) {
    m.add_row({{{ix.sb(b), 1.0}, {ix.sa(a), -1.0}},
               Relation::LessEqual, -prob.d_brick, id2("prec_ba", b, a)});
  }
}

void emit_conflicts(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob) {
  const double M = prob.big_m_time;
  for (const auto& [i, j] : ix.conflict_bb) {
    int g = ix.gamma_bb(i, j);
    m.add_row({{{ix.sb(i), 1.0}, {ix.sb(j), -1.0}, {g, M}},
               Relation::LessEqual, M - prob.d_brick, id2("cbb1", i, j)});
    m.add_row({{{ix.sb(j), 1.0}, {ix.sb(i), -1.0}, {g, -M}},
               Relation::LessEqual, -prob.d_brick, id2("cbb2", i, j)});
  }
  for (const auto& [b, a] : ix.conflict_ba) {
    int g = ix.gamma_ba(b, a);
    m.add_row({{{ix.sb(b), 1.0}, {ix.sa(a), -1.0}, {g, M}},
               Relation::LessEqual, M - prob.d_brick, id2("cba1", b, a)});
    m.add_row({{{ix.sa(a), 1.0}, {ix.da(a), 1.0}, {ix.sb(b), -1.0}, {g, -M}},
               Relation::LessEqual, 0.0, id2("cba2", b, a)});
  }
}

void emit_curing(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                 const ScheduleProblem& prob) {
  for (const auto& a : plan.adhesions) {
    Row row;
    row.coeffs = {{ix.sb(a.top_brick), 1.0}, {ix.sa(a.id), -1.0}};
    if (prob.cure_from_end) row.coeffs.emplace_back(ix.da(a.id), -1.0);
    row.relation = Relation::LessEqual;
    row.rhs = prob.d_cure - prob.d_brick;
    row.name = id2("cure", a.id, a.top_brick);
    m.add_row(std::move(row));
  }
}

void emit_ranking_successors(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob) {
  const int nA = ix.n_adhesions;
  if (nA == 0) return;
  const double Mr = prob.big_m_rank;
  // r_i counts predecessors: r_i = sum_{j<i} beta_ji + sum_{j>i} (1 - beta_ij)
  for (int i = 0; i < nA; ++i) {
    Row row;
    row.coeffs.emplace_back(ix.r(i), 1.0);
    for (int j = 0; j < i; ++j) row.coeffs.emplace_back(ix.beta(j, i), -1.0);
    for (int j = i + 1; j < nA; ++j) row.coeffs.emplace_back(ix.beta(i, j), 1.0);
    row.relation = Relation::Equal;
    row.rhs = static_cast<double>(nA - 1 - i);
    row.name = "rankdef_" + std::to_string(i);
    m.add_row(std::move(row));
  }
  for (int i = 0; i < nA; ++i) {
    for (int j = 0; j < nA; ++j) {
      if (i == j) continue;
      int oij = ix.o(i, j);
      m.add_row({{{ix.r(j), 1.0}, {ix.r(i), -1.0}, {oij, Mr}},
                 Relation::LessEqual, 1.0 + Mr, id2("rank1", i, j)});
      m.add_row({{{ix.r(j), 1.0}, {ix.r(i), -1.0}, {oij, -Mr}},
                 Relation::GreaterEqual, 1.0 - Mr, id2("rank2", i, j)});
    }
  }
  for (int i = 0; i < nA; ++i) {
    Row row;
    for (int j = 0; j < nA; ++j)
      if (j != i) row.coeffs.emplace_back(ix.o(i, j), 1.0);
    row.coeffs.emplace_back(ix.s(i), 1.0);
    row.relation = Relation::Equal;
    row.rhs = 1.0;
    row.name = "succrow_" + std::to_string(i);
    m.add_row(std::move(row));
  }
  Row slack;
  for (int i = 0; i < nA; ++i) slack.coeffs.emplace_back(ix.s(i), 1.0);
  slack.relation = Relation::Equal;
  slack.rhs = 1.0;
  slack.name = "slacksum";
  m.add_row(std::move(slack));
}

void emit_logistics_duration(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                             const ScheduleProblem& prob) {
  for (int i = 0; i < ix.n_adhesions; ++i) {
    Row logi;
    logi.coeffs.emplace_back(ix.ta(i), 1.0);
    for (int j = 0; j < ix.n_adhesions; ++j) {
      if (j == i) continue;
      logi.coeffs.emplace_back(ix.o(i, j), -adhesion_distance(plan, i, j) / prob.v_log);
    }
    logi.relation = Relation::Equal;
    logi.rhs = 0.0;
    logi.name = "logi_" + std::to_string(i);
    m.add_row(std::move(logi));

    m.add_row({{{ix.da(i), 1.0}, {ix.ta(i), -1.0}},
               Relation::Equal, prob.d_spray, "adur_" + std::to_string(i)});
  }
}

void emit_makespan_and_objective(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                                 const ScheduleProblem& prob) {
  for (int i = 0; i < ix.n_bricks; ++i) {
    m.add_row({{{ix.sb(i), 1.0}, {ix.cmax(), -1.0}},
               Relation::LessEqual, -prob.d_brick, "mkspan_" + std::to_string(i)});
  }
  m.objective.assign(m.columns.size(), 0.0);
  m.objective[ix.cmax()] += prob.w_span;
  for (int i = 0; i < ix.n_bricks; ++i)
    for (int k = 0; k < ix.n_robots; ++k)
      m.objective[ix.x(i, k)] += prob.w_brick_log * brick_logistics_distance(plan, prob, i, k);
  for (const auto& a : plan.adhesions) {
    m.objective[ix.sb(a.top_brick)] += prob.w_cure;
    m.objective[ix.sa(a.id)] -= prob.w_cure;
    m.objective[ix.da(a.id)] -= prob.w_cure;
  }
  for (int i = 0; i < ix.n_adhesions; ++i)
    for (int j = 0; j < ix.n_adhesions; ++j)
      if (j != i) m.objective[ix.o(i, j)] += prob.w_adh_log * adhesion_distance(plan, i, j);
}

ModelBuild build_model(const WallPlan& plan, const ConflictSets& conflicts,
                       const ScheduleProblem& prob) {
  prob.validate(plan.adhesions.size());

  ModelBuild out;
  MilpModel& m = out.model;
  VarIndex& ix = out.index;
  ix.n_bricks = static_cast<int>(plan.bricks.size());
  ix.n_adhesions = static_cast<int>(plan.adhesions.size());
  ix.n_robots = prob.n_robots;
  ix.conflict_bb.assign(conflicts.brick_brick.begin(), conflicts.brick_brick.end());
  ix.conflict_ba.assign(conflicts.brick_adhesion.begin(), conflicts.brick_adhesion.end());

  if (ix.n_bricks == 0) return out;

  const int nB = ix.n_bricks, nA = ix.n_adhesions, N = ix.n_robots;
  // Start times are bounded below by zero (mission starts at t = 0).
  for (int i = 0; i < nB; ++i)
    m.add_column(0.0, kInf, VarKind::Continuous, "SB_" + std::to_string(i));
  for (int j = 0; j < nA; ++j)
    m.add_column(0.0, kInf, VarKind::Continuous, "SA_" + std::to_string(j));
  for (int j = 0; j < nA; ++j)
    m.add_column(0.0, kInf, VarKind::Continuous, "dA_" + std::to_string(j));
  for (int j = 0; j < nA; ++j)
    m.add_column(0.0, kInf, VarKind::Continuous, "tA_" + std::to_string(j));
  m.add_column(0.0, kInf, VarKind::Continuous, "Cmax");

  ix.base_x_ = static_cast<int>(m.columns.size());
  for (int i = 0; i < nB; ++i)
    for (int k = 0; k < N; ++k)
      m.add_column(0.0, 1.0, VarKind::Binary, id2("x", i, k));
  ix.base_alpha_ = static_cast<int>(m.columns.size());
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < nB; ++i)
      for (int j = 0; j < nB; ++j)
        if (j != i) m.add_column(0.0, 1.0, VarKind::Binary, id3("alpha", k, i, j));
  ix.base_beta_ = static_cast<int>(m.columns.size());
  for (int i = 0; i < nA; ++i)
    for (int j = i + 1; j < nA; ++j)
      m.add_column(0.0, 1.0, VarKind::Binary, id2("beta", i, j));
  ix.base_gbb_ = static_cast<int>(m.columns.size());
  for (const auto& [i, j] : ix.conflict_bb)
    m.add_column(0.0, 1.0, VarKind::Binary, id2("gammaB", i, j));
  ix.base_gba_ = static_cast<int>(m.columns.size());
  for (const auto& [b, a] : ix.conflict_ba)
    m.add_column(0.0, 1.0, VarKind::Binary, id2("gammaBA", b, a));
  ix.base_o_ = static_cast<int>(m.columns.size());
  for (int i = 0; i < nA; ++i)
    for (int j = 0; j < nA; ++j)
      if (j != i) m.add_column(0.0, 1.0, VarKind::Binary, id2("o", i, j));
  ix.base_s_ = static_cast<int>(m.columns.size());
  for (int i = 0; i < nA; ++i)
    m.add_column(0.0, 1.0, VarKind::Binary, "s_" + std::to_string(i));
  ix.base_r_ = static_cast<int>(m.columns.size());
  for (int i = 0; i < nA; ++i)
    m.add_column(0.0, std::max(0.0, static_cast<double>(nA - 1)), VarKind::Integer,
                 "r_" + std::to_string(i));

  for (size_t c = 0; c < m.columns.size(); ++c)
    ix.by_name.emplace(m.columns[c].name, static_cast<int>(c));

  emit_assignment(m, ix);
  emit_brick_ordering(m, ix, prob);
  emit_adhesion_ordering(m, ix, prob);
  emit_precedence(m, ix, plan, prob);
  emit_conflicts(m, ix, prob);
  emit_curing(m, ix, plan, prob);
  emit_ranking_successors(m, ix, prob);
  emit_logistics_duration(m, ix, plan, prob);
  emit_makespan_and_objective(m, ix, plan, prob);
  return out;
}

}  // namespace masonry
