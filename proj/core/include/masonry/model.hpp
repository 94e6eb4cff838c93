#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "masonry/wallplan.hpp"

namespace masonry {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScheduleProblem {
  int n_robots = 1;
  std::vector<std::pair<double, double>> pickup_points;  // (x, y), world frame
  double d_brick = 30.0;
  double d_spray = 7.0;
  double d_cure = 60.0;
  double v_log = 0.6;
  double clearance = 0.8;
  double w_span = 2.0;
  double w_brick_log = 4.0;
  double w_cure = 0.2;
  double w_adh_log = 5.0;
  double big_m_time = 1e4;
  double big_m_rank = 100.0;
  bool cure_from_end = false;

  void validate(size_t n_adhesions) const;
};

enum class VarKind { Continuous, Binary, Integer };

struct Column {
  double lb = 0.0;
  double ub = 0.0;
  VarKind kind = VarKind::Continuous;
  std::string name;
};

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Row {
  std::vector<std::pair<int, double>> coeffs;  // (column, coefficient)
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

struct MilpModel {
  std::string name = "masonry";
  std::vector<Column> columns;
  std::vector<Row> rows;
  std::vector<double> objective;  // dense, size == columns.size()
  double objective_constant = 0.0;

  int add_column(double lb, double ub, VarKind kind, std::string name);
  void add_row(Row row);
  double eval_objective(const std::vector<double>& values) const;
};

/// Column layout for one problem instance. Blocks are contiguous, so
/// lookups are plain offset arithmetic.
struct VarIndex {
  int n_bricks = 0;
  int n_adhesions = 0;
  int n_robots = 0;
  std::vector<std::pair<int, int>> conflict_bb;  // sorted, i<j
  std::vector<std::pair<int, int>> conflict_ba;  // sorted (brick, adhesion)
  std::map<std::string, int> by_name;

  int sb(int i) const { return i; }
  int sa(int j) const { return n_bricks + j; }
  int da(int j) const { return n_bricks + n_adhesions + j; }
  int ta(int j) const { return n_bricks + 2 * n_adhesions + j; }
  int cmax() const { return n_bricks + 3 * n_adhesions; }
  int x(int i, int k) const { return base_x_ + i * n_robots + k; }
  int alpha(int k, int i, int j) const {
    return base_alpha_ + k * n_bricks * (n_bricks - 1) + ordered_pair(i, j, n_bricks);
  }
  int beta(int i, int j) const;  // requires i < j
  int gamma_bb(int bi, int bj) const;
  int gamma_ba(int bi, int aj) const;
  int o(int i, int j) const { return base_o_ + ordered_pair(i, j, n_adhesions); }
  int s(int i) const { return base_s_ + i; }
  int r(int i) const { return base_r_ + i; }

  int num_columns() const;

  static int ordered_pair(int i, int j, int n) { return i * (n - 1) + (j < i ? j : j - 1); }

  // filled by build_model
  int base_x_ = 0, base_alpha_ = 0, base_beta_ = 0, base_gbb_ = 0, base_gba_ = 0,
      base_o_ = 0, base_s_ = 0, base_r_ = 0;
};

struct ModelBuild {
  MilpModel model;
  VarIndex index;
};

/// Distance from pickup point k to brick i's placement, measured in the
/// ground plane with the wall along y = 0.
double brick_logistics_distance(const WallPlan& plan, const ScheduleProblem& prob,
                                int brick_id, int robot);

/// Center-to-center distance between two adhesion tasks.
double adhesion_distance(const WallPlan& plan, int ai, int aj);

ModelBuild build_model(const WallPlan& plan, const ConflictSets& conflicts,
                       const ScheduleProblem& prob);

std::pair<double, double> choose_big_m(const WallPlan& plan, const ScheduleProblem& prob,
                                       double incumbent_makespan);

// Constraint family emitters; build_model calls these in a fixed order.
void emit_assignment(MilpModel& m, const VarIndex& ix);
void emit_brick_ordering(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob);
void emit_adhesion_ordering(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob);
void emit_precedence(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                     const ScheduleProblem& prob);
void emit_conflicts(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob);
void emit_curing(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                 const ScheduleProblem& prob);
void emit_ranking_successors(MilpModel& m, const VarIndex& ix, const ScheduleProblem& prob);
void emit_logistics_duration(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                             const ScheduleProblem& prob);
void emit_makespan_and_objective(MilpModel& m, const VarIndex& ix, const WallPlan& plan,
                                 const ScheduleProblem& prob);

}  // namespace masonry
