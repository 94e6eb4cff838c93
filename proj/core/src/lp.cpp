#include "masonry/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace masonry {

namespace {

constexpr double kInfBound = 1e29;  // bounds at or above this are "infinite"
constexpr double kCostTol = 1e-7;
constexpr double kPivotEps = 1e-9;
constexpr double kFeasTol = 1e-7;

bool is_inf(double v) { return std::abs(v) >= kInfBound; }

enum class State : uint8_t { Basic, AtLower, AtUpper, Free };

class Simplex {
 public:
  Simplex(const MilpModel& model, const std::vector<double>* lb_override,
          const std::vector<double>* ub_override)
      : model_(model) {
    n_ = static_cast<int>(model.columns.size());
    m_ = static_cast<int>(model.rows.size());
    total_ = n_ + 2 * m_;

    lb_.assign(total_, 0.0);
    ub_.assign(total_, 0.0);
    cols_.assign(total_, {});
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lb_override ? (*lb_override)[j] : model.columns[j].lb;
      ub_[j] = ub_override ? (*ub_override)[j] : model.columns[j].ub;
    }
    b_.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const Row& row = model.rows[r];
      b_[r] = row.rhs;
      for (const auto& [c, v] : row.coeffs) cols_[c].emplace_back(r, v);
      int s = n_ + r;  // slack: A x + s = b
      cols_[s].emplace_back(r, 1.0);
      switch (row.relation) {
        case Relation::LessEqual: lb_[s] = 0.0; ub_[s] = kInfBound * 10; break;
        case Relation::Equal: lb_[s] = 0.0; ub_[s] = 0.0; break;
        case Relation::GreaterEqual: lb_[s] = -kInfBound * 10; ub_[s] = 0.0; break;
      }
    }
  }

  LpResult run() {
    LpResult res;
    if (m_ == 0) {
      // only bounds: put every column at the cheaper bound
      res.values.resize(n_);
      double obj = model_.objective_constant;
      for (int j = 0; j < n_; ++j) {
        if (lb_[j] > ub_[j] + kFeasTol) { res.status = LpStatus::Infeasible; return res; }
        double c = model_.objective[j];
        double v;
        if (c > 0 || (c == 0 && !is_inf(lb_[j]))) v = lb_[j];
        else v = ub_[j];
        if (is_inf(v)) { res.status = LpStatus::Unbounded; return res; }
        res.values[j] = v;
        obj += c * v;
      }
      res.status = LpStatus::Optimal;
      res.objective = obj;
      return res;
    }
    for (int j = 0; j < n_; ++j)
      if (lb_[j] > ub_[j] + kFeasTol) { res.status = LpStatus::Infeasible; return res; }

    init_state();

    // Phase 1: minimize the artificial total.
    std::vector<double> phase1(total_, 0.0);
    for (int a = n_ + m_; a < total_; ++a) phase1[a] = 1.0;
    LpStatus st = iterate(phase1, /*phase1=*/true);
    if (st == LpStatus::IterLimit) { res.status = st; return res; }
    double infeas = 0.0;
    for (int a = n_ + m_; a < total_; ++a) infeas += x_[a];
    if (infeas > kFeasTol * (1.0 + std::abs(sum_b_))) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    for (int a = n_ + m_; a < total_; ++a) ub_[a] = 0.0;

    std::vector<double> cost(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = model_.objective[j];
    st = iterate(cost, /*phase1=*/false);
    if (st != LpStatus::Optimal) { res.status = st; return res; }

    res.status = LpStatus::Optimal;
    res.values.assign(x_.begin(), x_.begin() + n_);
    res.objective = model_.objective_constant;
    for (int j = 0; j < n_; ++j) res.objective += model_.objective[j] * x_[j];
    return res;
  }

 private:
  void init_state() {
    state_.assign(total_, State::AtLower);
    x_.assign(total_, 0.0);
    for (int j = 0; j < n_ + m_; ++j) {
      if (!is_inf(lb_[j])) { state_[j] = State::AtLower; x_[j] = lb_[j]; }
      else if (!is_inf(ub_[j])) { state_[j] = State::AtUpper; x_[j] = ub_[j]; }
      else { state_[j] = State::Free; x_[j] = 0.0; }
    }
    // residual with all structural/slack variables at their initial values
    std::vector<double> resid = b_;
    sum_b_ = 0.0;
    for (double v : b_) sum_b_ += std::abs(v);
    for (int j = 0; j < n_ + m_; ++j) {
      if (x_[j] == 0.0) continue;
      for (const auto& [r, v] : cols_[j]) resid[r] -= v * x_[j];
    }
    basis_.resize(m_);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    // crash basis: the row's own slack whenever the residual fits its sign,
    // an artificial otherwise (phase 1 then only repairs the violated rows)
    for (int r = 0; r < m_; ++r) {
      int slack = n_ + r;
      int a = n_ + m_ + r;
      bool slack_ok = false;
      switch (model_.rows[r].relation) {
        case Relation::LessEqual: slack_ok = resid[r] >= 0.0; break;
        case Relation::GreaterEqual: slack_ok = resid[r] <= 0.0; break;
        case Relation::Equal: slack_ok = resid[r] == 0.0; break;
      }
      if (slack_ok) {
        basis_[r] = slack;
        state_[slack] = State::Basic;
        x_[slack] = resid[r];
        binv_[static_cast<size_t>(r) * m_ + r] = 1.0;
        cols_[a].clear();
        cols_[a].emplace_back(r, 1.0);
        lb_[a] = 0.0;
        ub_[a] = 0.0;  // unused artificial stays fixed at zero
        state_[a] = State::AtLower;
        x_[a] = 0.0;
      } else {
        double sign = resid[r] >= 0.0 ? 1.0 : -1.0;
        cols_[a].clear();
        cols_[a].emplace_back(r, sign);
        lb_[a] = 0.0;
        ub_[a] = kInfBound * 10;
        basis_[r] = a;
        state_[a] = State::Basic;
        x_[a] = std::abs(resid[r]);
        binv_[static_cast<size_t>(r) * m_ + r] = sign;
      }
    }
  }

  // x_B = Binv * (b - A_N x_N)
  void compute_basics() {
    std::vector<double> beff = b_;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == State::Basic || x_[j] == 0.0) continue;
      for (const auto& [r, v] : cols_[j]) beff[r] -= v * x_[j];
    }
    for (int i = 0; i < m_; ++i) {
      const double* row = &binv_[static_cast<size_t>(i) * m_];
      double acc = 0.0;
      for (int r = 0; r < m_; ++r) acc += row[r] * beff[r];
      x_[basis_[i]] = acc;
    }
  }

  void compute_duals(const std::vector<double>& cost, std::vector<double>& y) const {
    y.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<size_t>(i) * m_];
      for (int r = 0; r < m_; ++r) y[r] += cb * row[r];
    }
  }

  void ftran(int q, std::vector<double>& w) const {
    w.assign(m_, 0.0);
    for (const auto& [r, v] : cols_[q])
      for (int i = 0; i < m_; ++i) w[i] += binv_[static_cast<size_t>(i) * m_ + r] * v;
  }

  void refactorize() {
    // Gauss-Jordan inverse of the basis matrix; rare, robustness only.
    std::vector<double> B(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i)
      for (const auto& [r, v] : cols_[basis_[i]]) B[static_cast<size_t>(r) * m_ + i] = v;
    std::vector<double> inv(static_cast<size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<size_t>(i) * m_ + i] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      double best = std::abs(B[static_cast<size_t>(c) * m_ + c]);
      for (int r2 = c + 1; r2 < m_; ++r2) {
        double v = std::abs(B[static_cast<size_t>(r2) * m_ + c]);
        if (v > best) { best = v; piv = r2; }
      }
      if (best < 1e-12) continue;  // numerically singular column; leave as-is
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(B[static_cast<size_t>(piv) * m_ + k], B[static_cast<size_t>(c) * m_ + k]);
          std::swap(inv[static_cast<size_t>(piv) * m_ + k], inv[static_cast<size_t>(c) * m_ + k]);
        }
      }
      double d = B[static_cast<size_t>(c) * m_ + c];
      for (int k = 0; k < m_; ++k) {
        B[static_cast<size_t>(c) * m_ + k] /= d;
        inv[static_cast<size_t>(c) * m_ + k] /= d;
      }
      for (int r2 = 0; r2 < m_; ++r2) {
        if (r2 == c) continue;
        double f = B[static_cast<size_t>(r2) * m_ + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          B[static_cast<size_t>(r2) * m_ + k] -= f * B[static_cast<size_t>(c) * m_ + k];
          inv[static_cast<size_t>(r2) * m_ + k] -= f * inv[static_cast<size_t>(c) * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
  }

  LpStatus iterate(const std::vector<double>& cost, bool phase1) {
    const long iter_limit = 50000L + 60L * m_;
    long degenerate_streak = 0;
    bool bland = false;
    std::vector<double> y, w;
    int pivots_since_refactor = 0;

    compute_basics();
    for (long iter = 0; iter < iter_limit; ++iter) {
      if ((iter & 127) == 0 && deadline_valid_ &&
          std::chrono::steady_clock::now() > deadline_)
        return LpStatus::IterLimit;
      compute_duals(cost, y);

      int entering = -1;
      double best_score = bland ? 0.0 : kCostTol;
      int dir = 1;
      for (int j = 0; j < total_; ++j) {
        if (state_[j] == State::Basic) continue;
        if (ub_[j] - lb_[j] < 1e-12) continue;  // fixed
        if (phase1 == false && j >= n_ + m_) continue;  // artificials stay out
        double d = cost[j];
        for (const auto& [r, v] : cols_[j]) d -= y[r] * v;
        double score = 0.0;
        int cand_dir = 0;
        if ((state_[j] == State::AtLower || state_[j] == State::Free) && d < -kCostTol) {
          score = -d;
          cand_dir = 1;
        } else if ((state_[j] == State::AtUpper || state_[j] == State::Free) && d > kCostTol) {
          score = d;
          cand_dir = -1;
        }
        if (cand_dir == 0) continue;
        if (bland) { entering = j; dir = cand_dir; break; }
        if (score > best_score) { best_score = score; entering = j; dir = cand_dir; }
      }
      if (entering < 0) return LpStatus::Optimal;

      ftran(entering, w);

      // ratio test: x_B moves by -dir * t * w, entering moves by dir * t
      double t_max = std::numeric_limits<double>::infinity();
      int leave_pos = -1;
      double leave_pivot = 0.0;
      bool self_block = false;
      double range = ub_[entering] - lb_[entering];
      if (!is_inf(range)) { t_max = range; self_block = true; }
      for (int i = 0; i < m_; ++i) {
        double coef = dir * w[i];
        int bv = basis_[i];
        double t = std::numeric_limits<double>::infinity();
        if (coef > kPivotEps) {
          if (!is_inf(lb_[bv])) t = (x_[bv] - lb_[bv]) / coef;
        } else if (coef < -kPivotEps) {
          if (!is_inf(ub_[bv])) t = (ub_[bv] - x_[bv]) / (-coef);
        } else {
          continue;
        }
        if (t < -1e-9) t = 0.0;
        if (t < t_max - 1e-9 ||
            (t < t_max + 1e-9 && leave_pos >= 0 && std::abs(w[i]) > std::abs(leave_pivot)) ||
            (t < t_max + 1e-9 && leave_pos < 0 && self_block && t <= t_max)) {
          t_max = std::min(t, t_max);
          leave_pos = i;
          leave_pivot = w[i];
          self_block = false;
        }
      }
      if (std::isinf(t_max)) return LpStatus::Unbounded;
      if (t_max < 0.0) t_max = 0.0;

      if (t_max <= 1e-10) ++degenerate_streak;
      else degenerate_streak = 0;
      if (degenerate_streak > m_ + 200) bland = true;

      if (leave_pos < 0) {
        // bound flip
        double delta = dir * (ub_[entering] - lb_[entering]);
        for (int i = 0; i < m_; ++i)
          if (w[i] != 0.0) x_[basis_[i]] -= delta * w[i];
        if (dir > 0) { state_[entering] = State::AtUpper; x_[entering] = ub_[entering]; }
        else { state_[entering] = State::AtLower; x_[entering] = lb_[entering]; }
        continue;
      }

      if (std::abs(leave_pivot) < 1e-9) {
        refactorize();
        compute_basics();
        ftran(entering, w);
        leave_pivot = w[leave_pos];
        if (std::abs(leave_pivot) < 1e-11) {
          // hopeless pivot; treat as degenerate bound flip to avoid stalling
          ++degenerate_streak;
          bland = true;
          continue;
        }
      }

      for (int i = 0; i < m_; ++i)
        if (w[i] != 0.0) x_[basis_[i]] -= dir * t_max * w[i];

      int leaving = basis_[leave_pos];
      state_[leaving] = dir * leave_pivot > 0 ? State::AtLower : State::AtUpper;
      x_[leaving] = state_[leaving] == State::AtLower ? lb_[leaving] : ub_[leaving];
      if (is_inf(x_[leaving])) x_[leaving] = 0.0;  // free leaving var

      state_[entering] = State::Basic;
      x_[entering] += dir * t_max;
      basis_[leave_pos] = entering;

      // product-form update of the basis inverse
      double* prow = &binv_[static_cast<size_t>(leave_pos) * m_];
      for (int k = 0; k < m_; ++k) prow[k] /= leave_pivot;
      for (int i = 0; i < m_; ++i) {
        if (i == leave_pos) continue;
        double f = w[i];
        if (f == 0.0) continue;
        double* irow = &binv_[static_cast<size_t>(i) * m_];
        for (int k = 0; k < m_; ++k) irow[k] -= f * prow[k];
      }
      if (++pivots_since_refactor >= 1000) {
        refactorize();
        compute_basics();
        pivots_since_refactor = 0;
      }
    }
    return LpStatus::IterLimit;
  }

 public:
  void set_deadline(std::chrono::steady_clock::time_point t) {
    deadline_ = t;
    deadline_valid_ = true;
  }

 private:
  const MilpModel& model_;
  std::chrono::steady_clock::time_point deadline_;
  bool deadline_valid_ = false;
  int n_ = 0, m_ = 0, total_ = 0;
  double sum_b_ = 0.0;
  std::vector<double> lb_, ub_, b_, x_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<int> basis_;
  std::vector<State> state_;
  std::vector<double> binv_;
};

}  // namespace

LpResult solve_lp(const MilpModel& model, const std::vector<double>* lb_override,
                  const std::vector<double>* ub_override, double time_limit) {
  if (model.columns.empty()) {
    LpResult res;
    res.status = LpStatus::Optimal;
    res.objective = model.objective_constant;
    return res;
  }
  Simplex s(model, lb_override, ub_override);
  if (std::isfinite(time_limit))
    s.set_deadline(std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(time_limit)));
  return s.run();
}

}  // namespace masonry
