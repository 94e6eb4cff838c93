#pragma once

#include <limits>
#include <vector>

#include "masonry/model.hpp"

namespace masonry {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpResult {
  LpStatus status = LpStatus::IterLimit;
  double objective = 0.0;
  std::vector<double> values;  // structural columns only
};

/// Solves the continuous relaxation of `model` (integrality ignored) with a
/// bounded-variable primal simplex. Dantzig pricing with a permanent switch
/// to Bland's rule after a degeneracy streak keeps the pivot sequence
/// deterministic and cycle-free.
///
/// `lb_override`/`ub_override`, when given, replace the column bounds
/// (used by branch-and-bound nodes and the enumeration oracle). A finite
/// `time_limit` (seconds) aborts long solves with IterLimit.
LpResult solve_lp(const MilpModel& model,
                  const std::vector<double>* lb_override = nullptr,
                  const std::vector<double>* ub_override = nullptr,
                  double time_limit = std::numeric_limits<double>::infinity());

}  // namespace masonry
