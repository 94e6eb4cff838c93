#include <cmath>
#include <random>

#include "doctest.h"
#include "masonry/solver.hpp"
#include "masonry/validator.hpp"
#include "test_util.hpp"

using namespace masonry;
using namespace masonry::testutil;

TEST_CASE("greedy schedules are feasible across wall sizes") {
  for (auto [l, h, r] : {std::tuple{0.5, 0.1, 1}, {1.0, 0.2, 2}, {1.5, 0.2, 2},
                         {2.5, 0.3, 2}, {2.5, 0.3, 3}}) {
    CAPTURE(l);
    CAPTURE(h);
    CAPTURE(r);
    Instance inst = make_instance(l, h, r);
    Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
    ValidationReport rep = check_schedule(g, inst.plan, inst.conflicts, inst.prob);
    for (const auto& v : rep.violations) CAPTURE(v.detail);
    CHECK(rep.passed);
    CHECK(g.brick_assignments.size() == inst.plan.bricks.size());
    CHECK(g.adhesion_order.size() == inst.plan.adhesions.size());
    CHECK(g.makespan > 0.0);
  }
}

TEST_CASE("branch and bound matches the oracle on fixed tiny instances") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    Instance inst = random_tiny_instance(rng);
    CAPTURE(trial);
    Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
    finalize_big_m(inst, g.makespan);
    auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);
    Solution inc = encode_schedule(g, model, ix, inst.plan, inst.prob);

    SolveOptions opts;
    opts.time_limit = 60.0;
    Solution sol = solve_bb(model, &inc, opts);
    REQUIRE(sol.status == SolveStatus::Optimal);

    double oracle = brute_force_oracle_objective(inst.plan, inst.conflicts, inst.prob);
    CHECK(sol.objective == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(sol.best_bound <= sol.objective + 1e-6);
  }
}

TEST_CASE("incumbent never beats the optimum and bounds are ordered") {
  Instance inst = make_instance(1.0, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  finalize_big_m(inst, g.makespan);
  auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);
  Solution inc = encode_schedule(g, model, ix, inst.plan, inst.prob);

  SolveOptions opts;
  opts.time_limit = 120.0;
  Solution sol = solve_bb(model, &inc, opts);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective <= inc.objective + 1e-9);
  CHECK(sol.best_bound == doctest::Approx(sol.objective).epsilon(1e-6));
}

TEST_CASE("solve_bb is deterministic for a fixed seed") {
  Instance inst = make_instance(1.0, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  finalize_big_m(inst, g.makespan);
  auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);
  Solution inc = encode_schedule(g, model, ix, inst.plan, inst.prob);

  SolveOptions opts;
  opts.time_limit = 120.0;
  Solution a = solve_bb(model, &inc, opts);
  Solution b = solve_bb(model, &inc, opts);
  CHECK(a.objective == b.objective);
  CHECK(a.node_count == b.node_count);
  CHECK(a.values == b.values);
}

TEST_CASE("extract/encode round trip reproduces the schedule") {
  Instance inst = make_instance(1.0, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  finalize_big_m(inst, g.makespan);
  auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);
  Solution sol = encode_schedule(g, model, ix, inst.plan, inst.prob);
  Schedule back = extract_schedule(sol, ix, inst.plan, inst.prob);

  CHECK(back.brick_assignments == g.brick_assignments);
  CHECK(back.adhesion_order == g.adhesion_order);
  for (const auto& [i, t] : g.brick_starts)
    CHECK(back.brick_starts.at(i) == doctest::Approx(t).epsilon(1e-9));
  for (const auto& [i, t] : g.adhesion_starts)
    CHECK(back.adhesion_starts.at(i) == doctest::Approx(t).epsilon(1e-9));
  CHECK(back.makespan == doctest::Approx(g.makespan).epsilon(1e-9));
}

TEST_CASE("time limit yields an honest TimeLimit status with a valid bound") {
  Instance inst = make_instance(2.5, 0.3, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  finalize_big_m(inst, g.makespan);
  auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);
  Solution inc = encode_schedule(g, model, ix, inst.plan, inst.prob);

  SolveOptions opts;
  opts.time_limit = 3.0;
  Solution sol = solve_bb(model, &inc, opts);
  CHECK(sol.status == SolveStatus::TimeLimit);
  CHECK(sol.objective <= inc.objective + 1e-9);  // incumbent is kept
  CHECK(sol.best_bound <= sol.objective + 1e-6);
  CHECK(std::isfinite(sol.best_bound));
}

TEST_CASE("integer-infeasible model is reported") {
  // x + y = 1 with x = y: the relaxation sits at (0.5, 0.5) but no binary
  // point satisfies both rows
  MilpModel m;
  m.add_column(0, 1, VarKind::Binary, "x");
  m.add_column(0, 1, VarKind::Binary, "y");
  m.objective = {1.0, 1.0};
  m.add_row({{{0, 1.0}, {1, 1.0}}, Relation::Equal, 1.0, "sum"});
  m.add_row({{{0, 1.0}, {1, -1.0}}, Relation::Equal, 0.0, "tie"});
  SolveOptions opts;
  opts.time_limit = 30.0;
  Solution sol = solve_bb(m, nullptr, opts);
  CHECK(sol.status == SolveStatus::Infeasible);
}
