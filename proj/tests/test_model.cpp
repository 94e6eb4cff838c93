#include <cmath>

#include "doctest.h"
#include "masonry/model.hpp"
#include "masonry/solver.hpp"
#include "masonry/validator.hpp"
#include "test_util.hpp"

using namespace masonry;
using namespace masonry::testutil;

TEST_CASE("variable block sizes for the 16/20 instance") {
  Instance inst = make_instance(2.5, 0.3, 2);
  finalize_big_m(inst, 400.0);
  auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);

  CHECK(ix.n_bricks == 16);
  CHECK(ix.n_adhesions == 20);
  CHECK(ix.n_robots == 2);

  int n_bin = 0, n_int = 0, n_cont = 0;
  for (const auto& c : model.columns) {
    switch (c.kind) {
      case VarKind::Binary: ++n_bin; break;
      case VarKind::Integer: ++n_int; break;
      case VarKind::Continuous: ++n_cont; break;
    }
  }
  // beta is stored for i<j only: 20*19/2 = 190 columns
  const int n_beta = 190;
  const int n_alpha = 2 * 16 * 15;
  const int n_x = 16 * 2;
  const int n_o = 20 * 19;
  const int n_slack = 20;
  const int n_gamma = static_cast<int>(inst.conflicts.brick_brick.size() +
                                       inst.conflicts.brick_adhesion.size());
  CHECK(n_bin == n_x + n_alpha + n_beta + n_gamma + n_o + n_slack);
  CHECK(n_int == 20);                       // ranking r
  CHECK(n_cont == 16 + 3 * 20 + 1);         // S^B, S^A, d^A, t^A, C_max
  CHECK(model.objective.size() == model.columns.size());
  CHECK(static_cast<int>(model.columns.size()) == ix.num_columns());
}

TEST_CASE("column names resolve through the index") {
  Instance inst = make_instance(1.0, 0.2, 2);
  finalize_big_m(inst, 400.0);
  auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);
  for (const auto& [name, col] : ix.by_name) {
    REQUIRE(col >= 0);
    REQUIRE(col < static_cast<int>(model.columns.size()));
    CHECK(model.columns[col].name == name);
  }
  CHECK(ix.by_name.size() == model.columns.size());
}

TEST_CASE("encoded greedy schedule satisfies every model row") {
  for (auto [l, h, r] : {std::tuple{0.5, 0.1, 1}, {1.0, 0.2, 2}, {2.5, 0.3, 2}}) {
    CAPTURE(l);
    CAPTURE(h);
    Instance inst = make_instance(l, h, r);
    Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
    finalize_big_m(inst, g.makespan);
    auto [model, ix] = build_model(inst.plan, inst.conflicts, inst.prob);
    Solution sol = encode_schedule(g, model, ix, inst.plan, inst.prob);
    CHECK(max_row_violation(model, sol) < 1e-6);

    // model objective of the encoding agrees with the arithmetic evaluation
    ObjectiveBreakdown ob = evaluate_objective(g, inst.plan, inst.prob);
    CHECK(sol.objective == doctest::Approx(ob.total).epsilon(1e-9));
  }
}

TEST_CASE("logistics distances are measured from the world-frame pickup points") {
  Instance inst = make_instance(0.5, 0.1, 1);
  // single brick centered at world x = 0; pickup at (1.5, -1.0)
  double d = brick_logistics_distance(inst.plan, inst.prob, 0, 0);
  CHECK(d == doctest::Approx(std::hypot(1.5, 1.0)).epsilon(1e-9));
}

TEST_CASE("adhesion distance is center to center") {
  Instance inst = make_instance(1.0, 0.2, 1);
  REQUIRE(inst.plan.adhesions.size() >= 2);
  const auto& a = inst.plan.adhesions[0];
  const auto& b = inst.plan.adhesions[1];
  CHECK(adhesion_distance(inst.plan, 0, 1) ==
        doctest::Approx(distance(a.center, b.center)).epsilon(1e-12));
}

TEST_CASE("big-M choice covers the incumbent horizon") {
  Instance inst = make_instance(1.0, 0.2, 2);
  auto [mt, mr] = choose_big_m(inst.plan, inst.prob, 250.0);
  CHECK(mt >= 250.0 + inst.prob.d_cure);
  CHECK(mr >= inst.plan.adhesions.size());
}

TEST_CASE("problem validation rejects inconsistent parameters") {
  ScheduleProblem p;
  p.n_robots = 2;
  p.pickup_points = {{1.5, -1.0}};  // too few pickup points
  CHECK_THROWS_AS(p.validate(4), ModelError);
  p.pickup_points = {{1.5, -1.0}, {-1.5, -1.0}};
  CHECK_NOTHROW(p.validate(4));
  p.d_cure = -1.0;
  CHECK_THROWS_AS(p.validate(4), ModelError);
  p.d_cure = 60.0;
  p.v_log = 0.0;
  CHECK_THROWS_AS(p.validate(4), ModelError);
}

TEST_CASE("curing anchor switch changes the deadline rows") {
  Instance inst = make_instance(1.0, 0.2, 1);
  finalize_big_m(inst, 400.0);
  auto base = build_model(inst.plan, inst.conflicts, inst.prob);

  Instance from_end = inst;
  from_end.prob.cure_from_end = true;
  auto alt = build_model(from_end.plan, from_end.conflicts, from_end.prob);

  // anchoring at mortar end adds the spray duration to the window, which
  // shows up as a d^A coefficient in the curing rows
  bool differs = false;
  REQUIRE(base.model.rows.size() == alt.model.rows.size());
  for (size_t i = 0; i < base.model.rows.size(); ++i)
    if (base.model.rows[i].coeffs != alt.model.rows[i].coeffs ||
        base.model.rows[i].rhs != alt.model.rows[i].rhs)
      differs = true;
  CHECK(differs);
}
