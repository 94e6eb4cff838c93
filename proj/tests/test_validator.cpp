#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "masonry/solver.hpp"
#include "masonry/validator.hpp"
#include "test_util.hpp"

using namespace masonry;
using namespace masonry::testutil;

namespace {

bool has_family(const ValidationReport& rep, ViolationFamily f) {
  return std::any_of(rep.violations.begin(), rep.violations.end(),
                     [f](const Violation& v) { return v.family == f; });
}

}  // namespace

TEST_CASE("clean greedy schedule passes with zero violations") {
  Instance inst = make_instance(1.5, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  ValidationReport rep = check_schedule(g, inst.plan, inst.conflicts, inst.prob);
  CHECK(rep.passed);
  CHECK(rep.violations.empty());
  CHECK(rep.objective.total > 0.0);
}

TEST_CASE("targeted mutations trigger the matching violation family") {
  Instance inst = make_instance(1.5, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);

  SUBCASE("negative start -> StartBound") {
    Schedule s = g;
    s.brick_starts.begin()->second = -5.0;
    ValidationReport rep = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
    CHECK_FALSE(rep.passed);
    CHECK(has_family(rep, ViolationFamily::StartBound));
  }

  SUBCASE("two bricks of one robot overlap -> RobotSeriality") {
    Schedule s = g;
    // move one brick on top of another brick of the same robot
    int first = -1;
    for (const auto& [i, k] : s.brick_assignments) {
      if (first >= 0 && k == s.brick_assignments.at(first)) {
        s.brick_starts[i] = s.brick_starts.at(first);
        break;
      }
      if (first < 0) first = i;
    }
    ValidationReport rep = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
    CHECK_FALSE(rep.passed);
    CHECK(has_family(rep, ViolationFamily::RobotSeriality));
  }

  SUBCASE("two adhesions overlap -> AdhesionSeriality") {
    Schedule s = g;
    REQUIRE(s.adhesion_order.size() >= 2);
    int a = s.adhesion_order[0], b = s.adhesion_order[1];
    s.adhesion_starts[b] = s.adhesion_starts.at(a);
    ValidationReport rep = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
    CHECK_FALSE(rep.passed);
    CHECK(has_family(rep, ViolationFamily::AdhesionSeriality));
  }

  SUBCASE("top brick before its mortar -> Precedence") {
    Schedule s = g;
    const auto& adh = inst.plan.adhesions.front();
    s.brick_starts[adh.top_brick] = s.adhesion_starts.at(adh.id) - 1.0;
    ValidationReport rep = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
    CHECK_FALSE(rep.passed);
    CHECK(has_family(rep, ViolationFamily::Precedence));
  }

  SUBCASE("conflicting pair forced concurrent -> Conflict") {
    Schedule s = g;
    REQUIRE_FALSE(inst.conflicts.brick_brick.empty());
    auto [i, j] = *inst.conflicts.brick_brick.begin();
    s.brick_starts[j] = s.brick_starts.at(i);
    // park them on different robots so seriality cannot mask the conflict
    s.brick_assignments[i] = 0;
    s.brick_assignments[j] = 1;
    ValidationReport rep = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
    CHECK_FALSE(rep.passed);
    CHECK(has_family(rep, ViolationFamily::Conflict));
  }

  SUBCASE("brick placed after the window -> Curing") {
    Schedule s = g;
    const auto& adh = inst.plan.adhesions.front();
    s.brick_starts[adh.top_brick] =
        s.adhesion_starts.at(adh.id) + inst.prob.d_cure + 1.0;
    ValidationReport rep = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
    CHECK_FALSE(rep.passed);
    CHECK(has_family(rep, ViolationFamily::Curing));
  }

  SUBCASE("adhesion duration without logistics share -> SuccessorStructure") {
    Schedule s = g;
    REQUIRE_FALSE(s.adhesion_durations.empty());
    s.adhesion_durations.begin()->second += 17.0;
    ValidationReport rep = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
    CHECK_FALSE(rep.passed);
    CHECK(has_family(rep, ViolationFamily::SuccessorStructure));
  }
}

TEST_CASE("objective evaluation on the single-brick wall is exact") {
  Instance inst = make_instance(0.5, 0.1, 1);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  ObjectiveBreakdown ob = evaluate_objective(g, inst.plan, inst.prob);
  // one brick, no adhesions: J = w_span * d_brick + w_brick_log * dist
  double dist = std::hypot(1.5, 1.0);
  CHECK(ob.c_max == doctest::Approx(inst.prob.d_brick));
  CHECK(ob.j_brick_log == doctest::Approx(dist));
  CHECK(ob.j_cure == doctest::Approx(0.0));
  CHECK(ob.j_adh_log == doctest::Approx(0.0));
  CHECK(ob.total == doctest::Approx(inst.prob.w_span * inst.prob.d_brick +
                                    inst.prob.w_brick_log * dist));
}

TEST_CASE("curing report windows bracket every placement") {
  Instance inst = make_instance(1.5, 0.2, 2);
  Schedule g = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  auto records = curing_report(g, inst.plan, inst.prob);
  REQUIRE(records.size() == inst.plan.adhesions.size());
  for (const auto& rec : records) {
    CAPTURE(rec.adhesion);
    CHECK(rec.window_open == doctest::Approx(rec.mortar_end));
    CHECK(rec.placed_end >= rec.window_open - 1e-9);
    CHECK(rec.placed_end <= rec.window_close + 1e-9);
    CHECK(rec.slack == doctest::Approx(rec.window_close - rec.placed_end));
  }
}

TEST_CASE("oracle equals hand-computed optimum on the single-brick wall") {
  Instance inst = make_instance(0.5, 0.1, 1);
  Schedule best = brute_force_oracle(inst.plan, inst.conflicts, inst.prob);
  double dist = std::hypot(1.5, 1.0);
  double expect = inst.prob.w_span * inst.prob.d_brick + inst.prob.w_brick_log * dist;
  CHECK(evaluate_objective(best, inst.plan, inst.prob).total ==
        doctest::Approx(expect).epsilon(1e-9));
  CHECK(brute_force_oracle_objective(inst.plan, inst.conflicts, inst.prob) ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("oracle refuses instances beyond its limits") {
  Instance inst = make_instance(2.5, 0.3, 2);  // 16 bricks
  CHECK_THROWS_AS(brute_force_oracle(inst.plan, inst.conflicts, inst.prob),
                  SolverError);
}

TEST_CASE("violation family names are stable") {
  CHECK(std::string(to_string(ViolationFamily::StartBound)) == "StartBound");
  CHECK(std::string(to_string(ViolationFamily::Curing)) == "Curing");
}
