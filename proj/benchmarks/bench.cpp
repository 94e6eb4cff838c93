#include <benchmark/benchmark.h>

#include <sstream>

#include "masonry/lp.hpp"
#include "masonry/model.hpp"
#include "masonry/mps.hpp"
#include "masonry/solver.hpp"
#include "masonry/wallplan.hpp"

using namespace masonry;

namespace {

ScheduleProblem default_problem(int n_robots) {
  ScheduleProblem prob;
  prob.n_robots = n_robots;
  for (int k = 0; k < n_robots; ++k)
    prob.pickup_points.push_back({k % 2 == 0 ? 1.5 : -1.5, -1.0});
  return prob;
}

}  // namespace

static void BM_Layout(benchmark::State& state) {
  WallSpec wall{2.5, 0.3, 0.3};
  BrickSpec brick{0.5, 0.1, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(make_wall_plan(wall, brick));
}
BENCHMARK(BM_Layout);

static void BM_Conflicts(benchmark::State& state) {
  WallPlan plan = make_wall_plan(WallSpec{2.5, 0.3, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(compute_conflicts(plan, 0.8));
}
BENCHMARK(BM_Conflicts);

static void BM_BuildModel(benchmark::State& state) {
  WallPlan plan = make_wall_plan(WallSpec{2.5, 0.3, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  ScheduleProblem prob = default_problem(2);
  ConflictSets conflicts = compute_conflicts(plan, prob.clearance);
  for (auto _ : state) benchmark::DoNotOptimize(build_model(plan, conflicts, prob));
}
BENCHMARK(BM_BuildModel);

static void BM_Greedy(benchmark::State& state) {
  WallPlan plan = make_wall_plan(WallSpec{2.5, 0.3, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  ScheduleProblem prob = default_problem(2);
  ConflictSets conflicts = compute_conflicts(plan, prob.clearance);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_schedule(plan, conflicts, prob));
}
BENCHMARK(BM_Greedy);

static void BM_RootLp(benchmark::State& state) {
  // the 5-brick instance; the 16-brick root LP is branch-and-bound territory
  WallPlan plan = make_wall_plan(WallSpec{1.0, 0.2, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  ScheduleProblem prob = default_problem(2);
  ConflictSets conflicts = compute_conflicts(plan, prob.clearance);
  Schedule g = greedy_schedule(plan, conflicts, prob);
  auto [mt, mr] = choose_big_m(plan, prob, g.makespan);
  prob.big_m_time = mt;
  prob.big_m_rank = mr;
  auto built = build_model(plan, conflicts, prob);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(built.model));
}
BENCHMARK(BM_RootLp);

static void BM_MpsExport(benchmark::State& state) {
  WallPlan plan = make_wall_plan(WallSpec{2.5, 0.3, 0.3}, BrickSpec{0.5, 0.1, 0.3});
  ScheduleProblem prob = default_problem(2);
  ConflictSets conflicts = compute_conflicts(plan, prob.clearance);
  auto built = build_model(plan, conflicts, prob);
  for (auto _ : state) {
    std::ostringstream out;
    benchmark::DoNotOptimize(export_mps(built.model, out));
  }
}
BENCHMARK(BM_MpsExport);

BENCHMARK_MAIN();
