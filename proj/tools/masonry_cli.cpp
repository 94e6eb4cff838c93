#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "masonry/model.hpp"
#include "masonry/mps.hpp"
#include "masonry/serialize.hpp"
#include "masonry/simulator.hpp"
#include "masonry/solver.hpp"
#include "masonry/svg.hpp"
#include "masonry/validator.hpp"

namespace fs = std::filesystem;
using namespace masonry;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  double time_limit = -1.0;
  double gap = -1.0;
  long seed = -1;
};

MissionConfig load(const CommonArgs& args) {
  std::string path = args.config_path;
  if (path.empty())
    if (const char* env = std::getenv("MASONRY_CONFIG")) path = env;
  if (path.empty())
    throw ConfigError("no config file given (use --config or MASONRY_CONFIG)");
  MissionConfig cfg = load_config_file(path);
  if (args.time_limit >= 0) cfg.solve.time_limit = args.time_limit;
  if (args.gap >= 0) cfg.solve.gap_tolerance = args.gap;
  if (args.seed >= 0) cfg.solve.deterministic_seed = static_cast<unsigned>(args.seed);
  return cfg;
}

void write_file(const fs::path& path, const std::string& what,
                const std::function<void(std::ostream&)>& emit) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  emit(out);
  std::cout << "wrote " << what << ": " << path.string() << "\n";
}

struct SolvedInstance {
  WallPlan plan;
  ConflictSets conflicts;
  ScheduleProblem prob;
  ModelBuild build;
  Schedule greedy;
};

SolvedInstance prepare(const MissionConfig& cfg) {
  SolvedInstance inst;
  inst.plan = plan_from_config(cfg);
  inst.prob = cfg.prob;
  inst.conflicts = compute_conflicts(inst.plan, inst.prob.clearance);
  inst.greedy = greedy_schedule(inst.plan, inst.conflicts, inst.prob);
  auto [mt, mr] = choose_big_m(inst.plan, inst.prob, inst.greedy.makespan);
  inst.prob.big_m_time = mt;
  inst.prob.big_m_rank = mr;
  inst.build = build_model(inst.plan, inst.conflicts, inst.prob);
  return inst;
}

int cmd_plan(const CommonArgs& args) {
  MissionConfig cfg = load(args);
  WallPlan plan = plan_from_config(cfg);
  ConflictSets conflicts = compute_conflicts(plan, cfg.prob.clearance);
  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "plan.json", "plan",
             [&](std::ostream& o) { write_plan(plan, conflicts, o); });
  write_file(fs::path(args.out_dir) / "wall.svg", "wall elevation",
             [&](std::ostream& o) { write_wall_svg(plan, o); });
  std::cout << plan.bricks.size() << " bricks, " << plan.adhesions.size() << " adhesions\n";
  return 0;
}

int cmd_schedule(const CommonArgs& args) {
  MissionConfig cfg = load(args);
  SolvedInstance inst = prepare(cfg);
  fs::create_directories(args.out_dir);

  if (cfg.solver_backend == "export") {
    write_file(fs::path(args.out_dir) / "model.mps", "MPS model",
               [&](std::ostream& o) { export_mps(inst.build.model, o); });
    return 0;
  }

  Solution incumbent =
      encode_schedule(inst.greedy, inst.build.model, inst.build.index, inst.plan, inst.prob);
  Solution sol = solve_bb(inst.build.model, &incumbent, cfg.solve);
  if (sol.status == SolveStatus::Infeasible) {
    std::cerr << "solver reported infeasible\n";
    return 1;
  }
  Schedule s = extract_schedule(sol, inst.build.index, inst.plan, inst.prob);
  write_file(fs::path(args.out_dir) / "schedule.json", "schedule",
             [&](std::ostream& o) { write_schedule(s, sol, o); });
  write_file(fs::path(args.out_dir) / "gantt.svg", "Gantt chart",
             [&](std::ostream& o) { write_gantt_svg(s, inst.plan, inst.prob, o); });
  std::cout << "makespan " << s.makespan << " s, objective " << sol.objective << "\n";
  return 0;
}

int cmd_validate(const CommonArgs& args, const std::string& schedule_path) {
  MissionConfig cfg = load(args);
  WallPlan plan = plan_from_config(cfg);
  ConflictSets conflicts = compute_conflicts(plan, cfg.prob.clearance);
  std::ifstream in(schedule_path);
  if (!in) throw ConfigError("cannot open schedule file " + schedule_path);
  auto [s, sol] = read_schedule(in);
  ValidationReport report = check_schedule(s, plan, conflicts, cfg.prob);
  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "report.json", "validation report",
             [&](std::ostream& o) { write_report(report, o); });
  for (const auto& v : report.violations)
    std::cout << "violation [" << to_string(v.family) << "] " << v.detail << "\n";
  std::cout << (report.passed ? "PASSED" : "FAILED") << "\n";
  return report.passed ? 0 : 1;
}

int cmd_simulate(const CommonArgs& args, const std::string& schedule_path) {
  MissionConfig cfg = load(args);
  WallPlan plan = plan_from_config(cfg);
  std::ifstream in(schedule_path);
  if (!in) throw ConfigError("cannot open schedule file " + schedule_path);
  auto [s, sol] = read_schedule(in);
  SimConfig sim = cfg.sim_with_homes();
  auto timelines = plan_timelines(s, plan, cfg.prob, sim);
  timelines = resolve_logistics_conflicts(std::move(timelines), sim);
  SimTrace trace = run_mission(timelines, sim);
  trace.curing = curing_report(s, plan, cfg.prob);
  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "positions.csv", "positions trace",
             [&](std::ostream& o) { write_positions_csv(trace, o); });
  write_file(fs::path(args.out_dir) / "min_distance.csv", "min-distance trace",
             [&](std::ostream& o) { write_min_distance_csv(trace, o); });
  write_file(fs::path(args.out_dir) / "events.log", "event log",
             [&](std::ostream& o) { write_events_log(trace, o); });
  write_file(fs::path(args.out_dir) / "min_distance.svg", "min-distance plot",
             [&](std::ostream& o) { write_min_distance_svg(trace, cfg.prob.clearance, o); });
  return 0;
}

int cmd_report(const CommonArgs& args, const std::string& schedule_path, bool with_sim) {
  MissionConfig cfg = load(args);
  WallPlan plan = plan_from_config(cfg);
  std::ifstream in(schedule_path);
  if (!in) throw ConfigError("cannot open schedule file " + schedule_path);
  auto [s, sol] = read_schedule(in);
  auto curing = curing_report(s, plan, cfg.prob);
  SimTrace trace;
  SimTrace* trace_ptr = nullptr;
  if (with_sim) {
    SimConfig sim = cfg.sim_with_homes();
    auto timelines = plan_timelines(s, plan, cfg.prob, sim);
    timelines = resolve_logistics_conflicts(std::move(timelines), sim);
    trace = run_mission(timelines, sim);
    trace_ptr = &trace;
  }
  std::string summary = make_summary(cfg, plan, s, sol, curing, trace_ptr);
  std::cout << summary;
  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "summary.txt", "summary",
             [&](std::ostream& o) { o << summary; });
  return 0;
}

int cmd_export_mps(const CommonArgs& args, const std::string& out_path) {
  MissionConfig cfg = load(args);
  SolvedInstance inst = prepare(cfg);
  write_file(out_path, "MPS model", [&](std::ostream& o) { export_mps(inst.build.model, o); });
  return 0;
}

int cmd_import_sol(const CommonArgs& args, const std::string& sol_path) {
  MissionConfig cfg = load(args);
  SolvedInstance inst = prepare(cfg);
  std::ifstream in(sol_path);
  if (!in) throw ConfigError("cannot open solution file " + sol_path);
  ImportedSolution imported = import_solution(in, inst.build.model);
  for (const auto& w : imported.warnings)
    std::cerr << "warning: unknown variable " << w << "\n";
  Schedule s = extract_schedule(imported.solution, inst.build.index, inst.plan, inst.prob);
  ValidationReport report = check_schedule(s, inst.plan, inst.conflicts, inst.prob);
  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "schedule.json", "schedule",
             [&](std::ostream& o) { write_schedule(s, imported.solution, o); });
  write_file(fs::path(args.out_dir) / "report.json", "validation report",
             [&](std::ostream& o) { write_report(report, o); });
  std::cout << (report.passed ? "imported solution is feasible"
                              : "imported solution violates constraints")
            << ", makespan " << s.makespan << " s\n";
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV masonry construction scheduling toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string schedule_path, sol_path, mps_path;
  bool with_sim = false;

  auto add_common = [&](CLI::App* sub, bool solver_flags = false) {
    sub->add_option("--config,-c", args.config_path, "mission config file (JSON)");
    sub->add_option("--out-dir,-o", args.out_dir, "output directory");
    if (solver_flags) {
      sub->add_option("--time-limit", args.time_limit, "solver time limit [s]");
      sub->add_option("--gap", args.gap, "relative MIP gap tolerance");
      sub->add_option("--seed", args.seed, "deterministic seed");
    }
  };

  auto* plan = app.add_subcommand("plan", "generate the wall plan and elevation figure");
  add_common(plan);
  auto* sched = app.add_subcommand("schedule", "solve (or export) the scheduling problem");
  add_common(sched, true);
  auto* val = app.add_subcommand("validate", "re-check a schedule against all constraints");
  add_common(val);
  val->add_option("--schedule,-s", schedule_path, "schedule file")->required();
  auto* sim = app.add_subcommand("simulate", "replay a schedule kinematically");
  add_common(sim);
  sim->add_option("--schedule,-s", schedule_path, "schedule file")->required();
  auto* rep = app.add_subcommand("report", "consolidated mission summary");
  add_common(rep);
  rep->add_option("--schedule,-s", schedule_path, "schedule file")->required();
  rep->add_flag("--sim", with_sim, "include simulated clearance in the summary");
  auto* exp = app.add_subcommand("export-mps", "write the model in MPS format");
  add_common(exp, true);
  exp->add_option("--out", mps_path, "output MPS path")->required();
  auto* imp = app.add_subcommand("import-sol", "import an external solver solution");
  add_common(imp);
  imp->add_option("--sol", sol_path, "solution file (name value lines)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(args);
    if (sched->parsed()) return cmd_schedule(args);
    if (val->parsed()) return cmd_validate(args, schedule_path);
    if (sim->parsed()) return cmd_simulate(args, schedule_path);
    if (rep->parsed()) return cmd_report(args, schedule_path, with_sim);
    if (exp->parsed()) return cmd_export_mps(args, mps_path);
    if (imp->parsed()) return cmd_import_sol(args, sol_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
