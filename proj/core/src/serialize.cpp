#include "masonry/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace masonry {

using json = nlohmann::ordered_json;

namespace {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "?";
}

SolveStatus status_from_name(const std::string& s) {
  if (s == "optimal") return SolveStatus::Optimal;
  if (s == "feasible") return SolveStatus::Feasible;
  if (s == "infeasible") return SolveStatus::Infeasible;
  if (s == "time_limit") return SolveStatus::TimeLimit;
  throw ConfigError("unknown solver status '" + s + "'");
}

double require_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(where + " must contain numeric field '" + key + "'");
  return j[key].get<double>();
}

std::pair<double, double> parse_xy(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + " must be a two-element numeric array [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

SimConfig MissionConfig::sim_with_homes() const {
  SimConfig c = sim;
  c.clearance = prob.clearance;
  c.home_positions = prob.pickup_points;
  c.home_positions.push_back(adhesion_home);
  return c;
}

MissionConfig load_config(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  MissionConfig cfg;

  if (!j.contains("wall") || !j["wall"].is_object())
    throw ConfigError("config must contain a 'wall' object");
  const json& w = j["wall"];
  if (w.contains("stl_path")) {
    if (!w["stl_path"].is_string()) throw ConfigError("wall.stl_path must be a string");
    cfg.stl_path = w["stl_path"].get<std::string>();
  } else {
    cfg.wall.length = require_number(w, "length", "wall");
    cfg.wall.height = require_number(w, "height", "wall");
    cfg.wall.width = require_number(w, "thickness", "wall");
  }

  if (!j.contains("brick") || !j["brick"].is_object())
    throw ConfigError("config must contain a 'brick' object");
  const json& b = j["brick"];
  cfg.brick.full_width = require_number(b, "full_width", "brick");
  cfg.brick.height = require_number(b, "height", "brick");
  cfg.brick.thickness = require_number(b, "thickness", "brick");

  if (!j.contains("robots") || !j["robots"].is_object())
    throw ConfigError("config must contain a 'robots' object");
  const json& r = j["robots"];
  if (!r.contains("pickups") || !r["pickups"].is_array() || r["pickups"].empty())
    throw ConfigError("robots.pickups must be a non-empty array of [x, y] points");
  cfg.prob.pickup_points.clear();
  for (const auto& p : r["pickups"]) cfg.prob.pickup_points.push_back(parse_xy(p, "robots.pickups entry"));
  cfg.prob.n_robots = static_cast<int>(cfg.prob.pickup_points.size());
  if (r.contains("adhesion_home")) cfg.adhesion_home = parse_xy(r["adhesion_home"], "robots.adhesion_home");

  if (j.contains("durations")) {
    const json& d = j["durations"];
    cfg.prob.d_brick = require_number(d, "brick", "durations");
    cfg.prob.d_spray = require_number(d, "spray", "durations");
    cfg.prob.d_cure = require_number(d, "curing", "durations");
  }
  if (j.contains("v_log")) cfg.prob.v_log = require_number(j, "v_log", "config");
  if (j.contains("clearance")) cfg.prob.clearance = require_number(j, "clearance", "config");

  if (j.contains("weights")) {
    const json& wt = j["weights"];
    cfg.prob.w_span = require_number(wt, "span", "weights");
    cfg.prob.w_brick_log = require_number(wt, "brick_log", "weights");
    cfg.prob.w_cure = require_number(wt, "cur", "weights");
    cfg.prob.w_adh_log = require_number(wt, "adh_log", "weights");
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (s.contains("backend")) {
      cfg.solver_backend = s["backend"].get<std::string>();
      if (cfg.solver_backend != "builtin" && cfg.solver_backend != "export")
        throw ConfigError("solver.backend must be 'builtin' or 'export'");
    }
    if (s.contains("time_limit")) cfg.solve.time_limit = require_number(s, "time_limit", "solver");
    if (s.contains("gap")) cfg.solve.gap_tolerance = require_number(s, "gap", "solver");
    if (s.contains("seed"))
      cfg.solve.deterministic_seed = static_cast<unsigned>(require_number(s, "seed", "solver"));
  }

  if (j.contains("sim")) {
    const json& s = j["sim"];
    if (s.contains("h_cruise")) cfg.sim.h_cruise = require_number(s, "h_cruise", "sim");
    if (s.contains("v_travel")) cfg.sim.v_travel = require_number(s, "v_travel", "sim");
    if (s.contains("v_vertical")) cfg.sim.v_vertical = require_number(s, "v_vertical", "sim");
    if (s.contains("timestep")) cfg.sim.timestep = require_number(s, "timestep", "sim");
    if (s.contains("stabilize_pause"))
      cfg.sim.stabilize_pause = require_number(s, "stabilize_pause", "sim");
  }

  if (j.contains("flags")) {
    const json& f = j["flags"];
    if (f.contains("cure_from_end")) {
      if (!f["cure_from_end"].is_boolean())
        throw ConfigError("flags.cure_from_end must be a boolean");
      cfg.prob.cure_from_end = f["cure_from_end"].get<bool>();
    }
  }

  return cfg;
}

MissionConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return load_config(in);
}

WallPlan plan_from_config(const MissionConfig& cfg) {
  WallSpec wall = cfg.wall;
  if (!cfg.stl_path.empty()) {
    std::ifstream in(cfg.stl_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open STL file " + cfg.stl_path);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    wall = ingest_mesh_bounds(bytes.str());
  }
  return make_wall_plan(wall, cfg.brick);
}

void write_plan(const WallPlan& plan, const ConflictSets& conflicts, std::ostream& out) {
  json j;
  j["wall"] = {{"length", plan.wall.length},
               {"height", plan.wall.height},
               {"thickness", plan.wall.width}};
  j["brick_spec"] = {{"full_width", plan.brick.full_width},
                     {"height", plan.brick.height},
                     {"thickness", plan.brick.thickness}};
  j["bricks"] = json::array();
  for (const auto& b : plan.bricks)
    j["bricks"].push_back({{"id", b.id},
                           {"kind", b.kind == BrickKind::Full ? "full" : "half"},
                           {"row", b.row},
                           {"x_start", b.x_start},
                           {"x_end", b.x_end},
                           {"z_base", b.z_base}});
  j["adhesions"] = json::array();
  for (const auto& a : plan.adhesions)
    j["adhesions"].push_back({{"id", a.id},
                              {"x_start", a.x_start},
                              {"width", a.width},
                              {"z", a.z},
                              {"top_brick", a.top_brick},
                              {"bottom_brick", a.bottom_brick}});
  j["dependencies"] = json::array();
  for (const auto& [after, before] : plan.graph.edges)
    j["dependencies"].push_back({{"after", {after.kind == NodeKind::Brick ? "B" : "A", after.id}},
                                 {"before", {before.kind == NodeKind::Brick ? "B" : "A", before.id}}});
  j["conflicts"] = json::object();
  j["conflicts"]["brick_brick"] = json::array();
  for (const auto& [i, k] : conflicts.brick_brick)
    j["conflicts"]["brick_brick"].push_back({i, k});
  j["conflicts"]["brick_adhesion"] = json::array();
  for (const auto& [b, a] : conflicts.brick_adhesion)
    j["conflicts"]["brick_adhesion"].push_back({b, a});
  out << j.dump(2) << "\n";
}

std::pair<WallPlan, ConflictSets> read_plan(std::istream& in) {
  json j = json::parse(in);
  WallSpec wall{j["wall"]["length"], j["wall"]["height"], j["wall"]["thickness"]};
  BrickSpec brick{j["brick_spec"]["full_width"], j["brick_spec"]["height"],
                  j["brick_spec"]["thickness"]};
  // regenerate and cross-check against the file; the file is authoritative
  // only about the instance identity, not the derived structures
  WallPlan plan = make_wall_plan(wall, brick);
  if (plan.bricks.size() != j["bricks"].size() || plan.adhesions.size() != j["adhesions"].size())
    throw ConfigError("plan file does not match the regenerated layout");
  ConflictSets conflicts;
  for (const auto& p : j["conflicts"]["brick_brick"])
    conflicts.brick_brick.insert({p[0].get<int>(), p[1].get<int>()});
  for (const auto& p : j["conflicts"]["brick_adhesion"])
    conflicts.brick_adhesion.insert({p[0].get<int>(), p[1].get<int>()});
  return {std::move(plan), std::move(conflicts)};
}

void write_schedule(const Schedule& s, const Solution& sol, std::ostream& out) {
  json j;
  j["solver"] = {{"status", status_name(sol.status)},
                 {"objective", sol.objective},
                 {"best_bound", sol.best_bound},
                 {"gap", sol.objective != 0.0
                             ? std::abs(sol.objective - sol.best_bound) / std::abs(sol.objective)
                             : std::abs(sol.objective - sol.best_bound)},
                 {"nodes", sol.node_count}};
  j["assignments"] = json::object();
  for (const auto& [id, robot] : s.brick_assignments)
    j["assignments"][std::to_string(id)] = robot;
  j["brick_starts"] = json::object();
  for (const auto& [id, t] : s.brick_starts) j["brick_starts"][std::to_string(id)] = t;
  j["adhesion_starts"] = json::object();
  for (const auto& [id, t] : s.adhesion_starts) j["adhesion_starts"][std::to_string(id)] = t;
  j["adhesion_durations"] = json::object();
  for (const auto& [id, d] : s.adhesion_durations)
    j["adhesion_durations"][std::to_string(id)] = d;
  j["adhesion_order"] = s.adhesion_order;
  j["makespan"] = s.makespan;
  j["objective_breakdown"] = {{"c_max", s.objective_breakdown.c_max},
                              {"brick_logistics", s.objective_breakdown.j_brick_log},
                              {"curing", s.objective_breakdown.j_cure},
                              {"adhesion_logistics", s.objective_breakdown.j_adh_log},
                              {"total", s.objective_breakdown.total}};
  out << j.dump(2) << "\n";
}

std::pair<Schedule, Solution> read_schedule(std::istream& in) {
  json j = json::parse(in);
  Schedule s;
  for (const auto& [key, v] : j["assignments"].items())
    s.brick_assignments[std::stoi(key)] = v.get<int>();
  for (const auto& [key, v] : j["brick_starts"].items())
    s.brick_starts[std::stoi(key)] = v.get<double>();
  for (const auto& [key, v] : j["adhesion_starts"].items())
    s.adhesion_starts[std::stoi(key)] = v.get<double>();
  for (const auto& [key, v] : j["adhesion_durations"].items())
    s.adhesion_durations[std::stoi(key)] = v.get<double>();
  s.adhesion_order = j["adhesion_order"].get<std::vector<int>>();
  s.makespan = j["makespan"].get<double>();
  const json& ob = j["objective_breakdown"];
  s.objective_breakdown.c_max = ob["c_max"].get<double>();
  s.objective_breakdown.j_brick_log = ob["brick_logistics"].get<double>();
  s.objective_breakdown.j_cure = ob["curing"].get<double>();
  s.objective_breakdown.j_adh_log = ob["adhesion_logistics"].get<double>();
  s.objective_breakdown.total = ob["total"].get<double>();
  Solution sol;
  sol.status = status_from_name(j["solver"]["status"]);
  sol.objective = j["solver"]["objective"].get<double>();
  sol.best_bound = j["solver"]["best_bound"].get<double>();
  sol.node_count = j["solver"]["nodes"].get<long>();
  return {std::move(s), std::move(sol)};
}

void write_report(const ValidationReport& report, std::ostream& out) {
  json j;
  j["passed"] = report.passed;
  j["objective"] = {{"c_max", report.objective.c_max},
                    {"brick_logistics", report.objective.j_brick_log},
                    {"curing", report.objective.j_cure},
                    {"adhesion_logistics", report.objective.j_adh_log},
                    {"total", report.objective.total}};
  j["violations"] = json::array();
  for (const auto& v : report.violations)
    j["violations"].push_back({{"family", to_string(v.family)},
                               {"tasks", v.task_ids},
                               {"measured", v.measured},
                               {"bound", v.bound},
                               {"detail", v.detail}});
  out << j.dump(2) << "\n";
}

void write_positions_csv(const SimTrace& trace, std::ostream& out) {
  out << "t,uav,x,y,z\n";
  for (size_t step = 0; step < trace.times.size(); ++step)
    for (size_t u = 0; u < trace.positions.size(); ++u) {
      const Vec3& p = trace.positions[u][step];
      out << csv_num(trace.times[step]) << "," << u << "," << csv_num(p[0]) << ","
          << csv_num(p[1]) << "," << csv_num(p[2]) << "\n";
    }
}

void write_min_distance_csv(const SimTrace& trace, std::ostream& out) {
  out << "t,dmin,dmin_construction\n";
  for (size_t step = 0; step < trace.times.size(); ++step) {
    out << csv_num(trace.times[step]) << "," << csv_num(trace.min_pairwise_distance[step])
        << ",";
    double dc = trace.min_construction_distance[step];
    if (std::isfinite(dc)) out << csv_num(dc);
    out << "\n";
  }
}

void write_events_log(const SimTrace& trace, std::ostream& out) {
  for (const auto& e : trace.events)
    out << csv_num(e.time) << " uav" << e.uav << " " << e.description << "\n";
}

std::string make_summary(const MissionConfig& cfg, const WallPlan& plan, const Schedule& s,
                         const Solution& sol, const std::vector<CuringRecord>& curing,
                         const SimTrace* trace) {
  std::ostringstream os;
  os << "mission summary\n";
  os << "  wall: " << csv_num(plan.wall.length) << " x " << csv_num(plan.wall.height)
     << " m, brick " << csv_num(plan.brick.full_width) << " x " << csv_num(plan.brick.height)
     << " m\n";
  os << "  tasks: " << plan.bricks.size() << " bricks, " << plan.adhesions.size()
     << " adhesions, " << cfg.prob.n_robots << " pick-place UAVs + 1 adhesion UAV\n";
  os << "  weights: span " << csv_num(cfg.prob.w_span) << ", brick-log "
     << csv_num(cfg.prob.w_brick_log) << ", curing " << csv_num(cfg.prob.w_cure)
     << ", adh-log " << csv_num(cfg.prob.w_adh_log) << "\n";
  os << "  solver: " << status_name(sol.status) << ", objective " << csv_num(sol.objective)
     << ", bound " << csv_num(sol.best_bound) << ", nodes " << sol.node_count << "\n";
  os << "  makespan: " << csv_num(s.makespan) << " s\n";
  os << "  objective breakdown: c_max " << csv_num(s.objective_breakdown.c_max)
     << ", brick logistics " << csv_num(s.objective_breakdown.j_brick_log) << ", curing "
     << csv_num(s.objective_breakdown.j_cure) << ", adhesion logistics "
     << csv_num(s.objective_breakdown.j_adh_log) << ", total "
     << csv_num(s.objective_breakdown.total) << "\n";

  if (!curing.empty()) {
    std::vector<double> slacks;
    for (const auto& c : curing) slacks.push_back(c.slack);
    std::sort(slacks.begin(), slacks.end());
    double median = slacks.size() % 2 == 1
                        ? slacks[slacks.size() / 2]
                        : 0.5 * (slacks[slacks.size() / 2 - 1] + slacks[slacks.size() / 2]);
    os << "  curing slack: min " << csv_num(slacks.front()) << " s, median "
       << csv_num(median) << " s over " << slacks.size() << " placements\n";
  }

  if (trace && !trace->min_pairwise_distance.empty()) {
    double dmin = trace->min_pairwise_distance.front();
    double cmin = std::numeric_limits<double>::infinity();
    for (double d : trace->min_pairwise_distance) dmin = std::min(dmin, d);
    for (double d : trace->min_construction_distance) cmin = std::min(cmin, d);
    os << "  min clearance: " << csv_num(dmin) << " m overall";
    if (std::isfinite(cmin)) os << ", " << csv_num(cmin) << " m during construction phases";
    os << " (r_c " << csv_num(cfg.prob.clearance) << " m)\n";
  }
  return os.str();
}

}  // namespace masonry
