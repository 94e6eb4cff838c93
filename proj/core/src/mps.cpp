#include "masonry/mps.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace masonry {

namespace {

constexpr double kInfBound = 1e29;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

size_t export_mps(const MilpModel& model, std::ostream& out) {
  std::ostringstream os;
  os << "NAME          " << model.name << "\n";
  os << "ROWS\n";
  os << " N  COST\n";
  for (const auto& row : model.rows) {
    char rel = row.relation == Relation::LessEqual ? 'L'
               : row.relation == Relation::Equal   ? 'E'
                                                   : 'G';
    os << " " << rel << "  " << row.name << "\n";
  }

  // column-major view of the rows
  std::vector<std::vector<std::pair<std::string, double>>> entries(model.columns.size());
  for (const auto& row : model.rows)
    for (const auto& [c, v] : row.coeffs) entries[c].emplace_back(row.name, v);

  os << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (size_t c = 0; c < model.columns.size(); ++c) {
    const Column& col = model.columns[c];
    bool want_int = col.kind != VarKind::Continuous;
    if (want_int != in_int) {
      os << "    MARKER" << marker++ << "  'MARKER'  " << (want_int ? "'INTORG'" : "'INTEND'")
         << "\n";
      in_int = want_int;
    }
    if (model.objective[c] != 0.0)
      os << "    " << col.name << "  COST  " << num(model.objective[c]) << "\n";
    for (const auto& [rname, v] : entries[c])
      os << "    " << col.name << "  " << rname << "  " << num(v) << "\n";
    if (model.objective[c] == 0.0 && entries[c].empty())
      os << "    " << col.name << "  COST  0\n";  // keep the column declared
  }
  if (in_int) os << "    MARKER" << marker++ << "  'MARKER'  'INTEND'\n";

  os << "RHS\n";
  for (const auto& row : model.rows)
    if (row.rhs != 0.0) os << "    RHS  " << row.name << "  " << num(row.rhs) << "\n";
  if (model.objective_constant != 0.0)
    os << "    RHS  COST  " << num(-model.objective_constant) << "\n";

  os << "BOUNDS\n";
  for (const auto& col : model.columns) {
    if (col.kind == VarKind::Binary && col.lb == 0.0 && col.ub == 1.0) {
      os << " BV BND  " << col.name << "\n";
      continue;
    }
    if (col.lb == col.ub) {
      os << " FX BND  " << col.name << "  " << num(col.lb) << "\n";
      continue;
    }
    if (col.lb != 0.0) os << " LO BND  " << col.name << "  " << num(col.lb) << "\n";
    if (col.ub < kInfBound) os << " UP BND  " << col.name << "  " << num(col.ub) << "\n";
  }
  os << "ENDATA\n";

  std::string text = os.str();
  out << text;
  return text.size();
}

MilpModel parse_mps(std::istream& in) {
  MilpModel m;
  std::map<std::string, int> row_by_name;
  std::map<std::string, int> col_by_name;
  enum Section { None, Rows, Columns, Rhs, Ranges, Bounds } section = None;
  bool in_int = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ls(line);
    if (line[0] != ' ' && line[0] != '\t') {
      std::string head;
      ls >> head;
      if (head == "NAME") { ls >> m.name; continue; }
      if (head == "ROWS") { section = Rows; continue; }
      if (head == "COLUMNS") { section = Columns; continue; }
      if (head == "RHS") { section = Rhs; continue; }
      if (head == "RANGES") { section = Ranges; continue; }
      if (head == "BOUNDS") { section = Bounds; continue; }
      if (head == "ENDATA") break;
      throw ModelError("MPS: unknown section '" + head + "'");
    }
    switch (section) {
      case Rows: {
        std::string rel, name;
        ls >> rel >> name;
        if (rel == "N") break;  // objective row; ignore its name, we use COST
        Row row;
        row.name = name;
        row.relation = rel == "L" ? Relation::LessEqual
                       : rel == "E" ? Relation::Equal
                                    : Relation::GreaterEqual;
        row_by_name[name] = static_cast<int>(m.rows.size());
        m.rows.push_back(std::move(row));
        break;
      }
      case Columns: {
        std::string col, f1;
        ls >> col >> f1;
        if (f1 == "'MARKER'") {
          std::string kind;
          ls >> kind;
          in_int = kind == "'INTORG'";
          break;
        }
        int c;
        auto it = col_by_name.find(col);
        if (it == col_by_name.end()) {
          c = m.add_column(0.0, in_int ? 1.0 : 1e30, in_int ? VarKind::Integer : VarKind::Continuous,
                           col);
          col_by_name[col] = c;
        } else {
          c = it->second;
        }
        std::string rname = f1;
        double v;
        while (true) {
          if (!(ls >> v)) throw ModelError("MPS: malformed COLUMNS line: " + line);
          if (rname == "COST") {
            m.objective[c] = v;
          } else {
            auto rit = row_by_name.find(rname);
            if (rit == row_by_name.end()) throw ModelError("MPS: unknown row " + rname);
            if (v != 0.0) m.rows[rit->second].coeffs.emplace_back(c, v);
          }
          if (!(ls >> rname)) break;
        }
        break;
      }
      case Rhs: {
        std::string tag, rname;
        double v;
        ls >> tag;
        while (ls >> rname >> v) {
          if (rname == "COST") {
            m.objective_constant = -v;
          } else {
            auto rit = row_by_name.find(rname);
            if (rit == row_by_name.end()) throw ModelError("MPS: unknown RHS row " + rname);
            m.rows[rit->second].rhs = v;
          }
        }
        break;
      }
      case Ranges:
        throw ModelError("MPS: RANGES section is not supported");
      case Bounds: {
        std::string kind, tag, col;
        ls >> kind >> tag >> col;
        auto it = col_by_name.find(col);
        if (it == col_by_name.end()) throw ModelError("MPS: bound on unknown column " + col);
        Column& c = m.columns[it->second];
        double v = 0.0;
        if (kind == "UP" || kind == "LO" || kind == "FX" || kind == "UI" || kind == "LI") {
          if (!(ls >> v)) throw ModelError("MPS: malformed BOUNDS line: " + line);
        }
        if (kind == "UP" || kind == "UI") c.ub = v;
        else if (kind == "LO" || kind == "LI") c.lb = v;
        else if (kind == "FX") { c.lb = v; c.ub = v; }
        else if (kind == "BV") { c.lb = 0.0; c.ub = 1.0; c.kind = VarKind::Binary; }
        else if (kind == "MI") c.lb = -1e30;
        else if (kind == "PL") c.ub = 1e30;
        else throw ModelError("MPS: unsupported bound type " + kind);
        break;
      }
      case None:
        throw ModelError("MPS: data before any section header");
    }
  }
  return m;
}

ImportedSolution import_solution(std::istream& in, const MilpModel& model) {
  std::map<std::string, int> col_by_name;
  for (size_t c = 0; c < model.columns.size(); ++c)
    col_by_name[model.columns[c].name] = static_cast<int>(c);

  std::vector<double> values(model.columns.size(), 0.0);
  std::vector<bool> seen(model.columns.size(), false);
  ImportedSolution out;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    double v;
    if (!(ls >> name >> v))
      throw SolverError("solution file line " + std::to_string(lineno) + " is malformed: " + line);
    auto it = col_by_name.find(name);
    if (it == col_by_name.end()) {
      out.warnings.push_back(name);
      continue;
    }
    values[it->second] = v;
    seen[it->second] = true;
  }

  for (size_t c = 0; c < model.columns.size(); ++c) {
    const Column& col = model.columns[c];
    if (col.kind == VarKind::Continuous) {
      if (!seen[c])
        throw SolverError("solution file is missing continuous variable " + col.name);
    } else {
      double r = std::round(values[c]);
      if (std::abs(values[c] - r) > 1e-6)
        throw SolverError("variable " + col.name + " violates integrality: " +
                          std::to_string(values[c]));
      values[c] = r;
    }
  }

  Solution& sol = out.solution;
  for (size_t c = 0; c < model.columns.size(); ++c)
    sol.values[model.columns[c].name] = values[c];
  sol.objective = model.eval_objective(values);
  sol.best_bound = sol.objective;
  sol.status = SolveStatus::Feasible;
  return out;
}

void write_solution(const Solution& sol, std::ostream& out) {
  out << "# objective " << num(sol.objective) << "\n";
  for (const auto& [name, v] : sol.values) out << name << " " << num(v) << "\n";
}

}  // namespace masonry
