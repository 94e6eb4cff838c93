#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "masonry/model.hpp"
#include "masonry/solver.hpp"

namespace masonry {

/// Writes the model in MPS format (free-form field widths; names longer than
/// eight characters are emitted as-is, which modern solvers accept).
/// Returns the number of bytes written.
size_t export_mps(const MilpModel& model, std::ostream& out);

/// Reads back an MPS file written by export_mps (or a compatible one).
MilpModel parse_mps(std::istream& in);

struct ImportedSolution {
  Solution solution;
  std::vector<std::string> warnings;  // unknown variable names
};

/// Parses whitespace-separated `name value` lines; `#` starts a comment.
/// Missing binaries/integers default to 0, missing continuous variables are
/// an error, and integral variables are snapped within 1e-6.
ImportedSolution import_solution(std::istream& in, const MilpModel& model);

void write_solution(const Solution& sol, std::ostream& out);

}  // namespace masonry
