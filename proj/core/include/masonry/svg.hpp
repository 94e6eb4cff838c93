#pragma once

#include <iosfwd>

#include "masonry/simulator.hpp"
#include "masonry/solver.hpp"
#include "masonry/wallplan.hpp"

namespace masonry {

/// Wall elevation: bricks colored by id, adhesion interfaces gray.
void write_wall_svg(const WallPlan& plan, std::ostream& out);

/// Gantt chart: one lane per pick-place UAV plus one for the adhesion UAV.
/// Brick bars are color-coded by task, adhesion bars gray, and the dynamic
/// logistics lead-in of each adhesion task is drawn black.
void write_gantt_svg(const Schedule& s, const WallPlan& plan, const ScheduleProblem& prob,
                     std::ostream& out);

/// dmin(t) line plot with a horizontal clearance line at r_c.
void write_min_distance_svg(const SimTrace& trace, double clearance, std::ostream& out);

}  // namespace masonry
