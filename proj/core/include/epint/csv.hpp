#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "epint/trajectory.hpp"

namespace epint {

// Shortest decimal string that parses back to exactly the same double
// (std::to_chars). Locale-independent: '.' decimal point, no grouping.
// The harness's bit-identical-output guarantee rests on this.
std::string format_double(double value);

// Trajectory CSV schema shared by the CLI and the tests. Columns:
//   t,x1,x2,x3,v1,v2,v3,energy,energy_err,momentum,momentum_err,fp_iters
// energy_err/momentum_err are absolute deviations from the first sample;
// the momentum columns are left empty when the model has no vector
// potential. Header always present, rows newline-terminated.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record);

}  // namespace epint
