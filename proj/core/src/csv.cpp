#include "epint/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "epint/errors.hpp"

namespace epint {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record) {
  os << "t,x1,x2,x3,v1,v2,v3,energy,energy_err,momentum,momentum_err,fp_iters\n";
  if (record.samples.empty()) return;
  const TrajectorySample& first = record.samples.front();
  for (const TrajectorySample& s : record.samples) {
    os << format_double(s.t) << ',' << format_double(s.x.x) << ',' << format_double(s.x.y) << ','
       << format_double(s.x.z) << ',' << format_double(s.v.x) << ',' << format_double(s.v.y) << ','
       << format_double(s.v.z) << ',' << format_double(s.energy) << ','
       << format_double(std::abs(s.energy - first.energy)) << ',';
    if (s.momentum) os << format_double(*s.momentum);
    os << ',';
    if (s.momentum) os << format_double(std::abs(*s.momentum - *first.momentum));
    os << ',' << s.fp_iters << '\n';
  }
}

}  // namespace epint
