#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epint/method.hpp"

namespace epint {

// One recorded point of a trajectory. energy (and momentum, when the model
// carries a vector potential) are evaluated at record time and stored, so
// downstream consumers never recompute them against drifted state.
struct TrajectorySample {
  double t = 0.0;
  Vec3 x;
  Vec3 v;
  double energy = 0.0;
  std::optional<double> momentum;
  int fp_iters = 0;  // max fixed-point sweeps of any step since the previous sample
};

// Sampled time series of one integration, tagged with how it was produced.
struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  MethodSpec method;
  std::string model_name;
  long total_steps = 0;
  long total_fp_iters = 0;
  int max_fp_iters = 0;
};

}  // namespace epint
