#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "epint/errors.hpp"
#include "epint/fields.hpp"
#include "epint/method.hpp"
#include "epint/trajectory.hpp"
#include "epint/vec3.hpp"

namespace epint {

struct FixedPointResult {
  Vec3 value;
  int iters = 0;
  double residual = 0.0;
};

// Iterates w <- map(w) from `guess` until the max-norm change between
// consecutive iterates drops to tol. Throws DivergenceError when max_iters
// sweeps do not get there, or when an iterate goes non-finite.
template <typename Map>
FixedPointResult fixed_point_solve(const Vec3& guess, Map&& map, const SolverParams& solver) {
  if (!(solver.tol > 0.0)) throw ConfigError("fixed-point solver: tolerance must be positive");
  if (solver.max_iters < 1) throw ConfigError("fixed-point solver: max_iters must be at least 1");
  Vec3 w = guess;
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= solver.max_iters; ++iter) {
    const Vec3 next = map(w);
    residual = max_abs_diff(next, w);
    w = next;
    if (!all_finite(w))
      throw DivergenceError("fixed-point iteration produced non-finite values", iter, residual);
    if (residual <= solver.tol) return {w, iter, residual};
  }
  throw DivergenceError("fixed-point iteration failed to converge", solver.max_iters, residual);
}

// One step of the implicit energy-targeting scheme. Solves
//
//   v1 = v0 + h favg(x0, x1) + h (v0+v1)/2 x B((x0+x1)/2),
//   x1 = x0 + (h/2) (v0 + v1),
//
// by fixed-point iteration on v1 (x1 substituted each sweep), where favg is
// the segment force average chosen by spec.method.kind: Gauss-Legendre
// quadrature or the closed-form linear-potential integral. Boris is not
// handled here (ConfigError).
StepResult ep_step(const ParticleState& state, const FieldModel& model, const MethodSpec& spec,
                   const SolverParams& solver = {});

// One step of the synchronized Boris scheme, sampling both F and B at the
// step's starting point:
//
//   v- = v0 + (h/2) F(x0);  t = (h/2) B(x0);  s = 2t/(1+|t|^2);
//   v+ = v- + (v- + v- x t) x s;
//   v1 = v+ + (h/2) F(x0);  x1 = x0 + h v+.
//
// Explicit: no iteration, no solver parameters.
ParticleState boris_step(const ParticleState& state, const FieldModel& model, double h);

// Context attached to a trajectory that stopped before reaching t_end.
struct IntegrationError {
  std::string message;
  long step_index = 0;  // zero-based index of the step that failed
  double time = 0.0;    // trajectory time when it failed
};

struct IntegrationOutcome {
  TrajectoryRecord record;
  std::optional<IntegrationError> error;
  bool ok() const { return !error.has_value(); }
};

struct IntegrateOptions {
  long sample_every = 1;
  // Generator used for the momentum diagnostic when the model has a vector
  // potential; defaults to rotation about the x3 axis.
  RotationGenerator momentum_generator = RotationGenerator::about({0.0, 0.0, 1.0});
};

// Repeatedly applies the method's one-step map from `initial` until t_end,
// recording every sample_every-th state (plus the initial and final ones).
// The step count is round((t_end - t0)/h) when that quotient is within one
// ulp of an integer, else floor: partial steps are never taken, so the
// actual final time can fall short of t_end. A step failure aborts the run
// and returns the partial record plus error context instead of throwing.
IntegrationOutcome integrate(const ParticleState& initial, const FieldModel& model,
                             const MethodSpec& spec, const SolverParams& solver, double t_end,
                             const IntegrateOptions& options = {});

}  // namespace epint
