#include "epint/integrators.hpp"

#include <algorithm>
#include <cmath>

#include "epint/diagnostics.hpp"
#include "epint/quadrature.hpp"

namespace epint {

namespace {

void check_stepsize(double h) {
  if (h == 0.0 || !std::isfinite(h)) throw ConfigError("stepsize must be finite and nonzero");
}

// (t_end - t0)/h as a whole number of steps: round when within one ulp of an
// integer (so t_end/h = 10000 computed as 9999.999999999998 still runs the
// intended count), truncate otherwise -- never step past t_end.
long step_count(double span, double h) {
  const double raw = span / h;
  if (!(raw >= 0.0)) throw ConfigError("stepsize sign does not advance t toward t_end");
  if (raw > 9.0e15) throw ConfigError("step count overflows");
  const double nearest = std::nearbyint(raw);
  if (nearest >= 1.0 && std::abs(raw - nearest) <= raw * std::numeric_limits<double>::epsilon())
    return static_cast<long>(nearest);
  return static_cast<long>(std::floor(raw));
}

}  // namespace

StepResult ep_step(const ParticleState& state, const FieldModel& model, const MethodSpec& spec,
                   const SolverParams& solver) {
  check_stepsize(spec.h);
  if (spec.method.kind == MethodKind::Boris)
    throw ConfigError("ep_step does not implement the Boris method; use boris_step");
  const bool exact_linear = spec.method.kind == MethodKind::ExactLinear;
  if (exact_linear && !model.has_linear_potential())
    throw ConfigError("method ep-exact needs a model with a linear-potential decomposition "
                      "(U = uhat(a.x)); model '" + model.name() + "' has none");
  QuadratureRule rule;
  if (!exact_linear) rule = gauss_legendre_rule(spec.method.stages);

  const double h = spec.h;
  const Vec3 x0 = state.x;
  const Vec3 v0 = state.v;

  auto sweep = [&](const Vec3& w) {
    const Vec3 x1 = x0 + (0.5 * h) * (v0 + w);
    const Vec3 favg = exact_linear ? exact_linear_integral(model, x0, x1)
                                   : average_force_quadrature(model, x0, x1, rule);
    const Vec3 bmid = model.magnetic(0.5 * (x0 + x1));
    return v0 + h * (favg + cross(0.5 * (v0 + w), bmid));
  };

  const FixedPointResult fp = fixed_point_solve(v0, sweep, solver);
  const Vec3 v1 = fp.value;
  const Vec3 x1 = x0 + (0.5 * h) * (v0 + v1);
  return {{x1, v1, state.t + h}, fp.iters, fp.residual};
}

ParticleState boris_step(const ParticleState& state, const FieldModel& model, double h) {
  check_stepsize(h);
  const Vec3 half_kick = (0.5 * h) * model.force(state.x);
  const Vec3 t = (0.5 * h) * model.magnetic(state.x);
  const Vec3 s = (2.0 / (1.0 + dot(t, t))) * t;
  const Vec3 v_minus = state.v + half_kick;
  const Vec3 v_plus = v_minus + cross(v_minus + cross(v_minus, t), s);
  return {state.x + h * v_plus, v_plus + half_kick, state.t + h};
}

IntegrationOutcome integrate(const ParticleState& initial, const FieldModel& model,
                             const MethodSpec& spec, const SolverParams& solver, double t_end,
                             const IntegrateOptions& options) {
  check_stepsize(spec.h);
  if (options.sample_every < 1) throw ConfigError("sample_every must be at least 1");
  const long n_steps = step_count(t_end - initial.t, spec.h);

  IntegrationOutcome out;
  TrajectoryRecord& rec = out.record;
  rec.method = spec;
  rec.model_name = model.name();
  rec.samples.reserve(static_cast<std::size_t>(n_steps / options.sample_every) + 2);

  const bool with_momentum = model.has_vector_potential();
  auto record_sample = [&](const ParticleState& s, int window_iters) {
    TrajectorySample smp;
    smp.t = s.t;
    smp.x = s.x;
    smp.v = s.v;
    smp.energy = energy(s.x, s.v, model);
    if (with_momentum) smp.momentum = momentum(s.x, s.v, model, options.momentum_generator);
    smp.fp_iters = window_iters;
    rec.samples.push_back(smp);
  };

  ParticleState state = initial;
  record_sample(state, 0);  // diagnostics failure at the initial state throws

  int window_iters = 0;
  for (long k = 1; k <= n_steps; ++k) {
    try {
      if (spec.method.kind == MethodKind::Boris) {
        state = boris_step(state, model, spec.h);
        window_iters = std::max(window_iters, 1);
      } else {
        const StepResult r = ep_step(state, model, spec, solver);
        state = r.state;
        rec.total_fp_iters += r.iters;
        rec.max_fp_iters = std::max(rec.max_fp_iters, r.iters);
        window_iters = std::max(window_iters, r.iters);
      }
      // Label the time as t0 + k h (one rounding) rather than accumulating
      // h: endpoints then land exactly on the oracle's grid whenever the
      // product is representable, instead of drifting by a summation error.
      state.t = initial.t + static_cast<double>(k) * spec.h;
      rec.total_steps += 1;
      if (k % options.sample_every == 0 || k == n_steps) {
        record_sample(state, window_iters);
        window_iters = 0;
      }
    } catch (const Error& e) {
      out.error = IntegrationError{e.what(), k - 1, state.t};
      break;
    }
  }
  return out;
}

}  // namespace epint
