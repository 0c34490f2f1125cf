#include "epint/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epint/errors.hpp"
#include "epint/integrators.hpp"

namespace epint {

double energy(const Vec3& x, const Vec3& v, const FieldModel& model) {
  return 0.5 * dot(v, v) + model.potential(x);
}

double momentum(const Vec3& x, const Vec3& v, const FieldModel& model,
                const RotationGenerator& generator) {
  return dot(v + model.vector_potential(x), generator.apply(x));
}

InvarianceReport invariance_check(const FieldModel& model, const RotationGenerator& generator,
                                  std::span<const Vec3> probes, std::span<const double> taus) {
  if (!model.has_vector_potential())
    throw ConfigError("invariance check needs a model with a vector potential");
  InvarianceReport report;
  for (const Vec3& p : probes) {
    const double u0 = model.potential(p);
    const Vec3 a0 = model.vector_potential(p);
    for (const double tau : taus) {
      const Vec3 rotated = rotate(generator, tau, p);
      report.max_potential_deviation =
          std::max(report.max_potential_deviation, std::abs(model.potential(rotated) - u0));
      const Vec3 pulled_back = rotate(generator, -tau, model.vector_potential(rotated));
      report.max_vector_potential_deviation =
          std::max(report.max_vector_potential_deviation, norm_inf(pulled_back - a0));
    }
  }
  return report;
}

std::vector<std::pair<double, double>> drift_series(const TrajectoryRecord& record,
                                                    ConservedQuantity quantity) {
  if (record.samples.empty()) throw ConfigError("drift series: record has no samples");
  if (quantity == ConservedQuantity::Momentum && !record.samples.front().momentum)
    throw ConfigError("drift series: record carries no momentum (model lacks a vector potential)");

  std::vector<std::pair<double, double>> series;
  series.reserve(record.samples.size());
  const TrajectorySample& first = record.samples.front();
  for (const TrajectorySample& s : record.samples) {
    const double q = quantity == ConservedQuantity::Energy ? s.energy : *s.momentum;
    const double q0 = quantity == ConservedQuantity::Energy ? first.energy : *first.momentum;
    series.emplace_back(s.t, std::abs(q - q0));
  }
  return series;
}

double max_drift(const TrajectoryRecord& record, ConservedQuantity quantity) {
  double worst = 0.0;
  for (const auto& [t, d] : drift_series(record, quantity)) worst = std::max(worst, d);
  return worst;
}

double global_error(const TrajectoryRecord& record, const TrajectoryRecord& oracle) {
  if (record.samples.empty() || oracle.samples.empty())
    throw ConfigError("global error: empty trajectory record");
  const TrajectorySample& a = record.samples.back();
  const TrajectorySample& b = oracle.samples.back();
  if (std::abs(a.t - b.t) > 1e-12 * std::max(1.0, std::abs(a.t)))
    throw AlignmentError("global error: records end at different times");
  return std::max(max_abs_diff(a.x, b.x), max_abs_diff(a.v, b.v));
}

TrajectoryRecord reference_oracle(const ParticleState& initial, const FieldModel& model,
                                  double t_end) {
  const double span = t_end - initial.t;
  if (span < 0.0) throw ConfigError("reference oracle integrates forward only");

  MethodSpec spec{{MethodKind::GaussLegendre, 3}, 1.0};
  IntegrateOptions options;
  if (span > 0.0) {
    long n = 1L << 14;
    while (span / static_cast<double>(n) > 1e-3) n *= 2;
    spec.h = span / static_cast<double>(n);
    options.sample_every = n;  // record only the endpoint (plus the start)
  }

  const SolverParams solver{1e-15, 200};
  IntegrationOutcome out = integrate(initial, model, spec, solver, t_end, options);
  if (!out.ok())
    throw Error("reference oracle failed at t = " + std::to_string(out.error->time) + ": " +
                out.error->message);
  return std::move(out.record);
}

}  // namespace epint
