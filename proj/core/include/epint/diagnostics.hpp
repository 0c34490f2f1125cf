#pragma once

#include <span>
#include <utility>
#include <vector>

#include "epint/fields.hpp"
#include "epint/trajectory.hpp"
#include "epint/vec3.hpp"

namespace epint {

// E(x, v) = |v|^2 / 2 + U(x).
double energy(const Vec3& x, const Vec3& v, const FieldModel& model);

// M(x, v) = (v + A(x)) . (S x) for a rotation generator S. With the default
// x3-axis generator, S x = (x2, -x1, 0), so M = (v1+A1) x2 - (v2+A2) x1.
// ConfigError when the model has no vector potential.
double momentum(const Vec3& x, const Vec3& v, const FieldModel& model, const RotationGenerator& generator);

// How well the model is invariant under the rotations generated by S:
//   U(exp(tau S) x) = U(x)   and   exp(-tau S) A(exp(tau S) x) = A(x),
// evaluated with the Rodrigues closed form over all probe x tau pairs.
// These are the conditions under which M is a first integral.
struct InvarianceReport {
  double max_potential_deviation = 0.0;
  double max_vector_potential_deviation = 0.0;
};

InvarianceReport invariance_check(const FieldModel& model, const RotationGenerator& generator,
                                  std::span<const Vec3> probes, std::span<const double> taus);

enum class ConservedQuantity { Energy, Momentum };

// (t, |Q(t) - Q(t0)|) for each sample of the record. ConfigError when the
// record lacks the requested quantity.
std::vector<std::pair<double, double>> drift_series(const TrajectoryRecord& record,
                                                    ConservedQuantity quantity);

double max_drift(const TrajectoryRecord& record, ConservedQuantity quantity);

// Max-norm difference over the 6 components of (x, v) at the two records'
// final samples. AlignmentError when the final times differ by more than
// 1e-12 (scaled up with the endpoint magnitude beyond |t| = 1, so rounding
// of n*h at large horizons does not count as a mismatch).
double global_error(const TrajectoryRecord& record, const TrajectoryRecord& oracle);

// High-accuracy reference trajectory: the 3-stage implicit scheme run at
// h_ref = (t_end - t0)/2^14, halved further until h_ref <= 1e-3, with solver
// tolerance 1e-15. Records only the initial and final states. Used as the
// oracle for every global-error measurement; callers should quote these
// settings next to results.
TrajectoryRecord reference_oracle(const ParticleState& initial, const FieldModel& model, double t_end);

}  // namespace epint
