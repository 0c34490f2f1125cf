#pragma once

#include <string>

#include "epint/errors.hpp"
#include "epint/vec3.hpp"

namespace epint {

// Instantaneous particle state tagged with its time.
struct ParticleState {
  Vec3 x;
  Vec3 v;
  double t = 0.0;
};

// One-step method families:
//  - Boris: explicit half-kick / rotation / half-kick baseline;
//  - GaussLegendre: implicit energy-targeting scheme whose segment force
//    average uses an s-point Gauss-Legendre rule (s = 1, 2, 3);
//  - ExactLinear: same implicit scheme with the closed-form segment average,
//    available when the model's potential has the form U(x) = uhat(a.x).
enum class MethodKind { Boris, GaussLegendre, ExactLinear };

struct Method {
  MethodKind kind = MethodKind::GaussLegendre;
  int stages = 2;  // quadrature stage count; meaningful for GaussLegendre only
};

// A method plus the stepsize it is applied with. h must be finite and
// nonzero; negative h runs the step backwards (used by reversal tests).
struct MethodSpec {
  Method method;
  double h = 0.0;
};

// Names used by the CLI and in result tables.
inline Method parse_method(const std::string& name) {
  if (name == "boris") return {MethodKind::Boris, 0};
  if (name == "ep1") return {MethodKind::GaussLegendre, 1};
  if (name == "ep2") return {MethodKind::GaussLegendre, 2};
  if (name == "ep3") return {MethodKind::GaussLegendre, 3};
  if (name == "ep-exact") return {MethodKind::ExactLinear, 0};
  throw ConfigError("unknown method '" + name + "' (known: boris, ep1, ep2, ep3, ep-exact)");
}

inline std::string method_name(const Method& m) {
  switch (m.kind) {
    case MethodKind::Boris:
      return "boris";
    case MethodKind::GaussLegendre:
      return "ep" + std::to_string(m.stages);
    case MethodKind::ExactLinear:
      return "ep-exact";
  }
  throw ConfigError("invalid method kind");
}

// Fixed-point solver controls for the implicit methods. The residual is the
// max-norm change of the velocity iterate between consecutive sweeps.
struct SolverParams {
  double tol = 1e-13;
  int max_iters = 100;
};

// State after one step plus the solver effort it took.
struct StepResult {
  ParticleState state;
  int iters = 0;  // fixed-point sweeps used (1 when the guess was already fixed)
  double residual = 0.0;
};

}  // namespace epint
