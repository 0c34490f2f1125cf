#pragma once

#include <array>

#include "epint/fields.hpp"
#include "epint/vec3.hpp"

namespace epint {

// Quadrature rule on the reference interval [0, 1]. Only the first `stages`
// entries of nodes/weights are meaningful.
struct QuadratureRule {
  int stages = 0;
  std::array<double, 3> nodes{};
  std::array<double, 3> weights{};
};

// s-point Gauss-Legendre rule on [0, 1] for s in {1, 2, 3}: exact for
// polynomials of degree <= 2s - 1. ConfigError for other s.
QuadratureRule gauss_legendre_rule(int stages);

// The rule's error on the monomial t^k over [0,1]:
// |sum_i b_i c_i^k - 1/(k+1)|. Zero (to rounding) iff the rule integrates
// degree k exactly.
double monomial_quadrature_error(const QuadratureRule& rule, int degree);

// Force averaged along the straight segment from x_from to x_to,
// approximated by the rule:  sum_i b_i F(x_from + c_i (x_to - x_from)).
Vec3 average_force_quadrature(const FieldModel& model, const Vec3& x_from, const Vec3& x_to,
                              const QuadratureRule& rule);

// Closed-form segment average of the force for potentials U(x) = uhat(a.x):
//
//   -a (uhat(xi_to) - uhat(xi_from)) / (xi_to - xi_from),   xi = a.x,
//
// which equals the exact average of F over the segment. When |xi_to -
// xi_from| is too small for the quotient to be computed accurately, falls
// back to a 3-point Gauss-Legendre average of -a uhat'(xi) along the
// segment (symmetric in the endpoints, exact for polynomial uhat of degree
// <= 6, and indistinguishable from the quotient at the switch to ~1e-11).
// ConfigError when the model has no linear-potential data.
Vec3 exact_linear_integral(const FieldModel& model, const Vec3& x_from, const Vec3& x_to);

// Scale of the degenerate-denominator switch: the fallback branch is taken
// when |a.(x_to - x_from)| < linear_switch_scale * (1 + |a.x_from|).
inline constexpr double linear_switch_scale = 1e-4;

}  // namespace epint
