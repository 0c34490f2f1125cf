#include "epint/quadrature.hpp"

#include <cmath>
#include <string>

#include "epint/errors.hpp"

namespace epint {

QuadratureRule gauss_legendre_rule(int stages) {
  // Closed-form nodes/weights on [0,1] (Legendre roots mapped from [-1,1]).
  switch (stages) {
    case 1:
      return {1, {0.5}, {1.0}};
    case 2: {
      const double d = std::sqrt(3.0) / 6.0;
      return {2, {0.5 - d, 0.5 + d}, {0.5, 0.5}};
    }
    case 3: {
      const double d = std::sqrt(15.0) / 10.0;
      return {3, {0.5 - d, 0.5, 0.5 + d}, {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0}};
    }
    default:
      throw ConfigError("Gauss-Legendre rule: stage count must be 1, 2 or 3 (got " +
                        std::to_string(stages) + ")");
  }
}

double monomial_quadrature_error(const QuadratureRule& rule, int degree) {
  if (rule.stages < 1) throw ConfigError("monomial check: empty quadrature rule");
  if (degree < 0) throw ConfigError("monomial check: degree must be non-negative");
  double acc = 0.0;
  for (int i = 0; i < rule.stages; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], degree);
  return std::abs(acc - 1.0 / (degree + 1));
}

Vec3 average_force_quadrature(const FieldModel& model, const Vec3& x_from, const Vec3& x_to,
                              const QuadratureRule& rule) {
  if (rule.stages < 1 || rule.stages > 3)
    throw ConfigError("force average: quadrature rule has invalid stage count");
  const Vec3 delta = x_to - x_from;
  Vec3 acc;
  for (int i = 0; i < rule.stages; ++i) {
    try {
      acc += rule.weights[i] * model.force(x_from + rule.nodes[i] * delta);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (quadrature node " + std::to_string(i) + ")");
    }
  }
  return acc;
}

Vec3 exact_linear_integral(const FieldModel& model, const Vec3& x_from, const Vec3& x_to) {
  const Vec3& a = model.linear_direction();  // ConfigError when absent
  const double xi_from = dot(a, x_from);
  const double xi_to = dot(a, x_to);
  const double delta = xi_to - xi_from;

  if (xi_to == xi_from) return -model.uhat_prime(xi_from) * a;  // exact degenerate segment

  if (std::abs(delta) < linear_switch_scale * (1.0 + std::abs(xi_from))) {
    // Quotient would lose ~|uhat| eps / delta to cancellation; average
    // uhat' along the segment instead. The 3-point rule keeps this branch
    // exact for polynomial uhat up to degree 6 and symmetric in + vs -.
    const QuadratureRule rule = gauss_legendre_rule(3);
    double acc = 0.0;
    for (int i = 0; i < rule.stages; ++i)
      acc += rule.weights[i] * model.uhat_prime(xi_from + rule.nodes[i] * delta);
    return -acc * a;
  }

  return -((model.uhat(xi_to) - model.uhat(xi_from)) / delta) * a;
}

}  // namespace epint
