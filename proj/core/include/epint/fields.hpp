#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epint/vec3.hpp"

namespace epint {

// Field data entering the equations of motion
//
//   x'' = x' x B(x) + F(x),      F = -grad U,
//
// normalized so charge and mass are 1. A model always evaluates B, U and F;
// it may additionally carry a vector potential A (curl A = B), which enables
// the momentum diagnostic, and a linear-argument decomposition
// U(x) = uhat(a.x), which enables the closed-form segment force average.
class FieldModel {
 public:
  using VectorField = std::function<Vec3(const Vec3&)>;
  using ScalarField = std::function<double(const Vec3&)>;
  using ScalarMap = std::function<double(double)>;

  FieldModel(std::string name, VectorField magnetic, ScalarField potential, VectorField force);

  FieldModel& with_vector_potential(VectorField a);
  FieldModel& with_linear_potential(Vec3 direction, ScalarMap uhat, ScalarMap uhat_prime);

  const std::string& name() const { return name_; }

  // Evaluators reject non-finite results with DomainError; models flag
  // singular points by throwing DomainError themselves.
  Vec3 magnetic(const Vec3& x) const;
  double potential(const Vec3& x) const;
  Vec3 force(const Vec3& x) const;

  bool has_vector_potential() const { return static_cast<bool>(vector_potential_); }
  Vec3 vector_potential(const Vec3& x) const;  // ConfigError when absent

  bool has_linear_potential() const { return linear_direction_.has_value(); }
  const Vec3& linear_direction() const;  // ConfigError when absent
  double uhat(double xi) const;
  double uhat_prime(double xi) const;

 private:
  std::string name_;
  VectorField magnetic_;
  ScalarField potential_;
  VectorField force_;
  VectorField vector_potential_;
  std::optional<Vec3> linear_direction_;
  ScalarMap uhat_;
  ScalarMap uhat_prime_;
};

// Models known to the CLI by name: "paper-sec6", "constant-B", "free-flight".
FieldModel builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();

// Finite-difference cross-checks that a model's analytic pieces agree:
// F against -grad U and, when A is present, curl A against B. Central
// differences with step fd_step; a residual above `tolerance` fails the check.
struct ConsistencyOptions {
  double fd_step = 1e-5;
  double tolerance = 1e-5;
};

struct ConsistencyReport {
  double max_force_residual = 0.0;          // max over probes of |F + grad_fd U|
  std::optional<double> max_curl_residual;  // max of |curl_fd A - B|; absent without A
  bool pass = false;
};

ConsistencyReport consistency_check(const FieldModel& model, std::span<const Vec3> probes,
                                    const ConsistencyOptions& options = {});

}  // namespace epint
