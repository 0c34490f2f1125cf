#include "epint/fields.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "epint/errors.hpp"

namespace epint {

namespace {

std::string position_string(const Vec3& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%g, %g, %g)", x.x, x.y, x.z);
  return buf;
}

}  // namespace

FieldModel::FieldModel(std::string name, VectorField magnetic, ScalarField potential, VectorField force)
    : name_(std::move(name)),
      magnetic_(std::move(magnetic)),
      potential_(std::move(potential)),
      force_(std::move(force)) {
  if (!magnetic_ || !potential_ || !force_)
    throw ConfigError("field model '" + name_ + "' needs B, U and F evaluators");
}

FieldModel& FieldModel::with_vector_potential(VectorField a) {
  if (!a) throw ConfigError("field model '" + name_ + "': empty vector-potential evaluator");
  vector_potential_ = std::move(a);
  return *this;
}

FieldModel& FieldModel::with_linear_potential(Vec3 direction, ScalarMap uhat, ScalarMap uhat_prime) {
  if (!uhat || !uhat_prime)
    throw ConfigError("field model '" + name_ + "': linear potential needs both uhat and uhat'");
  if (direction == Vec3{})
    throw ConfigError("field model '" + name_ + "': linear direction must be nonzero");
  linear_direction_ = direction;
  uhat_ = std::move(uhat);
  uhat_prime_ = std::move(uhat_prime);
  return *this;
}

Vec3 FieldModel::magnetic(const Vec3& x) const {
  Vec3 b = magnetic_(x);
  if (!all_finite(b))
    throw DomainError("model '" + name_ + "': magnetic field non-finite at " + position_string(x));
  return b;
}

double FieldModel::potential(const Vec3& x) const {
  double u = potential_(x);
  if (!std::isfinite(u))
    throw DomainError("model '" + name_ + "': potential non-finite at " + position_string(x));
  return u;
}

Vec3 FieldModel::force(const Vec3& x) const {
  Vec3 f = force_(x);
  if (!all_finite(f))
    throw DomainError("model '" + name_ + "': force non-finite at " + position_string(x));
  return f;
}

Vec3 FieldModel::vector_potential(const Vec3& x) const {
  if (!vector_potential_)
    throw ConfigError("model '" + name_ + "' has no vector potential");
  Vec3 a = vector_potential_(x);
  if (!all_finite(a))
    throw DomainError("model '" + name_ + "': vector potential non-finite at " + position_string(x));
  return a;
}

const Vec3& FieldModel::linear_direction() const {
  if (!linear_direction_)
    throw ConfigError("model '" + name_ + "' has no linear-potential decomposition");
  return *linear_direction_;
}

double FieldModel::uhat(double xi) const {
  if (!uhat_) throw ConfigError("model '" + name_ + "' has no linear-potential decomposition");
  double u = uhat_(xi);
  if (!std::isfinite(u)) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", xi);
    throw DomainError("model '" + name_ + "': uhat non-finite at xi = " + std::string(buf));
  }
  return u;
}

double FieldModel::uhat_prime(double xi) const {
  if (!uhat_prime_) throw ConfigError("model '" + name_ + "' has no linear-potential decomposition");
  double u = uhat_prime_(xi);
  if (!std::isfinite(u)) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", xi);
    throw DomainError("model '" + name_ + "': uhat' non-finite at xi = " + std::string(buf));
  }
  return u;
}

namespace {

// Cylindrical radius used by the paper-sec6 model; the model is singular on
// the x3 axis, and we fail loudly there instead of propagating huge values.
double off_axis_radius(const Vec3& x) {
  const double r = std::hypot(x.x, x.y);
  if (r < 1e-12)
    throw DomainError("model 'paper-sec6': evaluation on the x3 axis (r < 1e-12) at " +
                      position_string(x));
  return r;
}

}  // namespace

FieldModel builtin_model(const std::string& name) {
  if (name == "paper-sec6") {
    // Cylindrically symmetric test field: U = 1/(100 r), B = (0, 0, r),
    // r = sqrt(x1^2 + x2^2). Force and vector potential in closed form:
    // F = (x1, x2, 0)/(100 r^3), A = (-x2 r/3, x1 r/3, 0) with curl A = B.
    FieldModel m(
        name,
        [](const Vec3& x) { return Vec3{0.0, 0.0, off_axis_radius(x)}; },
        [](const Vec3& x) { return 0.01 / off_axis_radius(x); },
        [](const Vec3& x) {
          const double r = off_axis_radius(x);
          const double s = 0.01 / (r * r * r);
          return Vec3{s * x.x, s * x.y, 0.0};
        });
    m.with_vector_potential([](const Vec3& x) {
      const double s = off_axis_radius(x) / 3.0;
      return Vec3{-s * x.y, s * x.x, 0.0};
    });
    return m;
  }
  if (name == "constant-B") {
    // Uniform axial field B = (0,0,1), no forces; trajectories are cyclotron
    // circles. A is the symmetric gauge.
    FieldModel m(
        name,
        [](const Vec3&) { return Vec3{0.0, 0.0, 1.0}; },
        [](const Vec3&) { return 0.0; },
        [](const Vec3&) { return Vec3{}; });
    m.with_vector_potential([](const Vec3& x) { return Vec3{-0.5 * x.y, 0.5 * x.x, 0.0}; });
    return m;
  }
  if (name == "free-flight") {
    // Everything zero: straight-line motion, exact for every method.
    FieldModel m(
        name,
        [](const Vec3&) { return Vec3{}; },
        [](const Vec3&) { return 0.0; },
        [](const Vec3&) { return Vec3{}; });
    m.with_vector_potential([](const Vec3&) { return Vec3{}; });
    return m;
  }
  throw ConfigError("unknown model '" + name + "' (known: paper-sec6, constant-B, free-flight)");
}

std::vector<std::string> builtin_model_names() { return {"paper-sec6", "constant-B", "free-flight"}; }

ConsistencyReport consistency_check(const FieldModel& model, std::span<const Vec3> probes,
                                    const ConsistencyOptions& options) {
  if (!(options.fd_step > 0.0)) throw ConfigError("consistency check: fd_step must be positive");
  if (!(options.tolerance > 0.0)) throw ConfigError("consistency check: tolerance must be positive");

  ConsistencyReport report;
  if (model.has_vector_potential()) report.max_curl_residual = 0.0;
  const double d = options.fd_step;
  constexpr Vec3 axes[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};

  for (const Vec3& p : probes) {
    Vec3 grad;
    for (int i = 0; i < 3; ++i)
      grad[i] = (model.potential(p + d * axes[i]) - model.potential(p - d * axes[i])) / (2.0 * d);
    report.max_force_residual = std::max(report.max_force_residual, norm_inf(model.force(p) + grad));

    if (model.has_vector_potential()) {
      // Central-difference Jacobian J[i][j] = dA_i/dx_j, then
      // curl A = (J[2][1]-J[1][2], J[0][2]-J[2][0], J[1][0]-J[0][1]).
      double jac[3][3];
      for (int j = 0; j < 3; ++j) {
        const Vec3 up = model.vector_potential(p + d * axes[j]);
        const Vec3 dn = model.vector_potential(p - d * axes[j]);
        for (int i = 0; i < 3; ++i) jac[i][j] = (up[i] - dn[i]) / (2.0 * d);
      }
      const Vec3 curl{jac[2][1] - jac[1][2], jac[0][2] - jac[2][0], jac[1][0] - jac[0][1]};
      report.max_curl_residual =
          std::max(*report.max_curl_residual, norm_inf(curl - model.magnetic(p)));
    }
  }

  report.pass = report.max_force_residual <= options.tolerance &&
                (!report.max_curl_residual || *report.max_curl_residual <= options.tolerance);
  return report;
}

}  // namespace epint
