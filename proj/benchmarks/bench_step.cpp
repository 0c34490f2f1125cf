// Microbenchmarks for the per-step cost of the integrators and their main
// building blocks on the builtin cylindrical model.
#include <benchmark/benchmark.h>

#include <cmath>

#include "epint/fields.hpp"
#include "epint/integrators.hpp"
#include "epint/quadrature.hpp"

namespace {

using namespace epint;

const ParticleState kInitial{{0.0, 1.0, 0.1}, {0.09, 0.05, 0.20}, 0.0};

void BM_EpStep(benchmark::State& state) {
  const FieldModel model = builtin_model("paper-sec6");
  const MethodSpec spec{{MethodKind::GaussLegendre, static_cast<int>(state.range(0))}, 0.1};
  ParticleState particle = kInitial;
  for (auto _ : state) {
    const StepResult result = ep_step(particle, model, spec);
    benchmark::DoNotOptimize(result.state);
    // Re-stepping from the same start keeps the iteration count stable.
    particle.t = 0.0;
  }
}
BENCHMARK(BM_EpStep)->Arg(1)->Arg(2)->Arg(3);

void BM_BorisStep(benchmark::State& state) {
  const FieldModel model = builtin_model("paper-sec6");
  ParticleState particle = kInitial;
  for (auto _ : state) {
    const ParticleState next = boris_step(particle, model, 0.1);
    benchmark::DoNotOptimize(next);
    particle.t = 0.0;
  }
}
BENCHMARK(BM_BorisStep);

void BM_AverageForce(benchmark::State& state) {
  const FieldModel model = builtin_model("paper-sec6");
  const QuadratureRule rule = gauss_legendre_rule(static_cast<int>(state.range(0)));
  const Vec3 x_from{0.0, 1.0, 0.1};
  const Vec3 x_to{0.01, 1.005, 0.12};
  for (auto _ : state) {
    const Vec3 avg = average_force_quadrature(model, x_from, x_to, rule);
    benchmark::DoNotOptimize(avg);
  }
}
BENCHMARK(BM_AverageForce)->Arg(1)->Arg(2)->Arg(3);

void BM_ExactLinearIntegral(benchmark::State& state) {
  // The builtin models have no linear-potential decomposition, so benchmark
  // the closed form on a representative uhat(a.x) model.
  const Vec3 a{1.0, 0.5, 0.0};
  auto uhat = [](double xi) { return 0.4 * std::sin(1.3 * xi) + 0.05 * xi * xi; };
  auto uhat_prime = [](double xi) { return 0.52 * std::cos(1.3 * xi) + 0.1 * xi; };
  FieldModel model("bench-linear", [](const Vec3&) { return Vec3{0.0, 0.0, 1.0}; },
                   [=](const Vec3& x) { return uhat(dot(a, x)); },
                   [=](const Vec3& x) { return -uhat_prime(dot(a, x)) * a; });
  model.with_linear_potential(a, uhat, uhat_prime);
  const Vec3 x_from{0.0, 1.0, 0.1};
  const Vec3 x_to{0.01, 1.005, 0.12};
  for (auto _ : state) {
    const Vec3 avg = exact_linear_integral(model, x_from, x_to);
    benchmark::DoNotOptimize(avg);
  }
}
BENCHMARK(BM_ExactLinearIntegral);

}  // namespace

BENCHMARK_MAIN();
