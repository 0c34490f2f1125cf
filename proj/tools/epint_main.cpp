// epint: run energy-preserving charged-particle integrators, reproduce the
// standard convergence / long-time drift experiments, and validate models.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epint/csv.hpp"
#include "epint/diagnostics.hpp"
#include "epint/errors.hpp"
#include "epint/fields.hpp"
#include "epint/harness.hpp"
#include "epint/integrators.hpp"
#include "epint/method.hpp"
#include "epint/quadrature.hpp"
#include "epint/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;  // divergence or domain failure
constexpr int kExitPartial = 4;  // some experiment cells failed

epint::Vec3 parse_vec3(const std::string& text, const std::string& flag) {
  epint::Vec3 v;
  int consumed = 0;
  const int got = std::sscanf(text.c_str(), "%lf,%lf,%lf%n", &v.x, &v.y, &v.z, &consumed);
  if (got != 3 || consumed != static_cast<int>(text.size()))
    throw epint::ConfigError(flag + ": expected three comma-separated reals, got '" + text + "'");
  return v;
}

struct IntegrateArgs {
  std::string model = "paper-sec6";
  std::string method = "ep2";
  double h = 0.05;
  double t_end = 100.0;
  std::string x0;
  std::string v0;
  double tol = 1e-13;
  long sample_every = 1;
  std::string out = "-";
};

int run_integrate(const IntegrateArgs& args) {
  const epint::FieldModel model = epint::builtin_model(args.model);
  const epint::Method method = epint::parse_method(args.method);

  epint::ParticleState initial = epint::default_initial_state(args.model);
  if (!args.x0.empty()) initial.x = parse_vec3(args.x0, "--x0");
  if (!args.v0.empty()) initial.v = parse_vec3(args.v0, "--v0");

  // Surface ep-exact-on-unsupported-model (and other step-level
  // configuration errors) as configuration failures before integrating.
  if (method.kind == epint::MethodKind::ExactLinear && !model.has_linear_potential())
    throw epint::ConfigError("method ep-exact needs a model with a linear-potential "
                             "decomposition (U = uhat(a.x)); model '" +
                             args.model + "' has none");

  const epint::SolverParams solver{args.tol, 100};
  epint::IntegrateOptions options;
  options.sample_every = args.sample_every;
  const epint::IntegrationOutcome outcome =
      epint::integrate(initial, model, {method, args.h}, solver, args.t_end, options);

  if (args.out == "-") {
    epint::write_trajectory_csv(std::cout, outcome.record);
  } else {
    std::ofstream file(args.out, std::ios::binary);
    if (!file) throw epint::ConfigError("cannot write to '" + args.out + "'");
    epint::write_trajectory_csv(file, outcome.record);
  }

  if (!outcome.ok()) {
    std::cerr << "integration aborted at step " << outcome.error->step_index
              << " (t = " << epint::format_double(outcome.error->time)
              << "): " << outcome.error->message << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::vector<std::string> methods;
  std::vector<double> stepsizes;
  std::vector<double> horizons;
  std::string out_dir;
};

epint::ExperimentConfig apply_overrides(epint::ExperimentConfig config, const ExperimentArgs& args) {
  if (!args.methods.empty()) {
    config.methods.clear();
    for (const std::string& name : args.methods) config.methods.push_back(epint::parse_method(name));
  }
  if (!args.stepsizes.empty()) config.stepsizes = args.stepsizes;
  if (!args.horizons.empty()) config.horizons = args.horizons;
  if (!args.out_dir.empty()) config.out_dir = args.out_dir;
  return config;
}

int run_converge(const ExperimentArgs& args) {
  const epint::ExperimentConfig config = apply_overrides(epint::convergence_defaults(), args);
  const epint::ConvergenceTable table = epint::run_convergence(config);

  std::printf("%-8s %-10s %-12s %-14s %-8s %s\n", "method", "T", "h", "global_error", "order",
              "status");
  for (const epint::ConvergenceCell& cell : table.cells) {
    std::printf("%-8s %-10.6g %-12.8g ", epint::method_name(cell.method).c_str(), cell.horizon,
                cell.h);
    if (cell.ok()) std::printf("%-14.6e ", cell.error);
    else std::printf("%-14s ", "--");
    if (cell.observed_order) std::printf("%-8.3f ", *cell.observed_order);
    else std::printf("%-8s ", "--");
    std::printf("%s\n", cell.ok() ? "ok" : cell.status.c_str());
  }
  if (!config.out_dir.empty())
    std::printf("wrote %s and manifest.txt\n", (config.out_dir / "convergence.csv").c_str());
  return table.all_ok ? kExitOk : kExitPartial;
}

int run_longtime(const ExperimentArgs& args) {
  const epint::ExperimentConfig config = apply_overrides(epint::longtime_defaults(), args);
  const epint::LongtimeResult result = epint::run_longtime(config);

  std::printf("%-8s %-10s %-10s %-18s %-18s %s\n", "method", "h", "T", "max_energy_drift",
              "max_momentum_drift", "status");
  for (const epint::LongtimeCell& cell : result.cells) {
    std::printf("%-8s %-10.6g %-10.6g ", epint::method_name(cell.method).c_str(), cell.h,
                cell.horizon);
    std::printf("%-18.6e ", cell.max_energy_drift);
    if (cell.max_momentum_drift) std::printf("%-18.6e ", *cell.max_momentum_drift);
    else std::printf("%-18s ", "--");
    std::printf("%s\n", cell.ok() ? "ok" : cell.status.c_str());
  }
  if (!config.out_dir.empty())
    std::printf("wrote per-cell drift CSVs and manifest.txt under %s\n",
                config.out_dir.c_str());
  return result.all_ok ? kExitOk : kExitPartial;
}

int run_validate(const std::string& model_name) {
  const epint::FieldModel model = epint::builtin_model(model_name);
  bool pass = true;

  // Probe points chosen away from the builtin models' singular axis.
  const std::vector<epint::Vec3> probes = {
      {0.0, 1.0, 0.1}, {1.0, 0.5, -0.3}, {-0.7, 0.8, 0.2}, {0.3, -1.2, 0.5}, {2.0, 0.1, -1.0}};
  const std::vector<double> taus = {0.0, 0.3, -0.7, 1.5707963267948966, 2.1};

  const epint::ConsistencyReport consistency = epint::consistency_check(model, probes);
  pass = pass && consistency.pass;
  std::printf("force vs. -grad U (fd):      max residual %.3e  [%s]\n",
              consistency.max_force_residual, consistency.pass ? "pass" : "FAIL");
  if (consistency.max_curl_residual)
    std::printf("curl A vs. B (fd):           max residual %.3e  [%s]\n",
                *consistency.max_curl_residual, consistency.pass ? "pass" : "FAIL");
  else
    std::printf("curl A vs. B:                skipped (model has no vector potential)\n");

  if (model.has_vector_potential()) {
    const auto generator = epint::RotationGenerator::about({0.0, 0.0, 1.0});
    const epint::InvarianceReport inv = epint::invariance_check(model, generator, probes, taus);
    const bool inv_ok =
        inv.max_potential_deviation <= 1e-12 && inv.max_vector_potential_deviation <= 1e-12;
    pass = pass && inv_ok;
    std::printf("rotation invariance of U:    max deviation %.3e  [%s]\n",
                inv.max_potential_deviation, inv_ok ? "pass" : "FAIL");
    std::printf("rotation equivariance of A:  max deviation %.3e  [%s]\n",
                inv.max_vector_potential_deviation, inv_ok ? "pass" : "FAIL");
  } else {
    std::printf("rotation invariance:         skipped (model has no vector potential)\n");
  }

  for (int s = 1; s <= 3; ++s) {
    const epint::QuadratureRule rule = epint::gauss_legendre_rule(s);
    double worst_exact = 0.0;
    for (int k = 0; k <= 2 * s - 1; ++k)
      worst_exact = std::max(worst_exact, epint::monomial_quadrature_error(rule, k));
    const double beyond = epint::monomial_quadrature_error(rule, 2 * s);
    const bool rule_ok = worst_exact <= 1e-14 && beyond > 1e-6;
    pass = pass && rule_ok;
    std::printf("quadrature s=%d:              degree<=%d error %.3e, degree %d error %.3e  [%s]\n",
                s, 2 * s - 1, worst_exact, 2 * s, beyond, rule_ok ? "pass" : "FAIL");
  }

  std::printf("%s\n", pass ? "all checks passed" : "validation FAILED");
  return pass ? kExitOk : kExitValidationFailed;
}

int run_list_models() {
  for (const std::string& name : epint::builtin_model_names()) {
    const epint::FieldModel model = epint::builtin_model(name);
    const epint::ParticleState preset = epint::default_initial_state(name);
    std::printf("%-12s A:%-3s linear-U:%-3s preset x0=(%g,%g,%g) v0=(%g,%g,%g)\n", name.c_str(),
                model.has_vector_potential() ? "yes" : "no",
                model.has_linear_potential() ? "yes" : "no", preset.x.x, preset.x.y, preset.x.z,
                preset.v.x, preset.v.y, preset.v.z);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-preserving implicit integrators for charged-particle dynamics"};
  app.set_version_flag("--version", epint::version_string);
  app.require_subcommand(1);
  // The integrate contract uses --h for the stepsize, so help lives on
  // --help alone (no -h shorthand anywhere, for consistency).
  app.set_help_flag("--help", "Print help and exit");

  IntegrateArgs integrate_args;
  CLI::App* integrate = app.add_subcommand("integrate", "Run one trajectory and emit CSV");
  integrate->set_help_flag("--help", "Print help and exit");
  integrate->add_option("--model", integrate_args.model, "Field model name")->capture_default_str();
  integrate->add_option("--method", integrate_args.method, "boris|ep1|ep2|ep3|ep-exact")
      ->capture_default_str();
  integrate->add_option("--h", integrate_args.h, "Stepsize")->capture_default_str();
  integrate->add_option("--t-end", integrate_args.t_end, "Final time (t starts at 0)")
      ->capture_default_str();
  integrate->add_option("--x0", integrate_args.x0, "Initial position a,b,c (default: model preset)");
  integrate->add_option("--v0", integrate_args.v0, "Initial velocity a,b,c (default: model preset)");
  integrate->add_option("--tol", integrate_args.tol, "Fixed-point solver tolerance")
      ->capture_default_str();
  integrate->add_option("--sample-every", integrate_args.sample_every, "Record every Nth step")
      ->capture_default_str();
  integrate->add_option("--out", integrate_args.out, "Output CSV path, or - for stdout")
      ->capture_default_str();

  ExperimentArgs converge_args;
  CLI::App* converge =
      app.add_subcommand("converge", "Convergence study against the reference oracle");
  converge->set_help_flag("--help", "Print help and exit");
  converge->add_option("--methods", converge_args.methods, "Methods (default: boris,ep1,ep2,ep3)")
      ->delimiter(',');
  converge->add_option("--stepsizes", converge_args.stepsizes,
                       "Stepsizes (default: 2^-6,2^-7,2^-8,2^-9)")
      ->delimiter(',');
  converge->add_option("--horizons", converge_args.horizons, "Horizons T (default: 10,100,1000)")
      ->delimiter(',');
  converge->add_option("--out-dir", converge_args.out_dir, "Directory for convergence.csv + manifest");

  ExperimentArgs longtime_args;
  CLI::App* longtime =
      app.add_subcommand("longtime", "Long-time energy/momentum drift experiment");
  longtime->set_help_flag("--help", "Print help and exit");
  longtime->add_option("--methods", longtime_args.methods, "Methods (default: boris,ep1,ep2,ep3)")
      ->delimiter(',');
  longtime->add_option("--stepsizes", longtime_args.stepsizes, "Stepsizes (default: 0.05,0.1)")
      ->delimiter(',');
  longtime->add_option("--horizons", longtime_args.horizons, "Horizons T (default: 10000)")
      ->delimiter(',');
  longtime->add_option("--out-dir", longtime_args.out_dir, "Directory for drift CSVs + manifest");

  std::string validate_model = "paper-sec6";
  CLI::App* validate = app.add_subcommand("validate", "Model consistency and quadrature checks");
  validate->set_help_flag("--help", "Print help and exit");
  validate->add_option("--model", validate_model, "Field model name")->capture_default_str();

  CLI::App* list_models = app.add_subcommand("list-models", "List built-in field models");
  list_models->set_help_flag("--help", "Print help and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage error
    return kExitConfig;
  }

  try {
    if (integrate->parsed()) return run_integrate(integrate_args);
    if (converge->parsed()) return run_converge(converge_args);
    if (longtime->parsed()) return run_longtime(longtime_args);
    if (validate->parsed()) return run_validate(validate_model);
    if (list_models->parsed()) return run_list_models();
  } catch (const epint::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const epint::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;  // unreachable with require_subcommand(1)
}
