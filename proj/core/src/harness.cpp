#include "epint/harness.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <utility>

#include "epint/csv.hpp"
#include "epint/diagnostics.hpp"
#include "epint/errors.hpp"
#include "epint/version.hpp"

namespace epint {

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.methods.empty()) throw ConfigError("experiment: method list is empty");
  if (config.stepsizes.empty()) throw ConfigError("experiment: stepsize list is empty");
  if (config.horizons.empty()) throw ConfigError("experiment: horizon list is empty");
  for (const double h : config.stepsizes)
    if (!(h > 0.0)) throw ConfigError("experiment: stepsizes must be positive");
  for (const double T : config.horizons)
    if (!(T > 0.0)) throw ConfigError("experiment: horizons must be positive");
  if (config.sample_every < 0) throw ConfigError("experiment: sample_every must be >= 0");
  builtin_model(config.model);  // validates the name
}

ParticleState initial_state(const ExperimentConfig& config) {
  return config.initial ? *config.initial : default_initial_state(config.model);
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (const double v : values) {
    if (!out.empty()) out += ',';
    out += format_double(v);
  }
  return out;
}

std::string join_methods(const std::vector<Method>& methods) {
  std::string out;
  for (const Method& m : methods) {
    if (!out.empty()) out += ',';
    out += method_name(m);
  }
  return out;
}

void write_config_manifest(std::ostream& os, const char* kind, const ExperimentConfig& config,
                           const ParticleState& init) {
  os << "kind: " << kind << '\n'
     << "version: " << version_string << '\n'
     << "model: " << config.model << '\n'
     << "methods: " << join_methods(config.methods) << '\n'
     << "stepsizes: " << join_doubles(config.stepsizes) << '\n'
     << "horizons: " << join_doubles(config.horizons) << '\n'
     << "sample_every: " << config.sample_every << '\n'
     << "solver_tol: " << format_double(config.solver.tol) << '\n'
     << "solver_max_iters: " << config.solver.max_iters << '\n'
     << "initial_x: " << format_double(init.x.x) << ',' << format_double(init.x.y) << ','
     << format_double(init.x.z) << '\n'
     << "initial_v: " << format_double(init.v.x) << ',' << format_double(init.v.y) << ','
     << format_double(init.v.z) << '\n'
     << "initial_t: " << format_double(init.t) << '\n';
}

// Stepsize the reference oracle ends up using for a horizon (mirrors
// reference_oracle: 2^14 steps, doubled until h_ref <= 1e-3).
double oracle_stepsize(double span) {
  if (span <= 0.0) return 0.0;
  long n = 1L << 14;
  while (span / static_cast<double>(n) > 1e-3) n *= 2;
  return span / static_cast<double>(n);
}

long longtime_sample_stride(const ExperimentConfig& config, double h) {
  if (config.sample_every > 0) return config.sample_every;
  return static_cast<long>(std::ceil(1.0 / h));  // about one sample per unit time
}

}  // namespace

ParticleState default_initial_state(const std::string& model_name) {
  if (model_name == "paper-sec6") return {{0.0, 1.0, 0.1}, {0.09, 0.05, 0.20}, 0.0};
  if (model_name == "constant-B") return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 0.0};
  // Dyadic velocity: with the standard dyadic stepsizes, free-flight
  // trajectories then accumulate no rounding at all.
  if (model_name == "free-flight") return {{0.0, 0.0, 0.0}, {0.5, -0.25, 1.0}, 0.0};
  throw ConfigError("no preset initial state for model '" + model_name + "'");
}

ExperimentConfig convergence_defaults() {
  ExperimentConfig config;
  config.methods = {parse_method("boris"), parse_method("ep1"), parse_method("ep2"),
                    parse_method("ep3")};
  config.stepsizes = {1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0};
  config.horizons = {10.0, 100.0, 1000.0};
  return config;
}

ExperimentConfig longtime_defaults() {
  ExperimentConfig config;
  config.methods = {parse_method("boris"), parse_method("ep1"), parse_method("ep2"),
                    parse_method("ep3")};
  config.stepsizes = {0.05, 0.1};
  config.horizons = {10000.0};
  return config;
}

ConvergenceTable run_convergence(const ExperimentConfig& config) {
  validate_config(config);
  const ParticleState init = initial_state(config);

  // One reference trajectory per horizon, shared by every cell there.
  struct OracleSlot {
    TrajectoryRecord record;
    std::string status = "ok";
  };
  std::vector<std::future<OracleSlot>> oracle_futures;
  oracle_futures.reserve(config.horizons.size());
  for (const double T : config.horizons) {
    oracle_futures.push_back(std::async(std::launch::async, [&config, init, T]() {
      OracleSlot slot;
      try {
        const FieldModel model = builtin_model(config.model);
        slot.record = reference_oracle(init, model, init.t + T);
      } catch (const Error& e) {
        slot.status = std::string("oracle failed: ") + e.what();
      }
      return slot;
    }));
  }
  std::vector<OracleSlot> oracles;
  oracles.reserve(oracle_futures.size());
  for (auto& f : oracle_futures) oracles.push_back(f.get());

  ConvergenceTable table;
  std::vector<std::future<ConvergenceCell>> cell_futures;
  for (const Method& method : config.methods) {
    for (std::size_t ti = 0; ti < config.horizons.size(); ++ti) {
      for (const double h : config.stepsizes) {
        const double T = config.horizons[ti];
        const OracleSlot& oracle = oracles[ti];
        cell_futures.push_back(
            std::async(std::launch::async, [&config, &oracle, init, method, T, h]() {
              ConvergenceCell cell;
              cell.method = method;
              cell.horizon = T;
              cell.h = h;
              if (!(oracle.status == "ok")) {
                cell.status = oracle.status;
                return cell;
              }
              try {
                const FieldModel model = builtin_model(config.model);
                IntegrateOptions options;
                if (config.sample_every > 0) options.sample_every = config.sample_every;
                else options.sample_every = std::numeric_limits<long>::max();  // endpoint only
                const IntegrationOutcome out =
                    integrate(init, model, {method, h}, config.solver, init.t + T, options);
                if (!out.ok()) {
                  cell.status = out.error->message;
                  return cell;
                }
                cell.error = global_error(out.record, oracle.record);
              } catch (const Error& e) {
                cell.status = e.what();
              }
              return cell;
            }));
      }
    }
  }
  for (auto& f : cell_futures) table.cells.push_back(f.get());

  // Observed order between consecutive stepsizes of the same method/horizon.
  const std::size_t per_group = config.stepsizes.size();
  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    if (i % per_group == 0) continue;
    const ConvergenceCell& prev = table.cells[i - 1];
    ConvergenceCell& cell = table.cells[i];
    if (prev.ok() && cell.ok() && prev.error > 0.0 && cell.error > 0.0 && prev.h != cell.h)
      cell.observed_order = std::log(prev.error / cell.error) / std::log(prev.h / cell.h);
  }

  table.all_ok = true;
  for (const ConvergenceCell& cell : table.cells) table.all_ok = table.all_ok && cell.ok();

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    std::ofstream csv(config.out_dir / "convergence.csv", std::ios::binary);
    if (!csv) throw ConfigError("cannot write to " + (config.out_dir / "convergence.csv").string());
    csv << "method,model,horizon,h,global_error,observed_order,status\n";
    for (const ConvergenceCell& cell : table.cells) {
      csv << method_name(cell.method) << ',' << config.model << ',' << format_double(cell.horizon)
          << ',' << format_double(cell.h) << ',';
      if (cell.ok()) csv << format_double(cell.error);
      csv << ',';
      if (cell.observed_order) csv << format_double(*cell.observed_order);
      csv << ',' << (cell.ok() ? "ok" : "failed") << '\n';
    }

    std::ofstream manifest(config.out_dir / "manifest.txt", std::ios::binary);
    write_config_manifest(manifest, "convergence", config, init);
    manifest << "oracle_method: ep3\n"
             << "oracle_tol: 1e-15\n";
    for (const double T : config.horizons)
      manifest << "oracle_h[T=" << format_double(T) << "]: " << format_double(oracle_stepsize(T))
               << '\n';
    for (const ConvergenceCell& cell : table.cells)
      manifest << "cell[" << method_name(cell.method) << ",T=" << format_double(cell.horizon)
               << ",h=" << format_double(cell.h) << "]: " << cell.status << '\n';
  }
  return table;
}

LongtimeResult run_longtime(const ExperimentConfig& config) {
  validate_config(config);
  const ParticleState init = initial_state(config);

  struct CellOutcome {
    LongtimeCell cell;
    TrajectoryRecord record;
  };
  std::vector<std::future<CellOutcome>> futures;
  for (const Method& method : config.methods) {
    for (const double T : config.horizons) {
      for (const double h : config.stepsizes) {
        futures.push_back(std::async(std::launch::async, [&config, init, method, T, h]() {
          CellOutcome out;
          out.cell.method = method;
          out.cell.h = h;
          out.cell.horizon = T;
          try {
            const FieldModel model = builtin_model(config.model);
            IntegrateOptions options;
            options.sample_every = longtime_sample_stride(config, h);
            IntegrationOutcome run =
                integrate(init, model, {method, h}, config.solver, init.t + T, options);
            out.record = std::move(run.record);
            if (!run.ok())
              out.cell.status = "aborted at t = " + format_double(run.error->time) + ": " +
                                run.error->message;
            if (!out.record.samples.empty()) {
              out.cell.max_energy_drift = max_drift(out.record, ConservedQuantity::Energy);
              if (out.record.samples.front().momentum)
                out.cell.max_momentum_drift = max_drift(out.record, ConservedQuantity::Momentum);
            }
          } catch (const Error& e) {
            out.cell.status = e.what();
          }
          return out;
        }));
      }
    }
  }

  LongtimeResult result;
  std::vector<TrajectoryRecord> records;
  for (auto& f : futures) {
    CellOutcome out = f.get();
    result.cells.push_back(std::move(out.cell));
    records.push_back(std::move(out.record));
  }
  result.all_ok = true;
  for (const LongtimeCell& cell : result.cells) result.all_ok = result.all_ok && cell.ok();

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      LongtimeCell& cell = result.cells[i];
      const TrajectoryRecord& record = records[i];
      if (record.samples.empty()) continue;
      const std::string file_name = "longtime_" + method_name(cell.method) + "_h" +
                                    format_double(cell.h) + "_T" + format_double(cell.horizon) +
                                    ".csv";
      cell.csv_path = config.out_dir / file_name;
      std::ofstream csv(cell.csv_path, std::ios::binary);
      if (!csv) throw ConfigError("cannot write to " + cell.csv_path.string());
      csv << "t,energy_drift,momentum_drift\n";
      const TrajectorySample& first = record.samples.front();
      for (const TrajectorySample& s : record.samples) {
        csv << format_double(s.t) << ',' << format_double(std::abs(s.energy - first.energy))
            << ',';
        if (s.momentum) csv << format_double(std::abs(*s.momentum - *first.momentum));
        csv << '\n';
      }
    }

    std::ofstream manifest(config.out_dir / "manifest.txt", std::ios::binary);
    write_config_manifest(manifest, "longtime", config, init);
    for (const double h : config.stepsizes)
      manifest << "sample_stride[h=" << format_double(h)
               << "]: " << longtime_sample_stride(config, h) << '\n';
    for (const LongtimeCell& cell : result.cells)
      manifest << "cell[" << method_name(cell.method) << ",h=" << format_double(cell.h)
               << ",T=" << format_double(cell.horizon) << "]: " << cell.status << '\n';
  }
  return result;
}

}  // namespace epint
