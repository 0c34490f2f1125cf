#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "epint/integrators.hpp"
#include "epint/method.hpp"

namespace epint {

// One experiment = a grid of independent cells (method x horizon x stepsize)
// run from a shared initial state. Cells may execute concurrently; results
// and files are always merged in deterministic grid order, so identical
// configs produce bit-identical outputs.
struct ExperimentConfig {
  std::string model = "paper-sec6";
  std::vector<Method> methods;
  std::vector<double> stepsizes;
  std::vector<double> horizons;
  // 0 = automatic: convergence records endpoints only; long-time runs record
  // every ceil(1/h) steps (about once per unit time).
  long sample_every = 0;
  SolverParams solver;
  std::filesystem::path out_dir;  // empty: keep results in memory, write nothing
  // Initial state override; defaults to the model's preset.
  std::optional<ParticleState> initial;
};

// Initial states the experiments (and the CLI) use when none is given.
ParticleState default_initial_state(const std::string& model_name);

// The standard experiment grids: methods boris/ep1/ep2/ep3 on paper-sec6;
// convergence over h = 2^-6..2^-9 at T = 10, 100, 1000; long-time over
// h = 0.05, 0.1 at T = 10^4.
ExperimentConfig convergence_defaults();
ExperimentConfig longtime_defaults();

// --- Convergence study -----------------------------------------------------

struct ConvergenceCell {
  Method method;
  double horizon = 0.0;
  double h = 0.0;
  double error = 0.0;  // max-norm (x,v) error at the horizon vs. the oracle
  // log(e_prev/e_this) / log(h_prev/h_this) against the previous (larger)
  // stepsize of the same method and horizon; absent for the first one.
  std::optional<double> observed_order;
  std::string status = "ok";
  bool ok() const { return status == "ok"; }
};

struct ConvergenceTable {
  std::vector<ConvergenceCell> cells;
  bool all_ok = false;
};

// Integrates every cell, measures the endpoint error against a per-horizon
// reference-oracle trajectory, and attaches observed orders. Cell failures
// are recorded in-place and do not stop the run. With config.out_dir set,
// writes convergence.csv and manifest.txt.
ConvergenceTable run_convergence(const ExperimentConfig& config);

// --- Long-time drift study --------------------------------------------------

struct LongtimeCell {
  Method method;
  double h = 0.0;
  double horizon = 0.0;
  double max_energy_drift = 0.0;
  std::optional<double> max_momentum_drift;  // absent when the model has no A
  std::filesystem::path csv_path;            // empty when out_dir unset
  std::string status = "ok";
  bool ok() const { return status == "ok"; }
};

struct LongtimeResult {
  std::vector<LongtimeCell> cells;
  bool all_ok = false;
};

// Integrates every cell and reduces it to drift series of the conserved
// quantities. With config.out_dir set, writes one
// longtime_<method>_h<h>_T<horizon>.csv per cell (columns t, energy_drift,
// momentum_drift) and manifest.txt. A cell that aborts mid-run still reports
// the drift observed up to the failure, with its status recording why.
LongtimeResult run_longtime(const ExperimentConfig& config);

}  // namespace epint
