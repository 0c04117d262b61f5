#pragma once

#include "hpca/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hpca {

enum class ModelKind { matrix, factor, poisson, tensor };
enum class Method { svd, diag_del, hetero, deflated };

std::string to_string(ModelKind kind);
std::string to_string(Method method);
ModelKind model_from_string(const std::string& name);
Method method_from_string(const std::string& name);

// One Monte-Carlo experiment: a model with fixed parameters, one swept
// parameter over a grid, a set of methods, and a trial count. Data for a cell
// is seeded by hashing (base_seed, model tag, grid index, trial index), so
// every method sees the same draws at a given cell and adding grid points,
// methods, or trials never reshuffles existing cells.
struct ExperimentSpec {
  ModelKind model = ModelKind::matrix;
  std::map<std::string, double> params;
  std::string sweep_name;
  std::vector<double> grid;
  std::vector<Method> methods;
  int trials = 1;
  std::uint64_t base_seed = 0;
  int t_max = 100;            // iterations for the plain iterative method
  std::vector<int> iters;     // per-round counts for the deflated method
  double gap_const = 4.0;
};

// Section-based key/value config:
//   [model]  kind plus the model's parameters
//   [sweep]  variable, grid
//   [run]    methods, trials, seed, t_max, iters, gap_const
// Unknown sections or keys are rejected.
ExperimentSpec parse_experiment_text(const std::string& text, const std::string& origin);
ExperimentSpec parse_experiment_file(const std::string& path);

std::uint64_t trial_seed(const ExperimentSpec& spec, Index grid_index, int trial_index);

struct TrialOutcome {
  double err_l2 = 0.0;
  double err_2inf = 0.0;
};

// Generates the cell's data, runs the method, and scores both subspace error
// metrics against the generated truth.
TrialOutcome run_trial(const ExperimentSpec& spec, Index grid_index, Method method,
                       int trial_index);

struct SweepRow {
  Method method = Method::svd;
  std::string sweep_name;
  double sweep_value = 0.0;
  double err_l2 = 0.0;
  double err_2inf = 0.0;
  int trials = 0;
  double seconds = 0.0;
};

struct RawRow {
  Method method = Method::svd;
  std::string sweep_name;
  double sweep_value = 0.0;
  int trial = 0;
  double err_l2 = 0.0;
  double err_2inf = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;     // sorted by (method name, sweep value)
  std::vector<RawRow> raw;        // per-trial values, same ordering
};

// Evaluates every (method, grid point, trial) cell, optionally across jobs
// worker threads. Error columns are independent of scheduling; the seconds
// column is measured wall time and varies run to run.
SweepResult run_sweep(const ExperimentSpec& spec, int jobs = 1);

// "method,sweep_name,sweep_value,err_l2,err_2inf,trials,seconds" with values
// printed to 17 significant digits.
std::string format_csv(const SweepResult& result);
std::string format_raw_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);
void emit_raw_csv(const SweepResult& result, const std::string& path);

}  // namespace hpca
