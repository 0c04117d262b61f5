// Command-line benchmark harness: single-shot subspace estimation, Monte-Carlo
// sweeps driven by config files, and the tensor pipeline.

#include "hpca/bench.hpp"
#include "hpca/estimators.hpp"
#include "hpca/io.hpp"
#include "hpca/linalg.hpp"
#include "hpca/synthgen.hpp"
#include "hpca/tensor.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

void write_schedule(const hpca::DeflationSchedule& schedule, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw hpca::DataError(path + ": cannot open for writing");
  }
  out << "breakpoints";
  for (auto b : schedule.breakpoints) out << ' ' << b;
  out << "\niters";
  for (auto t : schedule.iters) out << ' ' << t;
  out << "\ngap_const " << hpca::format_real(schedule.gap_const) << "\n";
}

struct EstimateArgs {
  std::string in_path;
  std::string out_path;
  long rank = 0;
  std::string method = "deflated";
  std::vector<int> iters;
  double gap_const = 4.0;
  int t_max = 100;
};

int run_estimate(const EstimateArgs& args) {
  const hpca::Matrix y = hpca::read_matrix_csv(args.in_path);
  if (y.size() == 0) {
    throw hpca::DataError(args.in_path + ": empty matrix");
  }
  const hpca::Method method = hpca::method_from_string(args.method);
  hpca::EstimatorResult result;
  switch (method) {
    case hpca::Method::svd:
      result = hpca::vanilla_svd_estimate(y, args.rank);
      break;
    case hpca::Method::diag_del:
      result = hpca::diag_deleted_estimate(y, args.rank);
      break;
    case hpca::Method::hetero: {
      const int t = args.iters.empty() ? args.t_max : args.iters.front();
      auto res = hpca::heteropca(hpca::gram_offdiag(y), args.rank, t);
      result.basis = std::move(res.basis);
      break;
    }
    case hpca::Method::deflated: {
      hpca::DeflatedOptions opts;
      opts.iters = args.iters;
      opts.gap_const = args.gap_const;
      result = hpca::deflated_heteropca(y, args.rank, opts);
      break;
    }
  }
  hpca::write_matrix_csv(result.basis.matrix(), args.out_path);
  if (result.schedule) {
    write_schedule(*result.schedule, args.out_path + ".schedule");
  }
  return kExitOk;
}

struct SweepArgs {
  std::string config_path;
  std::string out_path = "sweep.csv";
  std::string raw_path;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

int run_sweep_cmd(const SweepArgs& args) {
  hpca::ExperimentSpec spec = hpca::parse_experiment_file(args.config_path);
  if (args.trials) spec.trials = *args.trials;
  if (args.seed) spec.base_seed = *args.seed;
  const hpca::SweepResult result = hpca::run_sweep(spec, args.jobs);
  hpca::emit_csv(result, args.out_path);
  if (!args.raw_path.empty()) {
    hpca::emit_raw_csv(result, args.raw_path);
  }
  std::cout << "wrote " << result.rows.size() << " rows to " << args.out_path << "\n";
  return kExitOk;
}

struct TensorArgs {
  std::string in_path;
  bool generate = false;
  long n = 30;
  long rank = 3;
  double kappa = 1.0;
  double omega = 0.0;
  std::uint64_t seed = 0;
  std::vector<long> ranks;
  std::string init = "deflated";
  std::vector<int> iters;
  double gap_const = 4.0;
  int t_max = 50;
  std::string out_prefix;
  std::string xhat_path;
};

hpca::InitMethod init_from_string(const std::string& name) {
  if (name == "deflated") return hpca::InitMethod::deflated;
  if (name == "hetero") return hpca::InitMethod::heteropca;
  if (name == "diag-del") return hpca::InitMethod::diag_deleted;
  if (name == "svd") return hpca::InitMethod::svd;
  throw hpca::DataError("unknown init method '" + name + "'");
}

int run_tensor(const TensorArgs& args) {
  hpca::Tensor3 y;
  std::optional<hpca::TensorSample> truth;
  if (args.generate) {
    truth = hpca::gen_tensor_model(args.n, args.rank, args.kappa, args.omega, args.seed);
    y = truth->y;
  } else {
    if (args.in_path.empty()) {
      throw hpca::DataError("tensor: need --in FILE or --gen");
    }
    y = hpca::read_tensor(args.in_path);
  }

  std::array<hpca::Index, 3> ranks{};
  if (!args.ranks.empty()) {
    if (args.ranks.size() != 3) {
      throw hpca::DataError("tensor: --ranks expects three values");
    }
    ranks = {args.ranks[0], args.ranks[1], args.ranks[2]};
  } else {
    ranks = {args.rank, args.rank, args.rank};
  }

  hpca::HooiOptions opts;
  opts.init = init_from_string(args.init);
  opts.init_iters = args.iters;
  opts.gap_const = args.gap_const;
  opts.t_max = args.t_max;
  const hpca::HooiResult result = hpca::hooi(y, ranks, opts);

  if (!args.out_prefix.empty()) {
    for (int i = 0; i < 3; ++i) {
      hpca::write_matrix_csv(result.bases[static_cast<std::size_t>(i)].matrix(),
                             args.out_prefix + "_U" + std::to_string(i + 1) + ".csv");
    }
  }
  if (!args.xhat_path.empty()) {
    hpca::write_tensor(result.xhat, args.xhat_path);
  }

  std::cout << "init " << args.init << "\n";
  std::cout << "t_max " << args.t_max << "\n";
  if (truth) {
    for (int i = 0; i < 3; ++i) {
      std::cout << "u" << (i + 1) << "_dist_spectral "
                << hpca::format_real(hpca::dist_spectral(
                       result.bases[static_cast<std::size_t>(i)],
                       truth->factors.bases[static_cast<std::size_t>(i)]))
                << "\n";
    }
    const double err = hpca::tensor_frob(result.xhat - truth->xstar);
    const double scale = hpca::tensor_frob(truth->xstar);
    std::cout << "tensor_err_frob " << hpca::format_real(err) << "\n";
    std::cout << "tensor_err_rel " << hpca::format_real(err / scale) << "\n";
  } else {
    const double res_norm = hpca::tensor_frob(y - result.xhat);
    std::cout << "residual_frob " << hpca::format_real(res_norm) << "\n";
    std::cout << "residual_rel " << hpca::format_real(res_norm / tensor_frob(y)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace estimation under heteroskedastic noise: estimators, "
               "Monte-Carlo sweeps, and the tensor pipeline"};
  app.require_subcommand(1);

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate a column subspace from a CSV matrix");
  estimate->add_option("--in", est.in_path, "Input matrix CSV")->required();
  estimate->add_option("--rank", est.rank, "Target rank")->required();
  estimate->add_option("--method", est.method, "svd | diag-del | hetero | deflated")
      ->check(CLI::IsMember({"svd", "diag-del", "hetero", "deflated"}));
  estimate->add_option("--iters", est.iters,
                       "Iteration counts (per round for deflated; single count for hetero)");
  estimate->add_option("--gap-const", est.gap_const, "Rank-selection ratio threshold (>= 4)");
  estimate->add_option("--t-max", est.t_max, "Iterations for hetero when --iters is not given");
  estimate->add_option("--out", est.out_path, "Output basis CSV")->required();

  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a Monte-Carlo sweep from a config file");
  sweep->add_option("--config", sw.config_path, "Experiment config file")->required();
  sweep->add_option("--out", sw.out_path, "Output CSV path");
  sweep->add_option("--raw", sw.raw_path, "Also write per-trial rows to this CSV");
  sweep->add_option("--trials", sw.trials, "Override the config trial count");
  sweep->add_option("--seed", sw.seed, "Override the config base seed");
  sweep->add_option("--jobs", sw.jobs, "Worker threads (results identical regardless)");

  TensorArgs tn;
  CLI::App* tensor = app.add_subcommand("tensor", "Tucker estimation via HOOI");
  tensor->add_option("--in", tn.in_path, "Input tensor file");
  tensor->add_flag("--gen", tn.generate, "Generate a synthetic model instead of reading a file");
  tensor->add_option("--n", tn.n, "Generated dimension (with --gen)");
  tensor->add_option("--rank", tn.rank, "Rank (used for all modes unless --ranks is given)");
  tensor->add_option("--ranks", tn.ranks, "Per-mode ranks r1 r2 r3")->expected(3);
  tensor->add_option("--kappa", tn.kappa, "Core condition number (with --gen)");
  tensor->add_option("--omega", tn.omega, "Noise level (with --gen)");
  tensor->add_option("--seed", tn.seed, "Seed (with --gen)");
  tensor->add_option("--init", tn.init, "deflated | hetero | diag-del | svd")
      ->check(CLI::IsMember({"deflated", "hetero", "diag-del", "svd"}));
  tensor->add_option("--iters", tn.iters, "Initializer iteration counts");
  tensor->add_option("--gap-const", tn.gap_const, "Rank-selection ratio threshold (>= 4)");
  tensor->add_option("--t-max", tn.t_max, "HOOI rounds");
  tensor->add_option("--out", tn.out_prefix, "Prefix for factor CSVs");
  tensor->add_option("--xhat", tn.xhat_path, "Write the tensor estimate to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (estimate->parsed()) return run_estimate(est);
    if (sweep->parsed()) return run_sweep_cmd(sw);
    if (tensor->parsed()) return run_tensor(tn);
    std::cerr << "no subcommand given\n";
    return kExitUsage;
  } catch (const hpca::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hpca::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hpca::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
