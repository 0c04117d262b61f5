#include "hpca/bench.hpp"

#include "hpca/estimators.hpp"
#include "hpca/io.hpp"
#include "hpca/linalg.hpp"
#include "hpca/rng.hpp"
#include "hpca/synthgen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hpca {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::matrix: return "matrix";
    case ModelKind::factor: return "factor";
    case ModelKind::poisson: return "poisson";
    case ModelKind::tensor: return "tensor";
  }
  return "?";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::svd: return "svd";
    case Method::diag_del: return "diag-del";
    case Method::hetero: return "hetero";
    case Method::deflated: return "deflated";
  }
  return "?";
}

ModelKind model_from_string(const std::string& name) {
  if (name == "matrix") return ModelKind::matrix;
  if (name == "factor") return ModelKind::factor;
  if (name == "poisson") return ModelKind::poisson;
  if (name == "tensor") return ModelKind::tensor;
  throw DataError("unknown model kind '" + name + "'");
}

Method method_from_string(const std::string& name) {
  if (name == "svd") return Method::svd;
  if (name == "diag-del") return Method::diag_del;
  if (name == "hetero") return Method::hetero;
  if (name == "deflated") return Method::deflated;
  throw DataError("unknown method '" + name + "'");
}

namespace {

const std::set<std::string>& model_param_keys(ModelKind kind) {
  static const std::set<std::string> matrix_keys{"n1", "n2", "r", "kappa", "omega", "sigma_r"};
  static const std::set<std::string> factor_keys{"d", "n", "r", "kappa", "omega", "lambda_r"};
  static const std::set<std::string> poisson_keys{"n1", "n2", "r", "lambda"};
  static const std::set<std::string> tensor_keys{"n", "r", "kappa", "omega"};
  switch (kind) {
    case ModelKind::matrix: return matrix_keys;
    case ModelKind::factor: return factor_keys;
    case ModelKind::poisson: return poisson_keys;
    case ModelKind::tensor: return tensor_keys;
  }
  throw DataError("unknown model kind");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

double parse_number(const std::string& value, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') {
    throw DataError(context + ": cannot parse '" + value + "' as a number");
  }
  return v;
}

Index as_index(const ExperimentSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw DataError("missing model parameter '" + key + "'");
  }
  const double v = it->second;
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw DataError("model parameter '" + key + "' must be a positive integer");
  }
  return static_cast<Index>(v);
}

double as_real(const ExperimentSpec& spec, const std::string& key, double fallback,
               bool has_fallback) {
  const auto it = spec.params.find(key);
  if (it != spec.params.end()) {
    return it->second;
  }
  if (has_fallback) {
    return fallback;
  }
  throw DataError("missing model parameter '" + key + "'");
}

}  // namespace

ExperimentSpec parse_experiment_text(const std::string& text, const std::string& origin) {
  ExperimentSpec spec;
  bool have_kind = false, have_sweep = false, have_grid = false;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, double> raw_params;

  auto fail = [&](const std::string& msg) {
    throw DataError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) {
      line = line.substr(0, comment);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "sweep" && section != "run") {
        fail("unknown section '" + section + "'");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail("expected 'key = value'");

    if (section == "model") {
      if (key == "kind") {
        spec.model = model_from_string(value);
        have_kind = true;
      } else {
        raw_params[key] = parse_number(value, origin);
      }
    } else if (section == "sweep") {
      if (key == "variable") {
        spec.sweep_name = value;
        have_sweep = true;
      } else if (key == "grid") {
        for (const std::string& item : split_list(value)) {
          spec.grid.push_back(parse_number(item, origin));
        }
        have_grid = true;
      } else {
        fail("unknown key '" + key + "' in [sweep]");
      }
    } else if (section == "run") {
      if (key == "methods") {
        for (const std::string& item : split_list(value)) {
          spec.methods.push_back(method_from_string(item));
        }
      } else if (key == "trials") {
        spec.trials = static_cast<int>(parse_number(value, origin));
      } else if (key == "seed") {
        spec.base_seed = static_cast<std::uint64_t>(parse_number(value, origin));
      } else if (key == "t_max") {
        spec.t_max = static_cast<int>(parse_number(value, origin));
      } else if (key == "iters") {
        for (const std::string& item : split_list(value)) {
          spec.iters.push_back(static_cast<int>(parse_number(item, origin)));
        }
      } else if (key == "gap_const") {
        spec.gap_const = parse_number(value, origin);
      } else {
        fail("unknown key '" + key + "' in [run]");
      }
    } else {
      fail("key outside of any section");
    }
  }

  if (!have_kind) throw DataError(origin + ": missing model kind");
  const auto& allowed = model_param_keys(spec.model);
  for (const auto& [key, value] : raw_params) {
    if (!allowed.count(key)) {
      throw DataError(origin + ": unknown key '" + key + "' for model '" +
                      to_string(spec.model) + "'");
    }
    spec.params[key] = value;
  }
  if (!have_sweep || !have_grid || spec.grid.empty()) {
    throw DataError(origin + ": [sweep] must set variable and a nonempty grid");
  }
  if (!allowed.count(spec.sweep_name)) {
    throw DataError(origin + ": sweep variable '" + spec.sweep_name +
                    "' is not a parameter of model '" + to_string(spec.model) + "'");
  }
  if (spec.methods.empty()) {
    throw DataError(origin + ": [run] must list at least one method");
  }
  if (spec.trials < 1) {
    throw DataError(origin + ": trials must be at least 1");
  }
  return spec;
}

ExperimentSpec parse_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(path + ": cannot open for reading");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_text(buffer.str(), path);
}

std::uint64_t trial_seed(const ExperimentSpec& spec, Index grid_index, int trial_index) {
  std::uint64_t h = mix64(spec.base_seed);
  h = hash_combine(h, static_cast<std::uint64_t>(spec.model) + 1);
  h = hash_combine(h, static_cast<std::uint64_t>(grid_index));
  h = hash_combine(h, static_cast<std::uint64_t>(trial_index));
  return h;
}

namespace {

struct TrialData {
  Matrix y;
  OrthonormalBasis ustar;
};

TrialData build_matrix_trial(const ExperimentSpec& spec, std::uint64_t seed) {
  MatrixModelSpec model;
  model.n1 = as_index(spec, "n1");
  model.n2 = as_index(spec, "n2");
  model.r = as_index(spec, "r");
  const double kappa = as_real(spec, "kappa", 1.0, true);
  const double omega = as_real(spec, "omega", 0.0, true);
  const double sigma_r = as_real(
      spec, "sigma_r",
      std::pow(static_cast<double>(model.n1) * static_cast<double>(model.n2), 0.25) +
          std::sqrt(static_cast<double>(model.n1)),
      true);
  model.singular_values.resize(model.r);
  model.singular_values(0) = kappa * sigma_r;
  for (Index i = 1; i < model.r; ++i) {
    model.singular_values(i) = sigma_r;
  }
  model.seed = seed;

  const LowRankSignal signal = gen_low_rank(model);
  TrialData data;
  data.ustar = signal.ustar;
  if (omega > 0.0) {
    data.y = signal.xstar + gen_hetero_noise(model.n1, model.n2, omega, seed).e;
  } else {
    data.y = signal.xstar;
  }
  return data;
}

TrialData build_factor_trial(const ExperimentSpec& spec, std::uint64_t seed) {
  const Index d = as_index(spec, "d");
  const Index n = as_index(spec, "n");
  const Index r = as_index(spec, "r");
  const double kappa = as_real(spec, "kappa", 1.0, true);
  const double omega = as_real(spec, "omega", 0.0, true);
  const double lambda_r = as_real(
      spec, "lambda_r",
      std::sqrt(static_cast<double>(d) / static_cast<double>(n)) +
          static_cast<double>(d) / static_cast<double>(n),
      true);
  Vector lambdas(r);
  lambdas(0) = kappa * lambda_r;
  for (Index i = 1; i < r; ++i) {
    lambdas(i) = lambda_r;
  }
  const FactorSample sample = gen_factor_model(d, n, r, lambdas, omega, seed);
  return {sample.y, sample.ustar};
}

TrialData build_poisson_trial(const ExperimentSpec& spec, std::uint64_t seed) {
  const Index n1 = as_index(spec, "n1");
  const Index n2 = as_index(spec, "n2");
  const Index r = as_index(spec, "r");
  const double lambda = as_real(spec, "lambda", 0.0, false);
  const PoissonSample sample = gen_poisson_pca(n1, n2, r, lambda, seed);
  return {sample.y, sample.ustar};
}

TrialData build_tensor_trial(const ExperimentSpec& spec, std::uint64_t seed) {
  const Index n = as_index(spec, "n");
  const Index r = as_index(spec, "r");
  const double kappa = as_real(spec, "kappa", 1.0, true);
  const double omega = as_real(spec, "omega", 0.0, true);
  const TensorSample sample = gen_tensor_model(n, r, kappa, omega, seed);
  // Mode-1 estimation problem; the initial-estimator errors are what the
  // sweep reports for tensor models.
  return {matricize(sample.y, 1), sample.factors.bases[0]};
}

TrialData build_trial_data(const ExperimentSpec& spec, std::uint64_t seed) {
  switch (spec.model) {
    case ModelKind::matrix: return build_matrix_trial(spec, seed);
    case ModelKind::factor: return build_factor_trial(spec, seed);
    case ModelKind::poisson: return build_poisson_trial(spec, seed);
    case ModelKind::tensor: return build_tensor_trial(spec, seed);
  }
  throw DataError("unknown model kind");
}

OrthonormalBasis run_method(const ExperimentSpec& spec, Method method, const Matrix& y,
                            Index r) {
  switch (method) {
    case Method::svd:
      return vanilla_svd_estimate(y, r).basis;
    case Method::diag_del:
      return diag_deleted_estimate(y, r).basis;
    case Method::hetero:
      return heteropca(gram_offdiag(y), r, spec.t_max).basis;
    case Method::deflated: {
      DeflatedOptions opts;
      opts.iters = spec.iters;
      opts.gap_const = spec.gap_const;
      return deflated_heteropca(y, r, opts).basis;
    }
  }
  throw DataError("unknown method");
}

}  // namespace

TrialOutcome run_trial(const ExperimentSpec& spec, Index grid_index, Method method,
                       int trial_index) {
  if (grid_index < 0 || grid_index >= static_cast<Index>(spec.grid.size())) {
    throw ContractError("run_trial: grid index out of range");
  }
  ExperimentSpec point = spec;
  point.params[spec.sweep_name] = spec.grid[static_cast<std::size_t>(grid_index)];

  const std::uint64_t seed = trial_seed(spec, grid_index, trial_index);
  const TrialData data = build_trial_data(point, seed);
  const Index r = as_index(point, "r");
  const OrthonormalBasis estimate = run_method(point, method, data.y, r);
  return {dist_spectral(estimate, data.ustar), dist_two_inf(estimate, data.ustar)};
}

SweepResult run_sweep(const ExperimentSpec& spec, int jobs) {
  if (jobs < 1) {
    throw ContractError("run_sweep: jobs must be at least 1");
  }
  const std::size_t n_methods = spec.methods.size();
  const std::size_t n_grid = spec.grid.size();
  const std::size_t n_trials = static_cast<std::size_t>(spec.trials);
  const std::size_t n_cells = n_methods * n_grid * n_trials;

  std::vector<TrialOutcome> outcomes(n_cells);
  std::vector<double> cell_seconds(n_cells, 0.0);
  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::string first_error;

  auto worker = [&]() {
    while (true) {
      const std::size_t idx = cursor.fetch_add(1);
      if (idx >= n_cells) {
        return;
      }
      const std::size_t mi = idx / (n_grid * n_trials);
      const std::size_t gi = (idx / n_trials) % n_grid;
      const int trial = static_cast<int>(idx % n_trials);
      const Method method = spec.methods[mi];
      try {
        const auto start = std::chrono::steady_clock::now();
        outcomes[idx] = run_trial(spec, static_cast<Index>(gi), method, trial);
        const auto stop = std::chrono::steady_clock::now();
        cell_seconds[idx] = std::chrono::duration<double>(stop - start).count();
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) {
          first_error = "trial failed (method=" + to_string(method) +
                        ", " + spec.sweep_name + "=" +
                        format_real(spec.grid[gi]) + ", trial=" +
                        std::to_string(trial) + "): " + e.what();
        }
        cursor.store(n_cells);  // stop scheduling further cells
        return;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n_cells);
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (!first_error.empty()) {
    throw DataError(first_error);
  }

  SweepResult result;
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    for (std::size_t gi = 0; gi < n_grid; ++gi) {
      SweepRow row;
      row.method = spec.methods[mi];
      row.sweep_name = spec.sweep_name;
      row.sweep_value = spec.grid[gi];
      row.trials = spec.trials;
      double sum_l2 = 0.0, sum_2inf = 0.0, sum_sec = 0.0;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const std::size_t idx = (mi * n_grid + gi) * n_trials + t;
        sum_l2 += outcomes[idx].err_l2;
        sum_2inf += outcomes[idx].err_2inf;
        sum_sec += cell_seconds[idx];
        RawRow raw;
        raw.method = spec.methods[mi];
        raw.sweep_name = spec.sweep_name;
        raw.sweep_value = spec.grid[gi];
        raw.trial = static_cast<int>(t);
        raw.err_l2 = outcomes[idx].err_l2;
        raw.err_2inf = outcomes[idx].err_2inf;
        result.raw.push_back(raw);
      }
      row.err_l2 = sum_l2 / static_cast<double>(spec.trials);
      row.err_2inf = sum_2inf / static_cast<double>(spec.trials);
      row.seconds = sum_sec;
      result.rows.push_back(row);
    }
  }

  auto row_key = [](const SweepRow& r) { return std::make_pair(to_string(r.method), r.sweep_value); };
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [&](const SweepRow& a, const SweepRow& b) { return row_key(a) < row_key(b); });
  std::stable_sort(result.raw.begin(), result.raw.end(), [](const RawRow& a, const RawRow& b) {
    return std::make_tuple(to_string(a.method), a.sweep_value, a.trial) <
           std::make_tuple(to_string(b.method), b.sweep_value, b.trial);
  });
  return result;
}

std::string format_csv(const SweepResult& result) {
  std::string out = "method,sweep_name,sweep_value,err_l2,err_2inf,trials,seconds\n";
  for (const SweepRow& row : result.rows) {
    out += to_string(row.method);
    out += ',' + row.sweep_name;
    out += ',' + format_real(row.sweep_value);
    out += ',' + format_real(row.err_l2);
    out += ',' + format_real(row.err_2inf);
    out += ',' + std::to_string(row.trials);
    out += ',' + format_real(row.seconds);
    out += '\n';
  }
  return out;
}

std::string format_raw_csv(const SweepResult& result) {
  std::string out = "method,sweep_name,sweep_value,trial,err_l2,err_2inf\n";
  for (const RawRow& row : result.raw) {
    out += to_string(row.method);
    out += ',' + row.sweep_name;
    out += ',' + format_real(row.sweep_value);
    out += ',' + std::to_string(row.trial);
    out += ',' + format_real(row.err_l2);
    out += ',' + format_real(row.err_2inf);
    out += '\n';
  }
  return out;
}

namespace {

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError(path + ": cannot open for writing");
  }
  out << text;
  if (!out) {
    throw DataError(path + ": write failed");
  }
}

}  // namespace

void emit_csv(const SweepResult& result, const std::string& path) {
  write_text(format_csv(result), path);
}

void emit_raw_csv(const SweepResult& result, const std::string& path) {
  write_text(format_raw_csv(result), path);
}

}  // namespace hpca
