#include "hpca/synthgen.hpp"

#include "hpca/linalg.hpp"

#include <cmath>

namespace hpca {

namespace {

// Substream ids; signal and noise streams never overlap.
namespace stream {
constexpr std::uint64_t signal_u = 1;
constexpr std::uint64_t signal_v = 2;
constexpr std::uint64_t noise_levels = 3;
constexpr std::uint64_t noise_entries = 4;
constexpr std::uint64_t factor_scores = 5;
constexpr std::uint64_t poisson_u = 6;
constexpr std::uint64_t poisson_v = 7;
constexpr std::uint64_t poisson_counts = 8;
constexpr std::uint64_t tensor_u1 = 9;
constexpr std::uint64_t tensor_u2 = 10;
constexpr std::uint64_t tensor_u3 = 11;
constexpr std::uint64_t tensor_scales = 12;
constexpr std::uint64_t tensor_noise = 13;
}  // namespace stream

// Column-major fill of iid standard normals.
Matrix gaussian_matrix(Index rows, Index cols, RngStream& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = rng.gaussian();
    }
  }
  return m;
}

}  // namespace

OrthonormalBasis random_orthonormal(Index n, Index r, RngStream& rng) {
  if (r < 1 || r > n) {
    throw DimensionError("random_orthonormal: rank out of range");
  }
  const Matrix a = gaussian_matrix(n, r, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, r);
  const Matrix rfac = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  for (Index j = 0; j < r; ++j) {
    if (rfac(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return OrthonormalBasis(std::move(q));
}

LowRankSignal gen_low_rank(const MatrixModelSpec& spec) {
  if (spec.r < 1 || spec.r > std::min(spec.n1, spec.n2)) {
    throw DimensionError("gen_low_rank: rank out of range");
  }
  if (spec.singular_values.size() != spec.r) {
    throw ContractError("gen_low_rank: need one singular value per rank");
  }
  for (Index i = 0; i < spec.r; ++i) {
    if (!(spec.singular_values(i) > 0.0)) {
      throw ContractError("gen_low_rank: singular values must be positive");
    }
    if (i > 0 && spec.singular_values(i) > spec.singular_values(i - 1)) {
      throw ContractError("gen_low_rank: singular values must be nonincreasing");
    }
  }

  RngStream rng_u(spec.seed, stream::signal_u);
  RngStream rng_v(spec.seed, stream::signal_v);
  LowRankSignal out;
  out.ustar = random_orthonormal(spec.n1, spec.r, rng_u);
  out.vstar = random_orthonormal(spec.n2, spec.r, rng_v);
  out.xstar = out.ustar.matrix() * spec.singular_values.asDiagonal() *
              out.vstar.matrix().transpose();
  return out;
}

HeteroNoise gen_hetero_noise(Index n1, Index n2, double omega, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1) {
    throw DimensionError("gen_hetero_noise: dimensions must be positive");
  }
  if (!(omega >= 0.0)) {
    throw ContractError("gen_hetero_noise: omega must be nonnegative");
  }
  RngStream rng_levels(seed, stream::noise_levels);
  RngStream rng_entries(seed, stream::noise_entries);

  HeteroNoise out;
  out.omega_rows.resize(n1);
  for (Index i = 0; i < n1; ++i) {
    out.omega_rows(i) = omega * rng_levels.uniform01();
  }
  out.e.resize(n1, n2);
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      out.e(i, j) = out.omega_rows(i) * rng_entries.gaussian();
    }
  }
  return out;
}

NoiseParams noise_params(const Matrix& variance_matrix) {
  if (variance_matrix.size() == 0) {
    throw DimensionError("noise_params: empty input");
  }
  if ((variance_matrix.array() < 0.0).any()) {
    throw ContractError("noise_params: variances must be nonnegative");
  }
  // plain index-order accumulation so results match a naive evaluation exactly
  double max_sq = 0.0, row_best = 0.0, col_best = 0.0;
  for (Index i = 0; i < variance_matrix.rows(); ++i) {
    double acc = 0.0;
    for (Index j = 0; j < variance_matrix.cols(); ++j) {
      acc += variance_matrix(i, j);
      max_sq = std::max(max_sq, variance_matrix(i, j));
    }
    row_best = std::max(row_best, acc);
  }
  for (Index j = 0; j < variance_matrix.cols(); ++j) {
    double acc = 0.0;
    for (Index i = 0; i < variance_matrix.rows(); ++i) {
      acc += variance_matrix(i, j);
    }
    col_best = std::max(col_best, acc);
  }
  NoiseParams out;
  out.omega_max = std::sqrt(max_sq);
  out.omega_row = std::sqrt(row_best);
  out.omega_col = std::sqrt(col_best);
  return out;
}

FactorSample gen_factor_model(Index d, Index n, Index r, const Vector& eigenvalues,
                              double omega, std::uint64_t seed) {
  if (r < 1 || r > d) {
    throw DimensionError("gen_factor_model: rank out of range");
  }
  if (eigenvalues.size() != r) {
    throw ContractError("gen_factor_model: need one eigenvalue per rank");
  }
  for (Index i = 0; i < r; ++i) {
    if (!(eigenvalues(i) > 0.0)) {
      throw ContractError("gen_factor_model: eigenvalues must be positive");
    }
    if (i > 0 && eigenvalues(i) > eigenvalues(i - 1)) {
      throw ContractError("gen_factor_model: eigenvalues must be nonincreasing");
    }
  }

  RngStream rng_u(seed, stream::signal_u);
  RngStream rng_f(seed, stream::factor_scores);
  FactorSample out;
  out.ustar = random_orthonormal(d, r, rng_u);
  const Matrix scores = gaussian_matrix(r, n, rng_f);
  const HeteroNoise noise = gen_hetero_noise(d, n, omega, seed);
  out.y = out.ustar.matrix() * eigenvalues.cwiseSqrt().asDiagonal() * scores + noise.e;
  return out;
}

PoissonSample gen_poisson_pca(Index n1, Index n2, Index r, double lambda_scale,
                              std::uint64_t seed) {
  if (r < 1 || r > std::min(n1, n2)) {
    throw DimensionError("gen_poisson_pca: rank out of range");
  }
  if (!(lambda_scale > 0.0)) {
    throw ContractError("gen_poisson_pca: lambda_scale must be positive");
  }

  RngStream rng_u(seed, stream::poisson_u);
  RngStream rng_v(seed, stream::poisson_v);
  const Matrix ubar = gaussian_matrix(n1, r, rng_u).cwiseAbs();
  const Matrix vbar = gaussian_matrix(n2, r, rng_v).cwiseAbs();
  Vector scales(r);
  scales(0) = lambda_scale * lambda_scale / 5.0;
  for (Index i = 1; i < r; ++i) {
    scales(i) = lambda_scale / 5.0;
  }

  PoissonSample out;
  out.xstar = ubar * scales.asDiagonal() * vbar.transpose();
  if (out.xstar.minCoeff() <= 0.0) {
    throw ContractError("gen_poisson_pca: signal must be entrywise positive");
  }
  RngStream rng_counts(seed, stream::poisson_counts);
  out.y.resize(n1, n2);
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      out.y(i, j) = static_cast<double>(rng_counts.poisson(out.xstar(i, j)));
    }
  }
  out.ustar = thin_svd(out.xstar, r).left;
  return out;
}

TensorSample gen_tensor_model(Index n, Index r, double kappa, double omega,
                              std::uint64_t seed) {
  if (r < 1 || r > n) {
    throw DimensionError("gen_tensor_model: rank out of range");
  }
  if (!(kappa >= 1.0)) {
    throw ContractError("gen_tensor_model: kappa must be at least 1");
  }
  if (!(omega >= 0.0)) {
    throw ContractError("gen_tensor_model: omega must be nonnegative");
  }

  const double sigma = std::pow(static_cast<double>(n), 0.75);
  RngStream rng_u1(seed, stream::tensor_u1);
  RngStream rng_u2(seed, stream::tensor_u2);
  RngStream rng_u3(seed, stream::tensor_u3);

  TensorSample out;
  out.factors.bases[0] = random_orthonormal(n, r, rng_u1);
  out.factors.bases[1] = random_orthonormal(n, r, rng_u2);
  out.factors.bases[2] = random_orthonormal(n, r, rng_u3);
  out.factors.core = Tensor3(r, r, r);
  out.factors.core(0, 0, 0) = kappa * sigma;
  for (Index i = 1; i < r; ++i) {
    out.factors.core(i, i, i) = sigma;
  }

  out.xstar = mode_product(out.factors.core, 1, out.factors.bases[0].matrix());
  out.xstar = mode_product(out.xstar, 2, out.factors.bases[1].matrix());
  out.xstar = mode_product(out.xstar, 3, out.factors.bases[2].matrix());

  RngStream rng_scales(seed, stream::tensor_scales);
  out.alpha.resize(n);
  out.beta.resize(n);
  out.gamma.resize(n);
  for (Index i = 0; i < n; ++i) out.alpha(i) = rng_scales.uniform01();
  for (Index i = 0; i < n; ++i) out.beta(i) = rng_scales.uniform01();
  for (Index i = 0; i < n; ++i) out.gamma(i) = rng_scales.uniform01();

  RngStream rng_noise(seed, stream::tensor_noise);
  out.y = out.xstar;
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        out.y(i, j, k) +=
            omega * out.alpha(i) * out.beta(j) * out.gamma(k) * rng_noise.gaussian();
      }
    }
  }
  return out;
}

}  // namespace hpca
