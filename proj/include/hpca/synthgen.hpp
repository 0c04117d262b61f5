#pragma once

#include "hpca/rng.hpp"
#include "hpca/tensor.hpp"
#include "hpca/types.hpp"

#include <cstdint>

namespace hpca {

// All generators are pure functions of their parameters and seed. Signal and
// noise draws come from disjoint substreams of the seed, so e.g. changing the
// noise level never changes the generated signal.

struct NoiseSpec {
  enum class Kind { none, row_hetero_gaussian, poisson, tensor_separable };
  Kind kind = Kind::none;
  double omega = 0.0;
};

struct MatrixModelSpec {
  Index n1 = 0;
  Index n2 = 0;
  Index r = 0;
  Vector singular_values;  // positive, nonincreasing, length r
  NoiseSpec noise;
  std::uint64_t seed = 0;
};

struct NoiseParams {
  double omega_max = 0.0;
  double omega_row = 0.0;
  double omega_col = 0.0;
};

// Gaussian matrix orthonormalized by Householder QR with the signs fixed so
// the R factor has a positive diagonal.
OrthonormalBasis random_orthonormal(Index n, Index r, RngStream& rng);

struct LowRankSignal {
  Matrix xstar;
  OrthonormalBasis ustar;
  OrthonormalBasis vstar;
};

// X* = U* diag(sigma) V*^T with random orthonormal factors.
LowRankSignal gen_low_rank(const MatrixModelSpec& spec);

struct HeteroNoise {
  Matrix e;
  Vector omega_rows;
};

// Row-heteroskedastic Gaussian noise: omega_i ~ Unif[0, omega] per row,
// E_{i,j} ~ N(0, omega_i^2) independent.
HeteroNoise gen_hetero_noise(Index n1, Index n2, double omega, std::uint64_t seed);

// omega_max / omega_row / omega_col aggregates of an entrywise variance matrix.
NoiseParams noise_params(const Matrix& variance_matrix);

struct FactorSample {
  Matrix y;
  OrthonormalBasis ustar;
};

// Y = U* diag(sqrt(lambda)) F + E with iid standard normal scores F (r x n)
// and row-heteroskedastic noise.
FactorSample gen_factor_model(Index d, Index n, Index r, const Vector& eigenvalues,
                              double omega, std::uint64_t seed);

struct PoissonSample {
  Matrix y;
  Matrix xstar;
  OrthonormalBasis ustar;
};

// Entrywise-positive signal Ubar Lambdabar Vbar^T built from absolute-value
// Gaussian factors and Lambdabar = (1/5) diag(lambda^2, lambda, ..., lambda);
// observations are independent Poisson counts with those means.
PoissonSample gen_poisson_pca(Index n1, Index n2, Index r, double lambda_scale,
                              std::uint64_t seed);

struct TensorSample {
  Tensor3 y;
  Tensor3 xstar;
  TuckerFactors factors;
  Vector alpha, beta, gamma;  // separable noise scales actually drawn
};

// Superdiagonal core with entries (kappa * sigma, sigma, ..., sigma) where
// sigma = n^{3/4}, random orthonormal factors, and separable heteroskedastic
// Gaussian noise E_{i,j,k} ~ N(0, omega^2 alpha_i^2 beta_j^2 gamma_k^2) with
// alpha, beta, gamma drawn uniformly from [0, 1].
TensorSample gen_tensor_model(Index n, Index r, double kappa, double omega,
                              std::uint64_t seed);

}  // namespace hpca
