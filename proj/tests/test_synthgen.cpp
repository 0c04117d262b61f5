#include "hpca/synthgen.hpp"

#include "hpca/estimators.hpp"
#include "hpca/linalg.hpp"

#include <doctest.h>

#include <cmath>

using namespace hpca;

namespace {

MatrixModelSpec basic_spec(std::uint64_t seed) {
  MatrixModelSpec spec;
  spec.n1 = 30;
  spec.n2 = 80;
  spec.r = 3;
  spec.singular_values.resize(3);
  spec.singular_values << 9.0, 4.0, 2.0;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("gen_low_rank reproduces the requested spectrum") {
  const MatrixModelSpec spec = basic_spec(2024);
  const LowRankSignal s = gen_low_rank(spec);
  const ThinSvd svd = thin_svd(s.xstar, 3);
  for (Index i = 0; i < 3; ++i) {
    CHECK(svd.values(i) ==
          doctest::Approx(spec.singular_values(i)).epsilon(1e-9));
  }
  // rank exactly r
  const ThinSvd wide = thin_svd(s.xstar, 4);
  CHECK(wide.values(3) <= 1e-9 * spec.singular_values(0));
}

TEST_CASE("gen_low_rank is deterministic and noise-independent") {
  const MatrixModelSpec spec = basic_spec(555);
  const LowRankSignal a = gen_low_rank(spec);
  const LowRankSignal b = gen_low_rank(spec);
  CHECK(a.xstar == b.xstar);
  CHECK(a.ustar.matrix() == b.ustar.matrix());

  // the noise substreams are disjoint from the signal substreams
  const HeteroNoise n1 = gen_hetero_noise(30, 80, 1.0, 555);
  const HeteroNoise n2 = gen_hetero_noise(30, 80, 2.5, 555);
  const LowRankSignal c = gen_low_rank(spec);
  CHECK(c.xstar == a.xstar);
  CHECK((n1.e - n2.e).cwiseAbs().maxCoeff() > 0.0);
  // same uniform draws, scaled
  CHECK((2.5 * n1.e - n2.e).cwiseAbs().maxCoeff() <= 1e-12 * n2.e.cwiseAbs().maxCoeff());
}

TEST_CASE("gen_hetero_noise matches its per-row variances") {
  CHECK(gen_hetero_noise(4, 6, 0.0, 9).e == Matrix::Zero(4, 6));

  const Index n1 = 12, n2 = 10000;
  const HeteroNoise noise = gen_hetero_noise(n1, n2, 2.0, 31);
  for (Index i = 0; i < n1; ++i) {
    const double var_i = noise.omega_rows(i) * noise.omega_rows(i);
    const double sample_var = noise.e.row(i).squaredNorm() / static_cast<double>(n2);
    if (var_i > 1e-12) {
      CHECK(sample_var == doctest::Approx(var_i).epsilon(0.10));
    }
    const double mean = noise.e.row(i).mean();
    CHECK(std::abs(mean) <=
          4.0 * noise.omega_rows(i) / std::sqrt(static_cast<double>(n2)) + 1e-12);
  }
}

TEST_CASE("noise_params") {
  const Matrix constant = Matrix::Constant(3, 5, 4.0);  // omega^2 = 4
  const NoiseParams p = noise_params(constant);
  CHECK(p.omega_max == doctest::Approx(2.0));
  CHECK(p.omega_row == doctest::Approx(2.0 * std::sqrt(5.0)));
  CHECK(p.omega_col == doctest::Approx(2.0 * std::sqrt(3.0)));

  Matrix single = Matrix::Zero(4, 4);
  single(2, 1) = 2.25;
  const NoiseParams q = noise_params(single);
  CHECK(q.omega_max == doctest::Approx(1.5));
  CHECK(q.omega_row == doctest::Approx(1.5));
  CHECK(q.omega_col == doctest::Approx(1.5));

  // naive double-loop oracle
  RngStream rng(71, 3);
  Matrix v(6, 9);
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < 9; ++j) {
      v(i, j) = rng.uniform01();
    }
  }
  double row_best = 0.0, col_best = 0.0, max_best = 0.0;
  for (Index i = 0; i < 6; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < 9; ++j) acc += v(i, j);
    row_best = std::max(row_best, acc);
  }
  for (Index j = 0; j < 9; ++j) {
    double acc = 0.0;
    for (Index i = 0; i < 6; ++i) acc += v(i, j);
    col_best = std::max(col_best, acc);
  }
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < 9; ++j) max_best = std::max(max_best, v(i, j));
  }
  const NoiseParams r = noise_params(v);
  CHECK(r.omega_max == std::sqrt(max_best));
  CHECK(r.omega_row == std::sqrt(row_best));
  CHECK(r.omega_col == std::sqrt(col_best));
  CHECK(r.omega_max <= std::min(r.omega_row, r.omega_col));

  Matrix negative = Matrix::Constant(2, 2, -1.0);
  CHECK_THROWS_AS(noise_params(negative), ContractError);
}

TEST_CASE("gen_factor_model shapes and recovery") {
  Vector lambdas(3);
  lambdas << 4.0, 2.0, 1.0;
  const FactorSample sample = gen_factor_model(20, 2000, 3, lambdas, 0.0, 13);
  CHECK(sample.y.rows() == 20);
  CHECK(sample.y.cols() == 2000);

  // omega = 0 and n >> d: plain SVD gets close to the loading subspace
  const EstimatorResult svd = vanilla_svd_estimate(sample.y, 3);
  CHECK(dist_spectral(svd.basis, sample.ustar) <= 0.1);
}

TEST_CASE("gen_factor_model second-moment identity") {
  // conditional on the drawn noise levels, E ||y_j||^2 = sum(lambda) + sum_i omega_i^2;
  // the same seed reproduces exactly the levels the factor model used
  Vector lambdas(3);
  lambdas << 4.0, 2.0, 1.0;
  const Index d = 50, n = 4000;
  const double omega = 1.0;
  const FactorSample sample = gen_factor_model(d, n, 3, lambdas, omega, 17);
  const Vector omega_rows = gen_hetero_noise(d, n, omega, 17).omega_rows;
  const double mean_sq = sample.y.colwise().squaredNorm().mean();
  const double expected = lambdas.sum() + omega_rows.squaredNorm();
  CHECK(mean_sq == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("gen_poisson_pca construction") {
  const PoissonSample sample = gen_poisson_pca(15, 25, 3, 5.0, 21);
  CHECK(sample.xstar.minCoeff() > 0.0);
  CHECK(sample.y.rows() == 15);
  CHECK(sample.ustar.rank() == 3);
  // counts are nonnegative integers
  for (Index i = 0; i < sample.y.rows(); ++i) {
    for (Index j = 0; j < sample.y.cols(); ++j) {
      CHECK(sample.y(i, j) >= 0.0);
      CHECK(sample.y(i, j) == std::floor(sample.y(i, j)));
    }
  }
}

TEST_CASE("gen_poisson_pca Monte-Carlo mean and variance") {
  // per-seed centered residuals at a fixed entry: z = Y - X* has mean 0 and
  // variance X* conditionally on the seed, so the averages below vanish
  const Index n1 = 4, n2 = 5;
  const int redraws = 10000;
  double sum_z = 0.0;
  double sum_var_gap = 0.0;
  double sum_mean = 0.0;
  for (int t = 0; t < redraws; ++t) {
    const PoissonSample sample = gen_poisson_pca(n1, n2, 2, 4.0, 1000 + t);
    const double z = sample.y(1, 2) - sample.xstar(1, 2);
    sum_z += z;
    sum_var_gap += z * z - sample.xstar(1, 2);
    sum_mean += sample.xstar(1, 2);
  }
  const double avg_mean = sum_mean / redraws;
  CHECK(std::abs(sum_z / redraws) <= 0.05 * avg_mean);
  CHECK(std::abs(sum_var_gap / redraws) <= 0.10 * avg_mean);
}

TEST_CASE("gen_tensor_model noiseless structure") {
  const TensorSample sample = gen_tensor_model(12, 3, 6.0, 0.0, 29);
  const double sigma = std::pow(12.0, 0.75);
  const ThinSvd svd = thin_svd(matricize(sample.y, 1), 4);
  CHECK(svd.values(0) == doctest::Approx(6.0 * sigma).epsilon(1e-9));
  CHECK(svd.values(1) == doctest::Approx(sigma).epsilon(1e-9));
  CHECK(svd.values(2) == doctest::Approx(sigma).epsilon(1e-9));
  CHECK(svd.values(3) <= 1e-9 * 6.0 * sigma);

  // sigma at n = 50 to four significant figures
  CHECK(std::abs(std::pow(50.0, 0.75) - 18.80) < 0.005);
}

TEST_CASE("gen_tensor_model separable noise variance") {
  // standardize the residual at one index with that seed's own scales; the
  // result is standard normal, so its sample variance concentrates at 1
  const Index n = 4;
  const double omega = 2.0;
  const int redraws = 10000;
  double sumsq = 0.0;
  for (int t = 0; t < redraws; ++t) {
    const TensorSample sample = gen_tensor_model(n, 1, 1.0, omega, 5000 + t);
    const double scale = omega * sample.alpha(1) * sample.beta(2) * sample.gamma(3);
    const double z = (sample.y(1, 2, 3) - sample.xstar(1, 2, 3)) / scale;
    sumsq += z * z;
  }
  CHECK(sumsq / redraws == doctest::Approx(1.0).epsilon(0.10));
}
