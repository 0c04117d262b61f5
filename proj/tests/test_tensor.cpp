#include "hpca/tensor.hpp"

#include "hpca/estimators.hpp"
#include "hpca/linalg.hpp"
#include "hpca/rng.hpp"
#include "hpca/synthgen.hpp"

#include <doctest.h>

#include <cmath>

using namespace hpca;

namespace {

Tensor3 random_tensor(Index n1, Index n2, Index n3, RngStream& rng) {
  Tensor3 t(n1, n2, n3);
  for (Index k = 0; k < n3; ++k) {
    for (Index j = 0; j < n2; ++j) {
      for (Index i = 0; i < n1; ++i) {
        t(i, j, k) = rng.gaussian();
      }
    }
  }
  return t;
}

Matrix random_matrix(Index rows, Index cols, RngStream& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = rng.gaussian();
    }
  }
  return m;
}

}  // namespace

TEST_CASE("matricization index maps") {
  // the entry at one-based position (1,2,1) of a 2x2x2 tensor lands at
  // M1 (1,2), M2 (2,1), M3 (1,3) in one-based coordinates
  Tensor3 x(2, 2, 2);
  x(0, 1, 0) = 7.0;
  CHECK(matricize(x, 1)(0, 1) == 7.0);
  CHECK(matricize(x, 2)(1, 0) == 7.0);
  CHECK(matricize(x, 3)(0, 2) == 7.0);

  Tensor3 corner(2, 3, 4);
  corner(0, 0, 0) = 1.5;
  CHECK(matricize(corner, 1)(0, 0) == 1.5);

  RngStream rng(5, 0);
  const Tensor3 t = random_tensor(3, 4, 5, rng);
  const double frob = tensor_frob(t);
  for (int mode : {1, 2, 3}) {
    CHECK(matricize(t, mode).norm() == doctest::Approx(frob).epsilon(1e-12));
  }
  CHECK_THROWS_AS(matricize(t, 4), DimensionError);
}

TEST_CASE("every index map addresses the same entry") {
  RngStream rng(6, 0);
  const Tensor3 t = random_tensor(3, 4, 2, rng);
  const Matrix m1 = matricize(t, 1);
  const Matrix m2 = matricize(t, 2);
  const Matrix m3 = matricize(t, 3);
  for (Index i1 = 0; i1 < 3; ++i1) {
    for (Index i2 = 0; i2 < 4; ++i2) {
      for (Index i3 = 0; i3 < 2; ++i3) {
        const double v = t(i1, i2, i3);
        CHECK(m1(i1, i2 + 4 * i3) == v);
        CHECK(m2(i2, i3 + 2 * i1) == v);
        CHECK(m3(i3, i1 + 3 * i2) == v);
      }
    }
  }
}

TEST_CASE("dematricize round trips") {
  RngStream rng(7, 0);
  const Tensor3 t = random_tensor(3, 4, 5, rng);
  for (int mode : {1, 2, 3}) {
    const Matrix m = matricize(t, mode);
    const Tensor3 back = dematricize(m, mode, t.dims());
    CHECK(tensor_frob(back - t) == 0.0);
    CHECK(matricize(back, mode) == m);
  }
  const Tensor3 zero = dematricize(Matrix::Zero(4, 15), 2, {5, 4, 3});
  CHECK(tensor_frob(zero) == 0.0);
  CHECK_THROWS_AS(dematricize(Matrix::Zero(4, 14), 2, {5, 4, 3}), DimensionError);
}

TEST_CASE("mode_product basics") {
  RngStream rng(8, 0);
  const Tensor3 g = random_tensor(3, 4, 5, rng);

  // identity leaves the tensor unchanged
  const Tensor3 same = mode_product(g, 2, Matrix::Identity(4, 4));
  CHECK(tensor_frob(same - g) <= 1e-14 * tensor_frob(g));

  // rank-1 action on a single-entry tensor
  Tensor3 single(2, 2, 2);
  single(0, 0, 0) = 3.0;
  Matrix v(4, 2);
  v.setZero();
  v(0, 0) = 1.0;
  v(1, 0) = -2.0;
  v(2, 0) = 0.5;
  const Tensor3 lifted = mode_product(single, 1, v);
  CHECK(lifted.dims() == std::array<Index, 3>{4, 2, 2});
  CHECK(lifted(0, 0, 0) == doctest::Approx(3.0));
  CHECK(lifted(1, 0, 0) == doctest::Approx(-6.0));
  CHECK(lifted(2, 0, 0) == doctest::Approx(1.5));
  CHECK(lifted(3, 0, 0) == 0.0);

  // products along different modes commute
  const Matrix a = random_matrix(6, 3, rng);
  const Matrix b = random_matrix(2, 4, rng);
  const Tensor3 ab = mode_product(mode_product(g, 1, a), 2, b);
  const Tensor3 ba = mode_product(mode_product(g, 2, b), 1, a);
  CHECK(tensor_frob(ab - ba) <= 1e-12 * tensor_frob(ab));

  CHECK_THROWS_AS(mode_product(g, 1, Matrix::Zero(4, 4)), DimensionError);
}

TEST_CASE("tensor_frob") {
  Tensor3 single(1, 1, 1);
  single(0, 0, 0) = 3.0;
  CHECK(tensor_frob(single) == 3.0);

  Tensor3 ones(2, 2, 2);
  for (Index i = 0; i < 8; ++i) ones.data()[i] = 1.0;
  CHECK(tensor_frob(ones) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("projection contracts the norm") {
  RngStream rng(9, 0);
  const Tensor3 x = random_tensor(6, 5, 4, rng);
  OrthonormalBasis u = thin_svd(random_matrix(5, 5, rng), 3).left;
  const Tensor3 projected = mode_product(x, 2, u.matrix() * u.matrix().transpose());
  CHECK(tensor_frob(projected) <= tensor_frob(x) + 1e-12);
}

TEST_CASE("hooi recovers a noiseless rank-(1,1,1) tensor") {
  const TensorSample sample = gen_tensor_model(8, 1, 1.0, 0.0, 42);
  for (const InitMethod init :
       {InitMethod::deflated, InitMethod::heteropca, InitMethod::diag_deleted, InitMethod::svd}) {
    HooiOptions opts;
    opts.init = init;
    opts.t_max = 1;
    const HooiResult res = hooi(sample.y, {1, 1, 1}, opts);
    for (int i = 0; i < 3; ++i) {
      CHECK(dist_spectral(res.bases[static_cast<std::size_t>(i)],
                          sample.factors.bases[static_cast<std::size_t>(i)]) <= 1e-8);
    }
    CHECK(tensor_frob(res.xhat - sample.xstar) <= 1e-8);
  }
}

TEST_CASE("hooi with t_max = 0 keeps the initial bases") {
  const TensorSample sample = gen_tensor_model(10, 2, 3.0, 0.5, 17);
  HooiOptions opts;
  opts.init = InitMethod::svd;
  opts.t_max = 0;
  const HooiResult res = hooi(sample.y, {2, 2, 2}, opts);
  for (int i = 0; i < 3; ++i) {
    const OrthonormalBasis direct =
        vanilla_svd_estimate(matricize(sample.y, i + 1), 2).basis;
    CHECK(res.bases[static_cast<std::size_t>(i)].matrix() == direct.matrix());
  }
}

TEST_CASE("hooi output lies in the span of its factors") {
  const TensorSample sample = gen_tensor_model(12, 2, 4.0, 1.0, 23);
  HooiOptions opts;
  opts.t_max = 5;
  const HooiResult res = hooi(sample.y, {2, 2, 2}, opts);
  for (int i = 0; i < 3; ++i) {
    const Matrix& u = res.bases[static_cast<std::size_t>(i)].matrix();
    const Matrix residual_proj = Matrix::Identity(12, 12) - u * u.transpose();
    const Tensor3 killed = mode_product(res.xhat, i + 1, residual_proj);
    CHECK(tensor_frob(killed) <= 1e-10 * tensor_frob(res.xhat));
  }
}

TEST_CASE("hooi noiseless recovery does not depend on core conditioning") {
  for (const double kappa : {1.0, 1e2, 1e4}) {
    const TensorSample sample = gen_tensor_model(20, 2, kappa, 0.0, 31);
    HooiOptions opts;
    opts.t_max = 10;
    const HooiResult res = hooi(sample.y, {2, 2, 2}, opts);
    CAPTURE(kappa);
    for (int i = 0; i < 3; ++i) {
      CHECK(dist_spectral(res.bases[static_cast<std::size_t>(i)],
                          sample.factors.bases[static_cast<std::size_t>(i)]) <= 1e-6);
    }
    CHECK(tensor_frob(res.xhat - sample.xstar) <= 1e-6);
  }
}
