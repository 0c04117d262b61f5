#include "hpca/tensor.hpp"

#include "hpca/estimators.hpp"
#include "hpca/linalg.hpp"

#include <cmath>
#include <string>

namespace hpca {

Tensor3::Tensor3(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
  if (n1 < 1 || n2 < 1 || n3 < 1) {
    throw DimensionError("Tensor3: dimensions must be positive");
  }
  entries_.assign(static_cast<std::size_t>(n1 * n2 * n3), 0.0);
}

Index Tensor3::dim(int mode) const {
  switch (mode) {
    case 1: return n1_;
    case 2: return n2_;
    case 3: return n3_;
    default: throw DimensionError("Tensor3::dim: mode must be 1, 2, or 3");
  }
}

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
  if (a.dims() != b.dims()) {
    throw DimensionError("Tensor3: dimension mismatch in subtraction");
  }
  Tensor3 out = a;
  for (Index i = 0; i < out.size(); ++i) {
    out.data()[i] -= b.data()[i];
  }
  return out;
}

Matrix matricize(const Tensor3& x, int mode) {
  const auto [n1, n2, n3] = x.dims();
  Matrix m;
  switch (mode) {
    case 1: m.setZero(n1, n2 * n3); break;
    case 2: m.setZero(n2, n3 * n1); break;
    case 3: m.setZero(n3, n1 * n2); break;
    default: throw DimensionError("matricize: mode must be 1, 2, or 3");
  }
  for (Index i3 = 0; i3 < n3; ++i3) {
    for (Index i2 = 0; i2 < n2; ++i2) {
      for (Index i1 = 0; i1 < n1; ++i1) {
        const double v = x(i1, i2, i3);
        switch (mode) {
          case 1: m(i1, i2 + n2 * i3) = v; break;
          case 2: m(i2, i3 + n3 * i1) = v; break;
          case 3: m(i3, i1 + n1 * i2) = v; break;
        }
      }
    }
  }
  return m;
}

Tensor3 dematricize(const Matrix& m, int mode, std::array<Index, 3> dims) {
  const auto [n1, n2, n3] = dims;
  Index rows = 0, cols = 0;
  switch (mode) {
    case 1: rows = n1; cols = n2 * n3; break;
    case 2: rows = n2; cols = n3 * n1; break;
    case 3: rows = n3; cols = n1 * n2; break;
    default: throw DimensionError("dematricize: mode must be 1, 2, or 3");
  }
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError("dematricize: matrix shape inconsistent with dims");
  }
  Tensor3 x(n1, n2, n3);
  for (Index i3 = 0; i3 < n3; ++i3) {
    for (Index i2 = 0; i2 < n2; ++i2) {
      for (Index i1 = 0; i1 < n1; ++i1) {
        switch (mode) {
          case 1: x(i1, i2, i3) = m(i1, i2 + n2 * i3); break;
          case 2: x(i1, i2, i3) = m(i2, i3 + n3 * i1); break;
          case 3: x(i1, i2, i3) = m(i3, i1 + n1 * i2); break;
        }
      }
    }
  }
  return x;
}

Tensor3 mode_product(const Tensor3& g, int mode, const Matrix& v) {
  if (mode < 1 || mode > 3) {
    throw DimensionError("mode_product: mode must be 1, 2, or 3");
  }
  if (v.cols() != g.dim(mode)) {
    throw DimensionError("mode_product: V.cols() must match the contracted dimension");
  }
  std::array<Index, 3> out_dims = g.dims();
  out_dims[static_cast<std::size_t>(mode - 1)] = v.rows();
  return dematricize(v * matricize(g, mode), mode, out_dims);
}

double tensor_frob(const Tensor3& x) {
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    sum += x.data()[i] * x.data()[i];
  }
  return std::sqrt(sum);
}

namespace {

OrthonormalBasis initial_factor(const Matrix& unfolding, Index rank,
                                const HooiOptions& opts) {
  switch (opts.init) {
    case InitMethod::deflated: {
      DeflatedOptions dopts;
      dopts.iters = opts.init_iters;
      dopts.gap_const = opts.gap_const;
      return deflated_heteropca(unfolding, rank, dopts).basis;
    }
    case InitMethod::heteropca: {
      const int t_max = opts.init_iters.empty() ? 100 : opts.init_iters.front();
      return heteropca(gram_offdiag(unfolding), rank, t_max).basis;
    }
    case InitMethod::diag_deleted:
      return diag_deleted_estimate(unfolding, rank).basis;
    case InitMethod::svd:
      return vanilla_svd_estimate(unfolding, rank).basis;
  }
  throw ContractError("hooi: unknown initialization method");
}

}  // namespace

HooiResult hooi(const Tensor3& y, std::array<Index, 3> ranks, const HooiOptions& opts) {
  if (opts.t_max < 0) {
    throw ContractError("hooi: t_max must be nonnegative");
  }
  for (int i = 0; i < 3; ++i) {
    const Index r = ranks[static_cast<std::size_t>(i)];
    if (r < 1 || r > y.dim(i + 1)) {
      throw DimensionError("hooi: rank out of range for mode " + std::to_string(i + 1));
    }
  }

  std::array<OrthonormalBasis, 3> factors;
  for (int i = 0; i < 3; ++i) {
    factors[static_cast<std::size_t>(i)] =
        initial_factor(matricize(y, i + 1), ranks[static_cast<std::size_t>(i)], opts);
  }

  // Alternating rounds; all three updates use the previous round's factors.
  for (int t = 0; t < opts.t_max; ++t) {
    std::array<OrthonormalBasis, 3> next;
    for (int i = 0; i < 3; ++i) {
      const int a = (i + 1) % 3;
      const int b = (i + 2) % 3;
      Tensor3 compressed = mode_product(
          y, a + 1, factors[static_cast<std::size_t>(a)].matrix().transpose());
      compressed = mode_product(
          compressed, b + 1, factors[static_cast<std::size_t>(b)].matrix().transpose());
      next[static_cast<std::size_t>(i)] =
          thin_svd(matricize(compressed, i + 1), ranks[static_cast<std::size_t>(i)]).left;
    }
    factors = std::move(next);
  }

  // Y x1 P1 x2 P2 x3 P3, computed as compress-then-expand.
  Tensor3 xhat = y;
  for (int i = 0; i < 3; ++i) {
    xhat = mode_product(xhat, i + 1, factors[static_cast<std::size_t>(i)].matrix().transpose());
  }
  for (int i = 0; i < 3; ++i) {
    xhat = mode_product(xhat, i + 1, factors[static_cast<std::size_t>(i)].matrix());
  }
  return {std::move(factors), std::move(xhat)};
}

}  // namespace hpca
