#pragma once

#include "hpca/types.hpp"

#include <array>
#include <vector>

namespace hpca {

// Dense order-3 tensor. Storage is column-major: entry (i1, i2, i3) lives at
// offset i1 + n1*(i2 + n2*i3).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(Index n1, Index n2, Index n3);

  double& operator()(Index i1, Index i2, Index i3) {
    return entries_[i1 + n1_ * (i2 + n2_ * i3)];
  }
  double operator()(Index i1, Index i2, Index i3) const {
    return entries_[i1 + n1_ * (i2 + n2_ * i3)];
  }

  std::array<Index, 3> dims() const { return {n1_, n2_, n3_}; }
  Index dim(int mode) const;  // mode in {1, 2, 3}
  Index size() const { return static_cast<Index>(entries_.size()); }

  double* data() { return entries_.data(); }
  const double* data() const { return entries_.data(); }

 private:
  Index n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<double> entries_;
};

Tensor3 operator-(const Tensor3& a, const Tensor3& b);

// Mode-j unfolding, n_j x (n1 n2 n3 / n_j). One-based index maps:
//   [M1]_{i1, i2 + n2 (i3 - 1)} = [M2]_{i2, i3 + n3 (i1 - 1)}
//     = [M3]_{i3, i1 + n1 (i2 - 1)} = X_{i1, i2, i3}.
Matrix matricize(const Tensor3& x, int mode);

// Inverse of matricize for the given mode and target dimensions.
Tensor3 dematricize(const Matrix& m, int mode, std::array<Index, 3> dims);

// Multilinear product along one mode: the mode-j fibers are contracted with
// V (V.cols() must equal dims[mode]); the result replaces that dimension
// with V.rows().
Tensor3 mode_product(const Tensor3& g, int mode, const Matrix& v);

// sqrt of the sum of squared entries.
double tensor_frob(const Tensor3& x);

struct TuckerFactors {
  std::array<OrthonormalBasis, 3> bases;
  Tensor3 core;
};

enum class InitMethod { deflated, heteropca, diag_deleted, svd };

struct HooiOptions {
  InitMethod init = InitMethod::deflated;
  // Iteration counts for the initializer. For the deflated initializer these
  // are the per-round counts (empty means 10 each); for the plain iterative
  // initializer the first value is its iteration budget (default 100).
  std::vector<int> init_iters;
  double gap_const = 4.0;
  int t_max = 50;  // alternating rounds after initialization
};

struct HooiResult {
  std::array<OrthonormalBasis, 3> bases;
  Tensor3 xhat;
};

// Higher-order orthogonal iteration. Each mode is initialized by the chosen
// estimator applied to the mode unfolding of Y; every alternating round then
// recomputes each factor from the unfolding of Y compressed by the other two
// factors of the previous round (transposed bases, so the unfolded matrix is
// n_i x (r_{i+1} r_{i+2})). The tensor estimate projects Y onto the span of
// the final factors.
HooiResult hooi(const Tensor3& y, std::array<Index, 3> ranks,
                const HooiOptions& opts = {});

}  // namespace hpca
