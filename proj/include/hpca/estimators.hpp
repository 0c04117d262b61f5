#pragma once

#include "hpca/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace hpca {

// Realized deflation schedule: strictly increasing rank breakpoints ending at
// the target rank, with the per-round iteration counts actually used.
struct DeflationSchedule {
  std::vector<Index> breakpoints;
  std::vector<int> iters;
  double gap_const = 4.0;
  Index gap_fraction_denominator = 0;  // the r in the 1/r gap test
};

struct EstimatorResult {
  OrthonormalBasis basis;
  std::optional<DeflationSchedule> schedule;
  std::optional<Matrix> gram;
};

// P_offdiag(Y Y^T): the Gram matrix of the rows with its diagonal zeroed.
Matrix gram_offdiag(const Matrix& y);

// Top-r left singular subspace of Y.
EstimatorResult vanilla_svd_estimate(const Matrix& y, Index r);

// Top-r (by magnitude) eigenspace of gram_offdiag(Y).
EstimatorResult diag_deleted_estimate(const Matrix& y, Index r);

// One HeteroPCA update. The off-diagonal of the Gram iterate is copied
// verbatim; only the diagonal is overwritten with the diagonal of the current
// rank-r reconstruction.
struct HeteroPcaState {
  Matrix gram;
  Index rank = 0;
  int iteration = 0;
};
HeteroPcaState heteropca_step(const HeteroPcaState& state);

struct HeteroPcaOptions {
  // When set, stop once the diagonal moves by less than this relative to the
  // Frobenius norm of the Gram iterate. Off by default: the reference
  // procedure runs a fixed number of iterations.
  std::optional<double> early_exit_tol;
  // Invoked with the Gram iterate after every update (diagnostics hook).
  std::function<void(const Matrix&)> on_step;
};

struct HeteroPcaResult {
  Matrix gram;
  OrthonormalBasis basis;
};

// Iterative diagonal imputation: runs the update for t = 0..t_max and returns
// the final Gram iterate together with its top-rank eigenbasis.
HeteroPcaResult heteropca(const Matrix& gram_in, Index rank, int t_max,
                          const HeteroPcaOptions& opts = {});

// Data-driven rank selection for the next deflation round. Candidate ranks
// r' in (r_prev, r] qualify when sigma_{r_prev+1} <= gap_const * sigma_{r'}
// and sigma_{r'} - sigma_{r'+1} >= sigma_{r'} / r, where sigma_i are the
// magnitudes of the eigenvalues of gram_prev in descending order. Returns the
// largest qualifying rank, or r when none qualifies.
Index select_rank(const Matrix& gram_prev, Index r_prev, Index r, double gap_const = 4.0);

struct DeflatedOptions {
  // Per-round iteration counts t_1, t_2, ...; empty means 10 for every round.
  // If fewer values than realized rounds are given the last one is reused;
  // extra values are ignored.
  std::vector<int> iters;
  double gap_const = 4.0;
  HeteroPcaOptions inner;
};

// Deflated subspace estimation: starts from the diagonal-deleted Gram matrix
// and conquers the spectrum block by block, each round imputing the diagonal
// at the selected rank before moving on. Requires 1 <= r <= n1 - 1.
EstimatorResult deflated_heteropca(const Matrix& y, Index r,
                                   const DeflatedOptions& opts = {});

}  // namespace hpca
