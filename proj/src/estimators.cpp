#include "hpca/estimators.hpp"

#include "hpca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hpca {

Matrix gram_offdiag(const Matrix& y) {
  if (y.rows() < 2) {
    throw DimensionError("gram_offdiag: need at least two rows");
  }
  Matrix g = y * y.transpose();
  g.diagonal().setZero();
  return g;
}

EstimatorResult vanilla_svd_estimate(const Matrix& y, Index r) {
  if (r < 1 || r > y.rows()) {
    throw DimensionError("vanilla_svd_estimate: rank out of range");
  }
  EstimatorResult res;
  res.basis = thin_svd(y, r).left;
  return res;
}

EstimatorResult diag_deleted_estimate(const Matrix& y, Index r) {
  if (r < 1 || r > y.rows()) {
    throw DimensionError("diag_deleted_estimate: rank out of range");
  }
  EstimatorResult res;
  res.basis = top_r_eigs(gram_offdiag(y), r).basis;
  return res;
}

HeteroPcaState heteropca_step(const HeteroPcaState& state) {
  const SpectrumDecomposition eigs = top_r_eigs(state.gram, state.rank);
  const Matrix& u = eigs.basis.matrix();

  HeteroPcaState next;
  next.gram = state.gram;
  // diag(U Lambda U^T) without forming the full reconstruction
  next.gram.diagonal() = (u * eigs.values.asDiagonal()).cwiseProduct(u).rowwise().sum();
  next.rank = state.rank;
  next.iteration = state.iteration + 1;
  return next;
}

HeteroPcaResult heteropca(const Matrix& gram_in, Index rank, int t_max,
                          const HeteroPcaOptions& opts) {
  if (gram_in.rows() != gram_in.cols()) {
    throw DimensionError("heteropca: input must be square");
  }
  if (rank < 1 || rank >= gram_in.rows()) {
    throw DimensionError("heteropca: rank out of range");
  }
  if (t_max < 0) {
    throw ContractError("heteropca: t_max must be nonnegative");
  }

  HeteroPcaState state{gram_in, rank, 0};
  for (int t = 0; t <= t_max; ++t) {
    const Vector prev_diag = state.gram.diagonal();
    state = heteropca_step(state);
    if (opts.on_step) {
      opts.on_step(state.gram);
    }
    if (opts.early_exit_tol) {
      const double scale = std::max(state.gram.norm(), 1e-300);
      if ((state.gram.diagonal() - prev_diag).norm() < *opts.early_exit_tol * scale) {
        break;
      }
    }
  }
  return {state.gram, top_r_eigs(state.gram, rank).basis};
}

namespace {

// |eigenvalues| of a symmetric matrix, descending.
Vector singular_values_sym(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.transpose()) / 2.0,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw SingularityError("select_rank: eigendecomposition failed");
  }
  Vector s = solver.eigenvalues().cwiseAbs();
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

}  // namespace

Index select_rank(const Matrix& gram_prev, Index r_prev, Index r, double gap_const) {
  if (gram_prev.rows() != gram_prev.cols()) {
    throw DimensionError("select_rank: input must be square");
  }
  const Index n = gram_prev.rows();
  if (r_prev < 0 || r_prev >= r || r > n - 1) {
    throw ContractError("select_rank: need 0 <= r_prev < r <= dim - 1");
  }
  if (gap_const < 4.0) {
    throw ContractError("select_rank: gap_const must be at least 4");
  }

  const Vector sigma = singular_values_sym(gram_prev);
  const double head = sigma(r_prev);  // sigma_{r_prev + 1}
  Index best = 0;
  for (Index cand = r_prev + 1; cand <= r; ++cand) {
    const double s_cand = sigma(cand - 1);
    const double s_next = sigma(cand);
    const bool well_conditioned = head <= gap_const * s_cand;
    const bool separated = s_cand - s_next >= s_cand / static_cast<double>(r);
    if (well_conditioned && separated) {
      best = cand;
    }
  }
  return best > 0 ? best : r;
}

EstimatorResult deflated_heteropca(const Matrix& y, Index r, const DeflatedOptions& opts) {
  const Index n1 = y.rows();
  if (r < 1 || r > n1 - 1) {
    throw DimensionError("deflated_heteropca: rank out of range (need r <= n1 - 1)");
  }
  for (int t : opts.iters) {
    if (t < 1) {
      throw ContractError("deflated_heteropca: iteration counts must be positive");
    }
  }
  if (opts.gap_const < 4.0) {
    throw ContractError("deflated_heteropca: gap_const must be at least 4");
  }

  DeflationSchedule schedule;
  schedule.gap_const = opts.gap_const;
  schedule.gap_fraction_denominator = r;

  Matrix gram = gram_offdiag(y);
  OrthonormalBasis basis;
  Index r_k = 0;
  std::size_t k = 0;
  while (r_k < r) {
    const Index r_next = select_rank(gram, r_k, r, opts.gap_const);
    const int t_k = opts.iters.empty()
                        ? 10
                        : opts.iters[std::min(k, opts.iters.size() - 1)];
    HeteroPcaResult round = heteropca(gram, r_next, t_k, opts.inner);
    gram = std::move(round.gram);
    basis = std::move(round.basis);
    schedule.breakpoints.push_back(r_next);
    schedule.iters.push_back(t_k);
    r_k = r_next;
    ++k;
  }

  EstimatorResult res;
  res.basis = std::move(basis);
  res.schedule = std::move(schedule);
  res.gram = std::move(gram);
  return res;
}

}  // namespace hpca
