#include "hpca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace hpca {

namespace {

void require_square(const Matrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(op) + ": input must be square");
  }
}

// Flip v in place so its largest-magnitude entry is positive; entry ties go
// to the lowest index.
void fix_sign(Eigen::Ref<Vector> v) {
  Index best = 0;
  double mag = std::abs(v(0));
  for (Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > mag) {
      mag = std::abs(v(i));
      best = i;
    }
  }
  if (v(best) < 0.0) {
    v = -v;
  }
}

}  // namespace

Matrix diag_project(const Matrix& m) {
  require_square(m, "diag_project");
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  out.diagonal() = m.diagonal();
  return out;
}

Matrix offdiag_project(const Matrix& m) {
  require_square(m, "offdiag_project");
  Matrix out = m;
  out.diagonal().setZero();
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

SpectrumDecomposition top_r_eigs(const Matrix& m, Index r) {
  require_square(m, "top_r_eigs");
  const Index n = m.rows();
  if (r < 1 || r > n) {
    throw DimensionError("top_r_eigs: rank out of range");
  }
  const double scale = m.norm();
  const double asym = (m - m.transpose()).norm();
  if (asym > 1e-10 * std::max(scale, 1e-300)) {
    throw ContractError("top_r_eigs: input is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.transpose()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw SingularityError("top_r_eigs: eigendecomposition failed");
  }
  const Vector& lam = solver.eigenvalues();  // ascending
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&lam](Index a, Index b) {
    const double ma = std::abs(lam(a));
    const double mb = std::abs(lam(b));
    if (ma != mb) return ma > mb;
    if (lam(a) != lam(b)) return lam(a) > lam(b);
    return a < b;
  });

  Vector values(r);
  Matrix basis(n, r);
  for (Index i = 0; i < r; ++i) {
    values(i) = lam(order[static_cast<std::size_t>(i)]);
    basis.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    fix_sign(basis.col(i));
  }
  return {std::move(values), OrthonormalBasis(std::move(basis))};
}

ThinSvd thin_svd(const Matrix& m, Index r) {
  const Index kmax = std::min(m.rows(), m.cols());
  if (r < 1 || r > kmax) {
    throw DimensionError("thin_svd: rank out of range");
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw SingularityError("thin_svd: decomposition failed");
  }
  Matrix u = svd.matrixU().leftCols(r);
  Matrix v = svd.matrixV().leftCols(r);
  Vector s = svd.singularValues().head(r);
  for (Index i = 0; i < r; ++i) {
    Index best = 0;
    u.col(i).cwiseAbs().maxCoeff(&best);
    if (u(best, i) < 0.0) {
      u.col(i) = -u.col(i);
      v.col(i) = -v.col(i);
    }
  }
  return {OrthonormalBasis(std::move(u)), std::move(s), OrthonormalBasis(std::move(v))};
}

namespace {

// U V^T of the full SVD, defined for any square input.
Matrix polar_factor(const Matrix& h) {
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

Matrix sign_matrix(const Matrix& h) {
  require_square(h, "sign_matrix");
  if (h.rows() == 0) {
    return h;
  }
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-12 * s(0)) {
    throw SingularityError("sign_matrix: input is rank deficient");
  }
  return svd.matrixU() * svd.matrixV().transpose();
}

namespace {

void require_aligned(const OrthonormalBasis& u, const OrthonormalBasis& ustar, const char* op) {
  if (u.ambient_dim() != ustar.ambient_dim() || u.rank() != ustar.rank()) {
    throw DimensionError(std::string(op) + ": bases have mismatched shapes");
  }
}

Matrix aligned_difference(const OrthonormalBasis& u, const OrthonormalBasis& ustar) {
  const Matrix rot = polar_factor(u.matrix().transpose() * ustar.matrix());
  return u.matrix() * rot - ustar.matrix();
}

}  // namespace

Matrix optimal_rotation(const OrthonormalBasis& u, const OrthonormalBasis& ustar) {
  require_aligned(u, ustar, "optimal_rotation");
  return sign_matrix(u.matrix().transpose() * ustar.matrix());
}

double dist_spectral(const OrthonormalBasis& u, const OrthonormalBasis& ustar) {
  require_aligned(u, ustar, "dist_spectral");
  return spectral_norm(aligned_difference(u, ustar));
}

double dist_two_inf(const OrthonormalBasis& u, const OrthonormalBasis& ustar) {
  require_aligned(u, ustar, "dist_two_inf");
  return aligned_difference(u, ustar).rowwise().norm().maxCoeff();
}

double incoherence(const OrthonormalBasis& u) {
  if (u.rank() == 0) {
    throw DimensionError("incoherence: empty basis");
  }
  const double max_row = u.matrix().rowwise().squaredNorm().maxCoeff();
  return static_cast<double>(u.ambient_dim()) / static_cast<double>(u.rank()) * max_row;
}

}  // namespace hpca
