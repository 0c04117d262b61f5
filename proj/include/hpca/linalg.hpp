#pragma once

#include "hpca/types.hpp"

namespace hpca {

// Keeps the diagonal of a square matrix, zeroes everything else.
Matrix diag_project(const Matrix& m);

// M - diag_project(M); the off-diagonal entries are copied, never recomputed.
Matrix offdiag_project(const Matrix& m);

// Largest singular value (0 for an empty matrix).
double spectral_norm(const Matrix& m);

// The r eigenpairs of a symmetric matrix with largest |eigenvalue|.
// Ordering: |value| descending, ties broken by signed value descending, then
// by position in the ascending spectrum. Each eigenvector is flipped so its
// largest-magnitude entry is positive (ties resolved at the lowest index).
// Inputs asymmetric beyond 1e-10 relative Frobenius norm are rejected;
// anything within that is symmetrized as (M + M^T)/2 before decomposing.
SpectrumDecomposition top_r_eigs(const Matrix& m, Index r);

struct ThinSvd {
  OrthonormalBasis left;
  Vector values;  // sigma_1 >= ... >= sigma_r >= 0
  OrthonormalBasis right;
};

// Leading r singular triplets. Signs fixed by the left vectors; the paired
// right vector is flipped jointly.
ThinSvd thin_svd(const Matrix& m, Index r);

// sgn(H) = U V^T from the full SVD H = U S V^T. Requires full rank
// (min singular value > 1e-12 * max).
Matrix sign_matrix(const Matrix& h);

// The orthogonal R minimizing ||U R - Ustar||_F, namely sgn(U^T Ustar).
Matrix optimal_rotation(const OrthonormalBasis& u, const OrthonormalBasis& ustar);

// ||U R - Ustar|| in spectral norm, R the optimal rotation. When U^T Ustar is
// rank deficient the distance is still well defined; one of the tied
// minimizers is picked deterministically.
double dist_spectral(const OrthonormalBasis& u, const OrthonormalBasis& ustar);

// Same aligned difference measured as the maximum row norm.
double dist_two_inf(const OrthonormalBasis& u, const OrthonormalBasis& ustar);

// (n/r) * max_i ||U_{i,:}||^2, always in [1, n/r].
double incoherence(const OrthonormalBasis& u);

}  // namespace hpca
