#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace hpca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Shape mismatches and out-of-range ranks.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Violated preconditions other than shapes.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rank-deficient input where a full-rank matrix is required.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unparseable or inconsistent external data (files, configs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n x r matrix with orthonormal columns, checked on construction:
// max |<u_i, u_j> - delta_ij| <= 1e-10.
class OrthonormalBasis {
 public:
  OrthonormalBasis() = default;
  explicit OrthonormalBasis(Matrix columns);

  const Matrix& matrix() const { return columns_; }
  Index ambient_dim() const { return columns_.rows(); }
  Index rank() const { return columns_.cols(); }

 private:
  Matrix columns_;
};

// Eigen- or singular values sorted descending by magnitude, with the basis
// paired column-wise.
struct SpectrumDecomposition {
  Vector values;
  OrthonormalBasis basis;
};

}  // namespace hpca
