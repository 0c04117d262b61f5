#include "hpca/types.hpp"

namespace hpca {

OrthonormalBasis::OrthonormalBasis(Matrix columns) : columns_(std::move(columns)) {
  const Index n = columns_.rows();
  const Index r = columns_.cols();
  if (r > n) {
    throw DimensionError("OrthonormalBasis: rank exceeds ambient dimension");
  }
  if (!columns_.allFinite()) {
    throw ContractError("OrthonormalBasis: non-finite entries");
  }
  if (r > 0) {
    const Matrix gram = columns_.transpose() * columns_;
    const double defect = (gram - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
      throw ContractError("OrthonormalBasis: columns are not orthonormal");
    }
  }
}

}  // namespace hpca
