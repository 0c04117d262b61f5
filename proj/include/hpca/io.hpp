#pragma once

#include "hpca/tensor.hpp"
#include "hpca/types.hpp"

#include <string>

namespace hpca {

// Shortest decimal that round-trips a double (%.17g).
std::string format_real(double value);

// Matrix CSV: no header, comma-separated reals, one row per line.
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const Matrix& m, const std::string& path);

// Tensor file: one header line "n1 n2 n3", then the entries of the mode-1
// unfolding in row-major order, whitespace separated.
Tensor3 read_tensor(const std::string& path);
void write_tensor(const Tensor3& t, const std::string& path);

}  // namespace hpca
