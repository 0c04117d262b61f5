#include "hpca/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace hpca {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

double parse_real(const std::string& token, const std::string& path) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw DataError(path + ": cannot parse '" + token + "' as a real number");
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(path + ": cannot open for reading");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(stripped);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      row.push_back(parse_real(trim(cell), path));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError(path + ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    return Matrix(0, 0);
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  if (!m.allFinite()) {
    throw DataError(path + ": non-finite matrix entries");
  }
  return m;
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError(path + ": cannot open for writing");
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
  if (!out) {
    throw DataError(path + ": write failed");
  }
}

Tensor3 read_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError(path + ": cannot open for reading");
  }
  long long n1 = 0, n2 = 0, n3 = 0;
  if (!(in >> n1 >> n2 >> n3) || n1 < 1 || n2 < 1 || n3 < 1) {
    throw DataError(path + ": malformed tensor header (expected 'n1 n2 n3')");
  }
  Tensor3 t(static_cast<Index>(n1), static_cast<Index>(n2), static_cast<Index>(n3));
  for (Index i1 = 0; i1 < t.dim(1); ++i1) {
    for (Index col = 0; col < t.dim(2) * t.dim(3); ++col) {
      double v = 0.0;
      if (!(in >> v)) {
        throw DataError(path + ": too few tensor entries");
      }
      const Index i2 = col % t.dim(2);
      const Index i3 = col / t.dim(2);
      t(i1, i2, i3) = v;
    }
  }
  double extra = 0.0;
  if (in >> extra) {
    throw DataError(path + ": trailing tensor entries");
  }
  for (Index i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t.data()[i])) {
      throw DataError(path + ": non-finite tensor entries");
    }
  }
  return t;
}

void write_tensor(const Tensor3& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError(path + ": cannot open for writing");
  }
  out << t.dim(1) << ' ' << t.dim(2) << ' ' << t.dim(3) << '\n';
  for (Index i1 = 0; i1 < t.dim(1); ++i1) {
    for (Index col = 0; col < t.dim(2) * t.dim(3); ++col) {
      if (col > 0) out << ' ';
      const Index i2 = col % t.dim(2);
      const Index i3 = col / t.dim(2);
      out << format_real(t(i1, i2, i3));
    }
    out << '\n';
  }
  if (!out) {
    throw DataError(path + ": write failed");
  }
}

}  // namespace hpca
