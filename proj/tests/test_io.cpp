#include "hpca/io.hpp"

#include "hpca/rng.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

using namespace hpca;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("matrix CSV round trip is exact") {
  RngStream rng(3, 9);
  Matrix m(4, 3);
  for (Index j = 0; j < 3; ++j) {
    for (Index i = 0; i < 4; ++i) {
      m(i, j) = rng.gaussian() * std::pow(10.0, rng.uniform(-8.0, 8.0));
    }
  }
  m(0, 0) = 0.1 + 0.2;

  TempFile f("roundtrip.csv");
  write_matrix_csv(m, f.path);
  const Matrix back = read_matrix_csv(f.path);
  CHECK(back == m);
}

TEST_CASE("matrix CSV rejects malformed input") {
  TempFile ragged("ragged.csv");
  {
    std::ofstream out(ragged.path);
    out << "1,2,3\n4,5\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(ragged.path), DataError);

  TempFile garbage("garbage.csv");
  {
    std::ofstream out(garbage.path);
    out << "1,two,3\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(garbage.path), DataError);

  CHECK_THROWS_AS(read_matrix_csv("definitely_missing_file.csv"), DataError);

  TempFile nonfinite("nonfinite.csv");
  {
    std::ofstream out(nonfinite.path);
    out << "1,nan\n2,3\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(nonfinite.path), DataError);
}

TEST_CASE("tensor file round trip is exact") {
  RngStream rng(4, 9);
  Tensor3 t(3, 4, 2);
  for (Index i = 0; i < t.size(); ++i) {
    t.data()[i] = rng.gaussian();
  }
  TempFile f("tensor.tns");
  write_tensor(t, f.path);
  const Tensor3 back = read_tensor(f.path);
  REQUIRE(back.dims() == t.dims());
  CHECK(tensor_frob(back - t) == 0.0);
}

TEST_CASE("tensor file header and count errors") {
  TempFile bad_header("bad_header.tns");
  {
    std::ofstream out(bad_header.path);
    out << "3 0 2\n1 2 3\n";
  }
  CHECK_THROWS_AS(read_tensor(bad_header.path), DataError);

  TempFile short_body("short.tns");
  {
    std::ofstream out(short_body.path);
    out << "2 2 2\n1 2 3\n";
  }
  CHECK_THROWS_AS(read_tensor(short_body.path), DataError);

  TempFile long_body("long.tns");
  {
    std::ofstream out(long_body.path);
    out << "1 1 1\n1 2\n";
  }
  CHECK_THROWS_AS(read_tensor(long_body.path), DataError);
}

TEST_CASE("format_real round trips doubles") {
  for (double v : {0.1 + 0.2, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
  }
}
