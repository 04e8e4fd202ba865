#include "oracles.hpp"
#include "orbivfc/linalg.hpp"

#include <doctest.h>

using namespace orbivfc;

TEST_CASE("rationals print reduced") {
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
}

TEST_CASE("parse and print are inverse on random rationals") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 1000);
  for (int i = 0; i < 500; ++i) {
    Rational q(num(rng), den(rng));
    CHECK(parse_rational(to_string(q)) == q);
  }
}

namespace {
MatrixQ random_matrix(std::mt19937_64& rng, int rows, int cols, int zero_bias) {
  std::uniform_int_distribution<int> d(-3, 3), z(0, zero_bias);
  MatrixQ m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = z(rng) == 0 ? Rational(0) : Rational(d(rng), 1 + z(rng));
  return m;
}
}  // namespace

TEST_CASE("determinant agrees with the Leibniz formula") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 5;
    auto m = random_matrix(rng, n, n, 2);
    CHECK(linalg::determinant(m) == oracle::leibniz(m));
  }
}

TEST_CASE("kernel, rank and solve are consistent") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const int rows = 1 + t % 4, cols = 1 + (t / 4) % 5;
    auto m = random_matrix(rng, rows, cols, 1);
    auto k = linalg::kernel(m);
    CHECK(linalg::rank(m) + k.cols() == cols);
    CHECK((m * k).isZero());
    VectorQ x = random_matrix(rng, cols, 1, 3);
    VectorQ b = m * x;
    auto sol = linalg::solve(m, b);
    REQUIRE(sol);
    CHECK(VectorQ(m * *sol) == b);
    MatrixQ full(rows, cols + linalg::complement(m).cols());
    full << m, linalg::complement(m);
    CHECK(linalg::rank(full) == rows);
  }
}

TEST_CASE("inconsistent systems have no solution") {
  MatrixQ a(2, 1);
  a << 1, 2;
  VectorQ b(2);
  b << 1, 1;
  CHECK_FALSE(linalg::solve(a, b));
}
