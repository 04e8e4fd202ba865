#include "oracles.hpp"
#include "orbivfc/invariants.hpp"

#include <doctest.h>

using namespace orbivfc;
using namespace orbivfc::invariants;

TEST_CASE("Bernoulli numbers match an independent recurrence") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  for (int n = 0; n <= 40; ++n) CHECK(bernoulli(n) == oracle::bernoulli(n));
  for (int n = 3; n <= 41; n += 2) CHECK(bernoulli(n) == 0);
}

TEST_CASE("degree-zero invariants") {
  for (long long chi : {-200LL, -1LL, 0LL, 7LL, 480LL}) {
    CHECK(deg0_gw(chi, 2) == Rational(-chi, 240));
    CHECK(deg0_gw(chi, 3) == Rational(chi, 1008));
    for (int g = 2; g <= 8; ++g)
      CHECK(deg0_gw(chi, g) == Rational(chi) * oracle::bernoulli(2 * g) / (4 * g * (g - 1)));
  }
  CHECK_THROWS_AS(deg0_gw(1, 1), InvalidInput);
}

TEST_CASE("divisor sums") {
  CHECK(divisor_sum(1) == 1);
  CHECK(divisor_sum(6) == 12);
  for (long long p : {2, 3, 5, 7, 11, 13, 97}) CHECK(divisor_sum(p) == p + 1);
  for (long long m = 1; m <= 300; ++m) CHECK(divisor_sum(m) == oracle::divisor_sum(m));
}

TEST_CASE("divisor sum is multiplicative on coprime pairs") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> d(1, 400);
  int pairs = 0;
  while (pairs < 100) {
    long long a = d(rng), b = d(rng);
    if (std::gcd(a, b) != 1) continue;
    CHECK(divisor_sum(a * b) == divisor_sum(a) * divisor_sum(b));
    ++pairs;
  }
}

TEST_CASE("elliptic fiber-class invariant") {
  CHECK(elliptic_N1({1, {}}) == 0);
  CHECK(elliptic_N1({0, {2, 3}}) == Rational(17, 6));
  CHECK(elliptic_N1({0, {2}}) == Rational(5, 2));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    EllipticFibrationData d;
    d.base_genus = static_cast<int>(rng() % 4);
    for (int i = static_cast<int>(rng() % 4); i > 0; --i) d.multiplicities.push_back(2 + static_cast<long long>(rng() % 9));
    Rational expect = 2 - 2 * d.base_genus - static_cast<long long>(d.multiplicities.size());
    for (long long m : d.multiplicities) expect += Rational(oracle::divisor_sum(m), m);
    CHECK(elliptic_N1(d) == expect);
  }
  CHECK_THROWS_AS(elliptic_N1({0, {1}}), InvalidInput);
}

TEST_CASE("quintic bookkeeping has zero dimension difference") {
  for (int d = 1; d <= 5; ++d) {
    auto r = quintic_bookkeeping(d);
    CHECK(r.diff_short == 0);
    CHECK(r.diff_full == 0);
  }
}

TEST_CASE("degree-zero obstruction rank matches the dimension formula") {
  for (int n = 1; n <= 4; ++n)
    for (int g = 2; g <= 5; ++g) {
      auto r = deg0_orbibundle_rank(n, g);
      CHECK(r.vdim == 2LL * n * (1 - g) + 2LL * (3 * g - 3));
      if (n == 3) CHECK(r.vdim == 0);
    }
}
