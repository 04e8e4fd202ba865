#pragma once

#include "orbivfc/rational.hpp"

#include <string>
#include <vector>

namespace orbivfc::invariants {

/// Sum of the positive divisors of m.
long long divisor_sum(long long m);

/// Bernoulli number B_n with B_1 = -1/2. Memoized; safe for concurrent reads.
Rational bernoulli(int n);

/// Degree-zero genus-g invariant of a Calabi-Yau threefold with Euler characteristic chi.
/// Requires g >= 2.
Rational deg0_gw(long long chi, int g);

struct EllipticFibrationData {
  int base_genus = 0;
  std::vector<long long> multiplicities;  ///< each >= 2
};

/// Fiber-class invariant N_1 of an elliptic surface with multiple fibers.
Rational elliptic_N1(const EllipticFibrationData& data);

struct OrbibundleRank {
  long long rank = 0;      ///< real rank of TX tensor the Hodge bundle
  long long base_dim = 0;  ///< real dimension of X times the curve moduli
  long long hodge_rank = 0;
  long long vdim = 0;
};

/// Rank bookkeeping for the degree-zero obstruction bundle over X x M_{g,k}.
OrbibundleRank deg0_orbibundle_rank(int n, int g, int k = 0);

struct QuinticReport {
  int degree = 0;
  long long dim_short = 0, rank_short = 0;
  long long dim_full = 0, rank_full = 0;
  long long diff_short = 0, diff_full = 0;
  std::string identity;
};

/// Dimension bookkeeping for rational curves in the quintic threefold.
QuinticReport quintic_bookkeeping(int d);

std::string to_string(const QuinticReport& r);

}  // namespace orbivfc::invariants
