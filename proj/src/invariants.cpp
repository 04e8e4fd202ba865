#include "orbivfc/invariants.hpp"

#include "orbivfc/graph.hpp"

#include <mutex>
#include <shared_mutex>

namespace orbivfc::invariants {

long long divisor_sum(long long m) {
  if (m < 1) throw InvalidInput("divisor_sum needs a positive integer");
  long long total = 0;
  for (long long a = 1; a * a <= m; ++a) {
    if (m % a) continue;
    total += a;
    if (a != m / a) total += m / a;
  }
  return total;
}

namespace {

std::shared_mutex table_mutex;
std::vector<Rational> table{Rational(1)};

Rational binomial(int n, int k) {
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return Rational(r);
}

}  // namespace

Rational bernoulli(int n) {
  if (n < 0) throw InvalidInput("bernoulli index must be non-negative");
  {
    std::shared_lock lock(table_mutex);
    if (n < static_cast<int>(table.size())) return table[n];
  }
  std::unique_lock lock(table_mutex);
  // sum_{k=0}^{m} C(m+1,k) B_k = 0
  for (int m = static_cast<int>(table.size()); m <= n; ++m) {
    Rational acc = 0;
    for (int k = 0; k < m; ++k) acc += binomial(m + 1, k) * table[k];
    table.push_back(-acc / (m + 1));
  }
  return table[n];
}

Rational deg0_gw(long long chi, int g) {
  if (g < 2) throw InvalidInput("deg0_gw requires genus >= 2");
  return Rational(chi) * bernoulli(2 * g) / Rational(4LL * g * (g - 1));
}

Rational elliptic_N1(const EllipticFibrationData& data) {
  if (data.base_genus < 0) throw InvalidInput("base genus must be non-negative");
  long long ell = static_cast<long long>(data.multiplicities.size());
  Rational n1 = Rational(2 - 2LL * data.base_genus - ell);
  for (long long m : data.multiplicities) {
    if (m < 2) throw InvalidInput("fiber multiplicities must be >= 2");
    n1 += Rational(divisor_sum(m), m);
  }
  return n1;
}

OrbibundleRank deg0_orbibundle_rank(int n, int g, int k) {
  if (g < 1) throw InvalidInput("deg0_orbibundle_rank needs genus >= 1");
  if (n < 0 || k < 0) throw InvalidInput("negative dimension or mark count");
  OrbibundleRank r;
  r.hodge_rank = g;
  r.rank = 2LL * n * r.hodge_rank;
  long long curve_dim = (2 * g + k < 3) ? 0 : 3LL * g - 3 + k;
  r.base_dim = 2LL * n + 2 * curve_dim;
  r.vdim = r.base_dim - r.rank;
  if (2 * g + k >= 3 && r.vdim != graph::virtual_dim(n, g, k, 0))
    throw InternalError("orbibundle rank disagrees with the virtual dimension");
  return r;
}

QuinticReport quintic_bookkeeping(int d) {
  if (d < 1) throw InvalidInput("quintic degree must be positive");
  QuinticReport r;
  r.degree = d;
  r.dim_short = 5LL * d;
  r.rank_short = 5LL * d;
  // dim M_{0,0}(P^4, d) = 4 + 5d + (0 - 3) ; rank of pi_* f^* O(5) = 5d + 1
  r.dim_full = 5LL * d + 1;
  r.rank_full = 5LL * d + 1;
  r.diff_short = r.dim_short - r.rank_short;
  r.diff_full = r.dim_full - r.rank_full;
  r.identity = "N_d = N'_d (unverified)";
  return r;
}

std::string to_string(const QuinticReport& r) {
  std::string s;
  s += "degree " + std::to_string(r.degree) + "\n";
  s += "5d-convention moduli_dim " + std::to_string(r.dim_short) + " bundle_rank " +
       std::to_string(r.rank_short) + " diff " + std::to_string(r.diff_short) + "\n";
  s += "5d+1-convention moduli_dim " + std::to_string(r.dim_full) + " bundle_rank " +
       std::to_string(r.rank_full) + " diff " + std::to_string(r.diff_full) + "\n";
  s += "identity " + r.identity + "\n";
  return s;
}

}  // namespace orbivfc::invariants
