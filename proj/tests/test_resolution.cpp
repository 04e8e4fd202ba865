#include "oracles.hpp"
#include "orbivfc/euler.hpp"
#include "orbivfc/instances.hpp"
#include "orbivfc/perturb.hpp"
#include "orbivfc/resolution.hpp"

#include <doctest.h>

using namespace orbivfc;

TEST_CASE("football Euler number is 1/m + 1/n") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 5}, {1, 7}, {4, 6}}) {
    auto chain = euler_cycle(football_bundle(m, n), football_section(m, n));
    CHECK(chain.boundary().is_zero());
    CHECK(euler_number(chain) == Rational(1, m) + Rational(1, n));
  }
}

TEST_CASE("generic fields on the rotated sphere give 2/k") {
  for (int k : {1, 2, 3, 4, 6})
    for (std::uint64_t seed : {1u, 2u}) {
      auto e = single_chart_bundle(sphere_tangent_chart(k));
      CHECK(euler_number(euler_cycle(e, generic_sphere_field(k, seed))) == Rational(2, k));
    }
}

TEST_CASE("trivial bundles over the torus have Euler number zero") {
  for (int n = 1; n <= 3; ++n) {
    auto e = single_chart_bundle(torus_trivial_chart(n, 2));
    auto z = zero_multisection(e);
    auto p = perturb_relative(e, z, z, generating_basis(e, {}), 5 + n).multisection;
    CHECK(euler_number(euler_cycle(e, p)) == 0);
  }
}

TEST_CASE("interval configuration resolves into two levels") {
  auto c = interval_configuration();
  auto res = build_resolution(c.bundle, normalize(c.multisection));
  const auto& r = res.charts[0];
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].value == 1);
  CHECK(r.levels[1].value == 2);
  auto w = check_weight_relation(c.bundle, res);
  CHECK(w.ok);
  CHECK(w.relations_checked > 0);
}

TEST_CASE("random instances: cycles, weights and mutations") {
  std::mt19937_64 rng(21);
  std::mt19937_64 mut(22);
  int caught = 0, mutated = 0;
  for (int t = 0; t < 60; ++t) {
    auto inst = random_instance(rng);
    CAPTURE(inst.name);
    auto c = compute_euler(inst.bundle, inst.multisection);
    CHECK(c.chain.boundary().is_zero());
    auto w = check_weight_relation(inst.bundle, c.resolution);
    CHECK(w.ok);
    for (auto& ch : c.resolution.charts)
      for (auto& l : ch.levels)
        for (auto& [s, sheets] : l.sheets) {
          long long total = 0;
          for (auto& sh : sheets) total += sh.weight;
          CHECK(total == ch.total);
        }
    auto res = c.resolution;
    if (oracle::mutate_weight(res, mut)) {
      ++mutated;
      caught += !check_weight_relation(inst.bundle, res).ok;
    }
  }
  CHECK(caught == mutated);
}

TEST_CASE("dimension-zero mass per component does not depend on the seed") {
  for (int k = 1; k <= 3; ++k) {
    auto e = single_chart_bundle(sphere_tangent_chart(k));
    auto a = mass_by_component(e, euler_cycle(e, generic_sphere_field(k, 100)));
    auto b = mass_by_component(e, euler_cycle(e, generic_sphere_field(k, 200)));
    CHECK(a == b);
  }
}

TEST_CASE("pushforward repeats each sheet germ by its weight") {
  auto c = interval_configuration();
  auto res = build_resolution(c.bundle, normalize(c.multisection));
  const auto& k = c.bundle.charts[0].bundle.action.complex;
  const int s = k.index({7, 8});
  for (std::size_t level = 0; level < res.charts[0].levels.size(); ++level) {
    if (!res.charts[0].levels[level].contains(s)) continue;
    auto pf = pushforward(res, 0, static_cast<int>(level), s);
    long long mult = 0;
    for (auto& b : pf) mult += b.multiplicity;
    CHECK(mult == res.charts[0].total);
  }
}
