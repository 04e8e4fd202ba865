#include "orbivfc/instances.hpp"
#include "orbivfc/multisection.hpp"
#include "orbivfc/perturb.hpp"

#include <doctest.h>

using namespace orbivfc;

TEST_CASE("football atlases are valid and relatively oriented") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 5}, {1, 7}}) {
    auto e = football_bundle(m, n);
    CHECK_NOTHROW(validate(e));
    CHECK(relatively_oriented(e));
    CHECK(e.num_charts() == 2);
    CHECK(e.transition(0, 1) == MatrixQ(MatrixQ::Identity(2, 2) * Rational(-m, n)));
    auto s = football_section(m, n);
    CHECK_NOTHROW(validate(e, s));
    CHECK(is_transversal(e, s).ok);
  }
}

TEST_CASE("a section that disagrees on the overlap is rejected") {
  auto e = football_bundle(2, 3);
  auto s = football_section(2, 3);
  s.charts[1][0].values[overlap_vertices(e, 1).front()](0) += 1;
  CHECK_THROWS_AS(validate(e, s), InvalidInput);
}

TEST_CASE("enhanced sections are invariant and normalization is idempotent") {
  std::mt19937_64 rng(8);
  for (int k = 2; k <= 4; ++k) {
    auto b = sphere_trivial_chart(k, 1);
    auto e = single_chart_bundle(b);
    FieldValues p(b.num_vertices());
    for (auto& v : p) {
      v = VectorQ(1);
      v(0) = random_rational(rng, 5);
    }
    Section sec{{p}};
    auto m = enhance(e, sec);
    CHECK_NOTHROW(validate(e, m));
    for (int g = 0; g < b.action.group.order(); ++g) {
      auto moved = act(b, g, p);
      bool present = false;
      for (auto& br : m.charts[0]) present = present || br.values == moved;
      CHECK(present);
    }
    auto n = normalize(m);
    CHECK(normalize(n).charts[0].size() == n.charts[0].size());
    CHECK(equivalent(e, m, n));
    CHECK(equivalent(e, scale(m, 3), m));
  }
}

TEST_CASE("sum adds branchwise with product multiplicities") {
  auto e = single_chart_bundle(sphere_trivial_chart(2, 1));
  auto z = zero_multisection(e);
  std::mt19937_64 rng(1);
  auto p = random_perturbation(e, generating_basis(e, {}), rng, {});
  auto s = sum(z, p);
  CHECK(equivalent(e, s, p));
  CHECK(s.total(0) == z.total(0) * p.total(0));
}

TEST_CASE("the zero section of a positive-rank bundle is not transversal") {
  auto e = single_chart_bundle(torus_trivial_chart(1, 2));
  auto r = is_transversal(e, zero_multisection(e));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.failures.empty());
}

TEST_CASE("relative perturbation produces transversal multisections") {
  for (int k = 1; k <= 3; ++k) {
    auto e = single_chart_bundle(sphere_tangent_chart(k));
    auto z = zero_multisection(e);
    auto res = perturb_relative(e, z, z, generating_basis(e, {}), 42 + k);
    CHECK(is_transversal(e, res.multisection).ok);
    CHECK_NOTHROW(validate(e, res.multisection));
    CHECK(spans(e, generating_basis(e, {})));
  }
}

TEST_CASE("interval configuration has two germs on half the interval") {
  auto c = interval_configuration();
  const auto& k = c.bundle.charts[0].bundle.action.complex;
  CHECK(val(k, c.multisection.charts[0], k.index({0})) == 1);
  CHECK(val(k, c.multisection.charts[0], k.index({8})) == 2);
}
