#include "orbivfc/dgs.hpp"
#include "orbivfc/euler.hpp"
#include "orbivfc/instances.hpp"
#include "orbivfc/kuranishi.hpp"

#include <doctest.h>

using namespace orbivfc;

TEST_CASE("interval into strip: trivial isotropy passes, Z2 isotropy fails") {
  auto plain = interval_strip(false);
  CHECK(validate_chart(plain.interval, plain.space).ok());
  CHECK(validate_chart(plain.strip, plain.space).ok());
  CHECK(validate_coordinate_change(plain.interval, plain.strip, plain.change).ok());
  auto twisted = interval_strip(true);
  CHECK(validate_chart(twisted.strip, twisted.space).ok());
  auto r = validate_coordinate_change(twisted.interval, twisted.strip, twisted.change);
  CHECK_FALSE(r.ok());
  bool isotropy = false;
  for (auto& f : r.failures) isotropy = isotropy || f.find("isotropy") != std::string::npos;
  CHECK(isotropy);
}

TEST_CASE("identity changes are valid") {
  auto s = interval_strip(true);
  CHECK(validate_coordinate_change(s.strip, s.strip, identity_change(s.strip)).ok());
}

TEST_CASE("cocycle triples hold and every mutation is caught") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    auto tr = cocycle_triple(rng);
    CHECK(validate_coordinate_change(tr.c1, tr.c2, tr.cc12).ok());
    CHECK(validate_coordinate_change(tr.c2, tr.c3, tr.cc23).ok());
    CHECK(validate_coordinate_change(tr.c1, tr.c3, tr.cc13).ok());
    auto c = check_cocycle(tr.c1, tr.c2, tr.c3, tr.cc12, tr.cc23, tr.cc13);
    CHECK(c.ok());
    std::string what;
    auto bad = mutate_change(tr, rng, &what);
    CAPTURE(what);
    const bool rejected = !check_cocycle(tr.c1, tr.c2, tr.c3, tr.cc12, tr.cc23, bad).ok() ||
                          !validate_coordinate_change(tr.c1, tr.c3, bad).ok();
    CHECK(rejected);
  }
}

TEST_CASE("upper semicontinuity of levels") {
  auto m = SimplicialComplex::from_simplices({{0, 1}, {1, 2}});
  std::vector<int> good(m.size(), 0), bad(m.size(), 0);
  good[m.index({1})] = 1;
  bad[m.index({0, 1})] = 1;
  CHECK(semicontinuity_violations(m, good).empty());
  CHECK_FALSE(semicontinuity_violations(m, bad).empty());
}

TEST_CASE("random three-level systems validate and satisfy the equivalence axioms") {
  std::mt19937_64 rng(31);
  long long cases[3] = {0, 0, 0};
  for (int t = 0; t < 40; ++t) {
    auto d = random_dgs(rng);
    auto r = validate(d, true);
    CHECK(r.ok());
    auto th = build_thickening(d);
    CHECK(th.axioms.ok());
    for (int k = 0; k < 3; ++k) cases[k] += th.axioms.cases[k];
    // classes are unions of related points
    for (std::size_t a = 0; a < th.points.size(); a += 7)
      for (std::size_t b = 0; b < th.points.size(); b += 5)
        if (related(d, th.points[a], th.points[b])) CHECK(th.class_of[a] == th.class_of[b]);
  }
  for (long long c : cases) CHECK(c > 0);
}

TEST_CASE("a non-injective embedding breaks transitivity") {
  std::mt19937_64 rng(2);
  auto d = random_dgs(rng);
  auto& e = d.embeddings[0];
  const auto& k = d.level(e.source).chart.bundle.action.complex;
  // send two vertices of a domain edge to the same place
  for (int s = 0; s < k.size(); ++s) {
    if (k.dim_of(s) != 0 || !e.domain[s]) continue;
    const int v = k.simplex(s)[0];
    for (int w = 0; w < k.num_vertices(); ++w)
      if (w != v && k.find({std::min(v, w), std::max(v, w)})) {
        e.phi[w] = e.phi[v];
        break;
      }
    break;
  }
  CHECK_FALSE(validate(d).ok());
}

TEST_CASE("open ray: fails the Hausdorff check, its shrinking passes") {
  auto d = open_ray_dgs(4);
  CHECK_FALSE(hausdorff_check(d).ok());
  auto s = shrink(d, open_ray_shrinking(d));
  CHECK(s.report.ok());
  CHECK(hausdorff_check(s.dgs).ok());
  CHECK(build_thickening(s.dgs).axioms.ok());
}

TEST_CASE("shrinkings must cover the higher strata") {
  auto d = open_ray_dgs(4);
  auto choice = open_ray_shrinking(d);
  const auto& k1 = d.levels[1].chart.bundle.action.complex;
  for (int s = 0; s < k1.size(); ++s) choice[1][s] = false;
  CHECK_THROWS_AS(shrink(d, choice), InvalidInput);
}

TEST_CASE("tangent condition") {
  CHECK(tangent_condition(path_into_strip(false)).ok());
  CHECK(validate(path_into_strip(false), true).ok());
  CHECK_FALSE(tangent_condition(path_into_strip(true)).ok());
}

TEST_CASE("pure orbibundle structures reduce to Euler cycles") {
  auto e = football_bundle(2, 3);
  auto chains = pure_orbibundle_vfc({{e, football_section(2, 3)}});
  REQUIRE(chains.size() == 1);
  CHECK(euler_number(chains[0]) == Rational(5, 6));
}
