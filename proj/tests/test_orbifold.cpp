#include "orbivfc/dgs.hpp"
#include "orbivfc/instances.hpp"
#include "orbivfc/orbifold.hpp"

#include <doctest.h>

#include <map>

using namespace orbivfc;

namespace {

/// Sum over upstairs simplices of (-1)^dim, divided by |G|.
Rational orbifold_euler(const GroupAction& a) {
  long long chi = 0;
  for (int s = 0; s < a.complex.size(); ++s) chi += a.complex.dim_of(s) % 2 ? -1 : 1;
  return Rational(chi, a.group.order());
}

/// Same quantity from the quotient: sum over orbits of (-1)^dim / |isotropy|.
Rational orbit_sum(const OrbifoldComplex& o) {
  Rational sum = 0;
  for (int i = 0; i < o.num_orbits(); ++i) {
    const int d = o.action.complex.dim_of(o.orbit_rep[i]);
    sum += Rational(d % 2 ? -1 : 1, o.orbit_isotropy[i]);
  }
  return sum;
}

}  // namespace

TEST_CASE("rotated sphere: pole isotropy and Euler characteristics") {
  for (int k = 1; k <= 6; ++k) {
    auto a = sphere_action(k);
    validate(a);
    auto o = build_quotient(a);
    CHECK(isotropy(o, 3 * k) == k);
    CHECK(isotropy(o, 3 * k + 1) == k);
    CHECK(isotropy(o, 0) == 1);
    CHECK(o.quotient_euler == 2);
    CHECK(euler_characteristic(a.complex) == 2);
    CHECK(orbit_sum(o) == orbifold_euler(a));
    CHECK(orbifold_euler(a) == Rational(2, k));
    CHECK(o.regular);
    CHECK(o.effective);
    CHECK(o.orientation_preserving);
  }
}

TEST_CASE("free torus translation") {
  for (int n = 1; n <= 4; ++n) {
    auto a = torus_action(n);
    validate(a);
    auto o = build_quotient(a);
    for (int i = 0; i < o.num_orbits(); ++i) CHECK(o.orbit_isotropy[i] == 1);
    CHECK(euler_characteristic(a.complex) == 0);
    auto cov = covering_of_free_action(a);
    CHECK(cov.degree == n);
    CHECK(verify_covering(cov).ok);
  }
}

TEST_CASE("reflection of a circle is orientation reversing") {
  auto a = circle_reflection(8);
  validate(a);
  CHECK(orientation_character(a, 1) == -1);
  CHECK_FALSE(build_quotient(a).orientation_preserving);
}

TEST_CASE("barycentric subdivision is regular and keeps the orbifold Euler characteristic") {
  auto a = circle_rotation(6, 2);
  auto b = barycentric_subdivision(a);
  CHECK(is_regular(b));
  CHECK(orbifold_euler(b) == orbifold_euler(a));
  auto s = barycentric_subdivision(sphere_action(2));
  CHECK(is_regular(s));
  CHECK(orbifold_euler(s) == 1);
}

TEST_CASE("actions that are not simplicial are rejected") {
  auto a = circle_rotation(9, 3);
  a.perm[1][0] = a.perm[1][1];
  CHECK_THROWS_AS(validate(a), InvalidInput);
}

TEST_CASE("Kuhn grids triangulate boxes") {
  auto k = kuhn_grid({3, 3});
  CHECK(k.num_vertices() == 9);
  CHECK(k.maximal().size() == 8);
  CHECK(euler_characteristic(k) == 1);
  auto c = kuhn_grid({2, 2, 2});
  CHECK(c.maximal().size() == 6);
  CHECK(c.is_pure());
  CHECK(euler_characteristic(kuhn_grid({4, 3, 3})) == 1);
  // faces on coordinate planes are Kuhn triangulations again
  auto face = kuhn_grid({4, 3});
  for (int s : face.maximal()) {
    Simplex lifted;
    for (int v : face.simplex(s)) lifted.push_back(v * 3 + 1);
    CHECK(kuhn_grid({4, 3, 3}).find(lifted));
  }
}
