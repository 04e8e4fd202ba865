#include "oracles.hpp"
#include "orbivfc/graph.hpp"

#include <doctest.h>

using namespace orbivfc;
using namespace orbivfc::graph;

namespace {

LabeledDualGraph five_component_curve() {
  LabeledDualGraph g;
  for (int genus : {0, 2, 0, 1, 0}) g.add_vertex(genus);
  g.add_edge(0, 3);
  g.add_edge(0, 3);
  g.add_edge(4, 0);
  g.add_edge(4, 1);
  g.add_edge(4, 2);
  g.add_flag(2);
  g.add_flag(2);
  return g;
}

}  // namespace

TEST_CASE("genus counts cycles and component genera") {
  auto g = five_component_curve();
  CHECK(genus(g) == 4);
  CHECK(genus(g) == oracle::genus(g));
  CHECK(is_stable(g));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    auto r = oracle::random_graph(rng);
    CHECK(genus(r) == oracle::genus(r));
  }
}

TEST_CASE("stabilize collapses a marked sphere tail into a marked point") {
  LabeledDualGraph g;
  g.add_vertex(1);
  g.add_vertex(0);
  g.add_edge(0, 1);
  g.add_flag(1);
  LabeledDualGraph want;
  want.add_vertex(1);
  want.add_flag(0);
  CHECK(isomorphic(stabilize(g), want));
}

TEST_CASE("stabilize collapses a two-noded sphere into a node") {
  LabeledDualGraph g;
  g.add_vertex(1);
  g.add_vertex(0);
  g.add_vertex(0);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_flag(2);
  g.add_flag(2);
  LabeledDualGraph want;
  want.add_vertex(1);
  want.add_vertex(0);
  want.add_edge(0, 1);
  want.add_flag(1);
  want.add_flag(1);
  CHECK(isomorphic(stabilize(g), want));
}

TEST_CASE("unstable range stabilizes to a point") {
  LabeledDualGraph g;
  g.add_vertex(0);
  g.add_vertex(0);
  g.add_edge(0, 1);
  g.add_flag(0);
  auto s = stabilize(g);
  CHECK(s.num_vertices() == 1);
  CHECK(s.num_flags() == 1);
  CHECK(genus(s) == 0);
}

TEST_CASE("stabilize is idempotent and keeps genus and flags") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    auto g = oracle::random_graph(rng);
    auto s = stabilize(g);
    CHECK(genus(s) == genus(g));
    CHECK(s.num_flags() == g.num_flags());
    CHECK(stabilize(s) == s);
    if (2 * genus(g) + g.num_flags() >= 3) CHECK(oracle::stable(s));
  }
}

TEST_CASE("forgetting a point on a sphere tail collapses the tail") {
  LabeledDualGraph g;
  g.add_vertex(1);
  g.add_vertex(0);
  g.add_edge(0, 1);
  g.add_flag(1);
  g.add_flag(1);
  auto f = forget_points(g, {1});
  CHECK(f.num_vertices() == 1);
  CHECK(f.num_flags() == 1);
}

TEST_CASE("strata match brute-force enumeration") {
  for (auto [g, k] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {0, 5}, {2, 0}}) {
    auto got = enumerate_strata(g, k, std::max(1, 2 * g - 2 + k));
    std::set<std::string> mine;
    for (auto& x : got) mine.insert(oracle::canonical(x));
    CHECK(mine.size() == got.size());
    CHECK(mine == oracle::strata(g, k));
  }
  CHECK(enumerate_strata(1, 1, 2).size() == 2);
}

TEST_CASE("isomorphism ignores vertex order but not flag order") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    auto g = oracle::random_graph(rng);
    LabeledDualGraph h;
    std::vector<int> perm(g.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    h.vertices.resize(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) h.vertices[perm[v]] = g.vertices[v];
    for (auto& e : g.edges) h.add_edge(perm[e.a], perm[e.b]);
    for (int f : g.flags) h.add_flag(perm[f]);
    CHECK(isomorphic(g, h));
    CHECK(oracle::canonical(g) == oracle::canonical(h));
  }
}

TEST_CASE("dimension formulas") {
  for (int g = 0; g <= 10; ++g) CHECK(virtual_dim(3, g, 0, 0) == 0);
  for (int n = 1; n <= 5; ++n)
    for (int g = 0; g < 5; ++g)
      for (int k = 0; k < 5; ++k) CHECK(2LL * n * (1 - g) + 2LL * (3 * g - 3 + k) == virtual_dim(n, g, k, 0));
  CHECK(riemann_roch_index(1, 0, 2) == 6);
  CHECK(riemann_roch_index(3, 2, 5) == 4);
  CHECK(riemann_roch_index(2, 1, 0) == 0);
}

TEST_CASE("invalid graphs are rejected") {
  LabeledDualGraph g;
  g.add_vertex(0);
  g.add_vertex(0);
  CHECK_THROWS_AS(validate(g), InvalidInput);
  LabeledDualGraph h;
  h.add_vertex(-1);
  CHECK_THROWS_AS(validate(h), InvalidInput);
}
