#include "oracles.hpp"
#include "orbivfc/instances.hpp"
#include "orbivfc/io.hpp"
#include "orbivfc/cli.hpp"

#include <doctest.h>

#include <sstream>

using namespace orbivfc;

namespace {

void check_error(const std::string& text, int line, int col) {
  try {
    io::parse(text);
    FAIL("expected a parse error");
  } catch (const io::ParseError& e) {
    CHECK(e.line == line);
    CHECK(e.column == col);
  }
}

int run(std::vector<std::string> args, std::string& out) {
  std::vector<const char*> argv{"orbivfc"};
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int rc = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str() + e.str();
  return rc;
}

}  // namespace

TEST_CASE("parse errors carry positions") {
  check_error("", 1, 1);
  check_error("#orbivfc v2\ngraph\n", 1, 10);
  check_error("#orbivfc v1\ngraph\nvertex 0\nedge 0 x\n", 4, 8);
  check_error("#orbivfc v1\nwidget\n", 2, 1);
  check_error("#orbivfc v1\nbundle rank=1\nchart\n  simplex 0 1\n", 5, 1);
  check_error("#orbivfc v1\nmultisection\nchart 0\nbranch 1\nat 0 1\nat 1 1 2\n", 6, 1);
}

TEST_CASE("semantic errors are reported at the block") {
  // edge to a missing vertex
  check_error("#orbivfc v1\ngraph\nvertex 0\nedge 0 3\n", 2, 1);
  // perm that is not simplicial
  check_error("#orbivfc v1\nbundle rank=0\nchart\n group cyclic 2\n simplex 0 1\n simplex 1 2\n perm 1 : 0 2 1\nend\n", 3, 1);
}

TEST_CASE("comments and blank lines are ignored") {
  auto g = io::parse_graph("#orbivfc v1\n\n# a comment\ngraph   # trailing\nvertex 1\n\nflag 0\n");
  CHECK(graph::genus(g) == 1);
  CHECK(g.num_flags() == 1);
}

TEST_CASE("graphs round-trip") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    auto g = oracle::random_graph(rng);
    if (t % 3 == 0) g.vertices[0].degree = static_cast<long long>(t);
    CHECK(io::parse_graph(io::serialize(g)) == g);
  }
}

TEST_CASE("complexes round-trip with orientations") {
  auto k = sphere_action(3).complex;
  CHECK(io::parse_complex(io::serialize(k)) == k);
  auto t = torus_action(2).complex;
  CHECK(io::parse_complex(io::serialize(t)) == t);
}

TEST_CASE("unsorted simplices fold the permutation into the sign") {
  auto a = io::parse_complex("#orbivfc v1\ncomplex\nsimplex 1 0 2\n");
  auto b = io::parse_complex("#orbivfc v1\ncomplex\nsimplex 0 1 2 sign=-1\n");
  CHECK(a == b);
}

TEST_CASE("bundles and multisections round-trip") {
  std::vector<std::pair<EquivariantBundle, Multisection>> cases;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}}) cases.push_back({football_bundle(m, n), football_section(m, n)});
  cases.push_back({single_chart_bundle(sphere_tangent_chart(3)), generic_sphere_field(3, 1)});
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    auto inst = random_instance(rng);
    cases.push_back({inst.bundle, inst.multisection});
  }
  for (auto& [e, m] : cases) {
    const auto text = io::serialize(e);
    auto back = io::parse_bundle(text);
    CHECK(io::serialize(back) == text);
    CHECK(back.quotient == e.quotient);
    REQUIRE(back.num_charts() == e.num_charts());
    for (int c = 0; c < e.num_charts(); ++c) {
      CHECK(back.charts[c].bundle.action.complex == e.charts[c].bundle.action.complex);
      CHECK(back.charts[c].bundle.action.perm == e.charts[c].bundle.action.perm);
      CHECK(back.charts[c].bundle.rho == e.charts[c].bundle.rho);
      CHECK(back.charts[c].projection == e.charts[c].projection);
      CHECK(back.charts[c].bundle.defects == e.charts[c].bundle.defects);
    }
    CHECK(back.transitions == e.transitions);
    auto mb = io::parse_multisection(io::serialize(m));
    CHECK(io::serialize(mb) == io::serialize(m));
    CHECK(equivalent(e, mb, m, Equivalence::Lifted));
  }
}

TEST_CASE("derived global systems round-trip") {
  std::vector<DGS> cases{open_ray_dgs(4), path_into_strip(false)};
  std::mt19937_64 rng(40);
  for (int t = 0; t < 10; ++t) cases.push_back(random_dgs(rng));
  for (auto& d : cases) {
    const auto text = io::serialize(d);
    auto back = io::parse_dgs(text);
    CHECK(io::serialize(back) == text);
    CHECK(back.space_level == d.space_level);
    REQUIRE(back.levels.size() == d.levels.size());
    for (std::size_t i = 0; i < d.levels.size(); ++i) {
      CHECK(back.levels[i].open == d.levels[i].open);
      CHECK(back.levels[i].chart.footprint == d.levels[i].chart.footprint);
      CHECK(back.levels[i].chart.section == d.levels[i].chart.section);
    }
    REQUIRE(back.embeddings.size() == d.embeddings.size());
    for (std::size_t i = 0; i < d.embeddings.size(); ++i) {
      CHECK(back.embeddings[i].domain == d.embeddings[i].domain);
      CHECK(back.embeddings[i].dphi == d.embeddings[i].dphi);
      CHECK(back.embeddings[i].h == d.embeddings[i].h);
    }
    CHECK(validate(back).ok() == validate(d).ok());
  }
}

TEST_CASE("command line") {
  std::string out;
  CHECK(run({"euler", "football_2_3"}, out) == 0);
  CHECK(out == "5/6\n");
  CHECK(run({"strata", "--genus", "1", "--marks", "1", "--max-vertices", "2"}, out) == 0);
  CHECK(out.rfind("2 graphs\n", 0) == 0);
  CHECK(run({"rho", "6"}, out) == 0);
  CHECK(out == "12\n");
  CHECK(run({"bernoulli", "4"}, out) == 0);
  CHECK(out == "-1/30\n");
  CHECK(run({"gw-elliptic", "--genus", "0", "--mult", "2,3"}, out) == 0);
  CHECK(out == "17/6\n");
  CHECK(run({"gw-deg0", "--chi", "240", "--genus", "2"}, out) == 0);
  CHECK(out == "-1\n");
  CHECK(run({"vdim", "--n", "3", "--genus", "4", "--marks", "0"}, out) == 0);
  CHECK(out == "0\n");
  CHECK(run({"genus", "/nonexistent/file"}, out) == 2);
  CHECK(run({"frobnicate"}, out) == 2);
}

TEST_CASE("seed comes from the environment when set") {
  std::string a, b, c;
  run({"euler", "sphere_2", "--seed", "3"}, a);
  setenv("ORBIVFC_SEED", "3", 1);
  run({"euler", "sphere_2", "--seed", "99"}, b);
  unsetenv("ORBIVFC_SEED");
  run({"perturb", "torus_1", "--seed", "3"}, c);
  CHECK(a == b);
  CHECK(a == "1\n");
  std::string d;
  run({"perturb", "torus_1", "--seed", "3"}, d);
  CHECK(c == d);
}
