// Acceptance gate: one line per criterion, nonzero exit when any fails.
#include "oracles.hpp"
#include "orbivfc/cli.hpp"
#include "orbivfc/dgs.hpp"
#include "orbivfc/euler.hpp"
#include "orbivfc/instances.hpp"
#include "orbivfc/invariants.hpp"
#include "orbivfc/io.hpp"
#include "orbivfc/kuranishi.hpp"
#include "orbivfc/perturb.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace orbivfc;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int n, const std::string& title, const Outcome& o, double secs, const std::string& limit) {
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  [" << secs << " s, " << limit
       << "]";
  if (!o.pass) line << "  " << o.detail;
  std::cout << line.str() << std::endl;
  if (!o.pass) ++failures;
}

template <typename F>
void criterion(int n, const std::string& title, const std::string& limit, F body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  report(n, title, o, seconds_since(t0), limit);
}

struct RandomCase {
  Instance inst;
  EulerComputation euler;
};

std::vector<RandomCase> suite;

std::string run_cli(const std::string& line, const std::filesystem::path& dir) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, '|')) fields.push_back(f);
  std::vector<const char*> argv{"orbivfc"};
  for (std::size_t i = 1; i < fields.size(); ++i) argv.push_back(fields[i].c_str());
  std::ostringstream out, err;
  auto cwd = std::filesystem::current_path();
  std::filesystem::current_path(dir);
  const int rc = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  std::filesystem::current_path(cwd);
  return out.str() + err.str() + "exit: " + std::to_string(rc) + "\n";
}

}  // namespace

int main() {
  const auto start = Clock::now();

  criterion(1, "football Euler class equals 1/m + 1/n", "limit 1 s each", [](Outcome& o) {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 5}, {1, 7}}) {
      auto t0 = Clock::now();
      auto e = io::parse_bundle(io::read_file("corpus/football_" + std::to_string(m) + "_" + std::to_string(n) + ".bundle"));
      auto s = io::parse_multisection(io::read_file("corpus/football_" + std::to_string(m) + "_" + std::to_string(n) + ".ms"));
      const Rational got = euler_number(euler_cycle(e, s));
      const std::string tag = std::to_string(m) + "," + std::to_string(n);
      o.require(got == Rational(1, m) + Rational(1, n), tag + " gave " + to_string(got));
      o.require(seconds_since(t0) < 1.0, tag + " too slow");
    }
  });

  criterion(2, "rotated sphere gives 2/k, free torus gives 0", "limit 5 s each", [](Outcome& o) {
    for (int k : {1, 2, 3, 6}) {
      auto t0 = Clock::now();
      auto e = single_chart_bundle(sphere_tangent_chart(k));
      const Rational got = euler_number(euler_cycle(e, generic_sphere_field(k, 2024 + k)));
      o.require(got == Rational(2, k), "k=" + std::to_string(k) + " gave " + to_string(got));
      o.require(seconds_since(t0) < 5.0, "k=" + std::to_string(k) + " too slow");
    }
    for (int n : {2, 3}) {
      auto t0 = Clock::now();
      auto e = single_chart_bundle(torus_trivial_chart(n, 2));
      auto z = zero_multisection(e);
      auto p = perturb_relative(e, z, z, generating_basis(e, {}), 7 + n).multisection;
      const Rational got = euler_number(euler_cycle(e, p));
      o.require(got == 0, "torus n=" + std::to_string(n) + " gave " + to_string(got));
      o.require(seconds_since(t0) < 5.0, "torus too slow");
    }
  });

  criterion(3, "Euler cycles of 200 random instances are closed; dim-0 mass is seed invariant", "no time limit",
            [](Outcome& o) {
              std::mt19937_64 rng(20240611);
              int dim0 = 0;
              for (int t = 0; t < 200; ++t) {
                auto inst = random_instance(rng);
                auto euler = compute_euler(inst.bundle, inst.multisection);
                RandomCase c{std::move(inst), std::move(euler)};
                o.require(c.euler.chain.boundary().is_zero(), c.inst.name + " has nonzero boundary");
                const auto& e = c.inst.bundle;
                if (e.rank() == e.dimension()) {
                  ++dim0;
                  auto z = zero_multisection(e);
                  auto basis = generating_basis(e, {});
                  auto mine = mass_by_component(e, c.euler.chain);
                  for (std::uint64_t seed : {11u, 12u}) {
                    auto p = perturb_relative(e, z, z, basis, seed + 100 * t).multisection;
                    o.require(mass_by_component(e, euler_cycle(e, p)) == mine, c.inst.name + " mass depends on the seed");
                  }
                }
                suite.push_back(std::move(c));
              }
              o.require(dim0 > 0, "no dimension-zero cases");
            });

  criterion(4, "weight relation holds on every resolution and rejects 50 mutations", "no time limit", [](Outcome& o) {
    o.require(suite.size() >= 200, "criterion 3 did not produce its suite");
    for (auto& c : suite) o.require(check_weight_relation(c.inst.bundle, c.euler.resolution).ok, c.inst.name + " violates the relation");
    std::mt19937_64 rng(77);
    int mutations = 0, caught = 0;
    for (std::size_t i = 0; mutations < 50 && i < 10 * suite.size(); ++i) {
      auto res = suite[i % suite.size()].euler.resolution;
      if (!oracle::mutate_weight(res, rng)) continue;
      ++mutations;
      caught += !check_weight_relation(suite[i % suite.size()].inst.bundle, res).ok;
    }
    o.require(mutations == 50, "could not place 50 mutations");
    o.require(caught == mutations, std::to_string(mutations - caught) + " mutations passed");
  });

  criterion(5, "dual graphs: genus, stabilization, strata, idempotence", "no time limit", [](Outcome& o) {
    auto g = io::parse_graph(io::read_file("corpus/labeled_graph.graph"));
    o.require(graph::genus(g) == 4, "labeled graph genus is " + std::to_string(graph::genus(g)));
    auto tail = io::parse_graph(io::read_file("corpus/stab_tail.graph"));
    graph::LabeledDualGraph tail_want;
    tail_want.add_vertex(1);
    tail_want.add_flag(0);
    o.require(graph::isomorphic(graph::stabilize(tail), tail_want), "sphere tail not collapsed to a marked point");
    auto bridge = io::parse_graph(io::read_file("corpus/stab_bridge.graph"));
    graph::LabeledDualGraph bridge_want;
    bridge_want.add_vertex(1);
    bridge_want.add_vertex(0);
    bridge_want.add_edge(0, 1);
    bridge_want.add_flag(1);
    bridge_want.add_flag(1);
    o.require(graph::isomorphic(graph::stabilize(bridge), bridge_want), "bridge sphere not collapsed to a node");
    for (auto [gg, k] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}}) {
      std::set<std::string> got;
      for (auto& x : graph::enumerate_strata(gg, k, std::max(1, 2 * gg - 2 + k))) got.insert(oracle::canonical(x));
      o.require(got == oracle::strata(gg, k), "strata differ for (" + std::to_string(gg) + "," + std::to_string(k) + ")");
    }
    std::mt19937_64 rng(5);
    for (int t = 0; t < 1000; ++t) {
      auto r = oracle::random_graph(rng);
      auto s = graph::stabilize(r);
      o.require(graph::stabilize(s) == s, "stabilize not idempotent");
    }
  });

  criterion(6, "dimension formulas", "no time limit", [](Outcome& o) {
    for (int g = 0; g <= 10; ++g) o.require(graph::virtual_dim(3, g, 0, 0) == 0, "vdim(3,g,0,0) != 0");
    for (int n = 1; n <= 5; ++n)
      for (int g = 0; g < 5; ++g)
        for (int k = 0; k < 5; ++k)
          o.require(2LL * n * (1 - g) + 2LL * (3 * g - 3 + k) == graph::virtual_dim(n, g, k, 0), "identity fails");
    o.require(graph::riemann_roch_index(1, 0, 2) == 6, "rr(1,0,2)");
    o.require(graph::riemann_roch_index(3, 2, 5) == 4, "rr(3,2,5)");
    o.require(graph::riemann_roch_index(2, 1, 0) == 0, "rr(2,1,0)");
  });

  criterion(7, "Kuranishi and DGS checks", "no time limit", [](Outcome& o) {
    auto plain = interval_strip(false);
    o.require(validate_coordinate_change(plain.interval, plain.strip, plain.change).ok(), "trivial strip rejected");
    auto twisted = interval_strip(true);
    o.require(!validate_coordinate_change(twisted.interval, twisted.strip, twisted.change).ok(), "Z2 strip accepted");
    std::mt19937_64 rng(99);
    int rejected = 0;
    for (int t = 0; t < 100; ++t) {
      auto tr = cocycle_triple(rng);
      o.require(check_cocycle(tr.c1, tr.c2, tr.c3, tr.cc12, tr.cc23, tr.cc13).ok(), "unmutated triple fails");
      auto bad = mutate_change(tr, rng);
      rejected += !check_cocycle(tr.c1, tr.c2, tr.c3, tr.cc12, tr.cc23, bad).ok() ||
                  !validate_coordinate_change(tr.c1, tr.c3, bad).ok();
    }
    o.require(rejected == 100, std::to_string(100 - rejected) + " cocycle mutations accepted");
    for (int t = 0; t < 100; ++t) {
      auto d = random_dgs(rng);
      o.require(validate(d).ok(), "random system invalid");
      o.require(build_thickening(d).axioms.ok(), "equivalence axioms fail");
    }
    auto ray = open_ray_dgs(4);
    o.require(!hausdorff_check(ray).ok(), "open ray passes the Hausdorff check");
    auto s = shrink(ray, open_ray_shrinking(ray));
    o.require(s.report.ok() && hausdorff_check(s.dgs).ok(), "shrunk open ray fails");
  });

  criterion(8, "invariants", "no time limit", [](Outcome& o) {
    using namespace invariants;
    o.require(elliptic_N1({1, {}}) == 0, "N1(g=1) != 0");
    const Rational n23 = elliptic_N1({0, {2, 3}});
    o.require(n23 == Rational(17, 6), "N1(0,(2,3)) = " + to_string(n23));
    o.require(n23 == Rational(2 - 0 - 2) + Rational(oracle::divisor_sum(2), 2) + Rational(oracle::divisor_sum(3), 3),
              "divisor-sum oracle disagrees");
    for (long long chi : {-200LL, 1LL, 48LL}) {
      o.require(deg0_gw(chi, 2) == Rational(-chi, 240), "deg0 g=2");
      o.require(deg0_gw(chi, 3) == Rational(chi, 1008), "deg0 g=3");
      o.require(deg0_gw(chi, 2) == Rational(chi) * oracle::bernoulli(4) / 8, "Bernoulli oracle g=2");
      o.require(deg0_gw(chi, 3) == Rational(chi) * oracle::bernoulli(6) / 24, "Bernoulli oracle g=3");
    }
    std::mt19937_64 rng(8);
    int pairs = 0;
    while (pairs < 100) {
      long long a = 1 + static_cast<long long>(rng() % 500), b = 1 + static_cast<long long>(rng() % 500);
      if (std::gcd(a, b) != 1) continue;
      ++pairs;
      o.require(divisor_sum(a * b) == divisor_sum(a) * divisor_sum(b), "rho not multiplicative");
    }
    for (int d = 1; d <= 5; ++d) o.require(quintic_bookkeeping(d).diff_full == 0, "quintic difference nonzero");
  });

  criterion(9, "CLI corpus is byte-identical across runs and matches expected output", "suite limit 120 s",
            [&](Outcome& o) {
              const std::filesystem::path dir = std::filesystem::absolute("corpus");
              std::ifstream in(dir / "commands.txt");
              std::string line;
              int count = 0;
              while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                const std::string name = line.substr(0, line.find('|'));
                const auto first = run_cli(line, dir);
                const auto second = run_cli(line, dir);
                o.require(first == second, name + " differs between runs");
                o.require(first == io::read_file((dir / "expected" / (name + ".out")).string()), name + " differs from expected");
                ++count;
              }
              o.require(count > 0, "empty corpus");
              o.require(seconds_since(start) < 120.0, "suite over two minutes");
            });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
