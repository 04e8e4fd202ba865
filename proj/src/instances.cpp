#include "orbivfc/instances.hpp"

#include "orbivfc/perturb.hpp"

#include <algorithm>

namespace orbivfc {

namespace {

/// Orientation sign of the sorted simplex when the ordered tuple is positive.
void add_oriented(std::vector<Simplex>& tops, std::vector<int>& signs, Simplex ordered) {
  signs.push_back(permutation_sign(ordered));
  std::sort(ordered.begin(), ordered.end());
  tops.push_back(std::move(ordered));
}

int mod(int a, int n) { return ((a % n) + n) % n; }

/// Cyclic group acting through powers of gen.
GroupAction cyclic_action(SimplicialComplex k, const std::vector<int>& gen, int order) {
  GroupAction a;
  a.group = FiniteGroup::cyclic(order);
  a.complex = std::move(k);
  std::vector<int> cur(gen.size());
  for (std::size_t v = 0; v < gen.size(); ++v) cur[v] = static_cast<int>(v);
  for (int g = 0; g < order; ++g) {
    a.perm.push_back(cur);
    for (auto& x : cur) x = gen[x];
  }
  validate(a);
  return a;
}

VectorQ random_vector(std::mt19937_64& rng, int rank, long long bound) {
  VectorQ v(rank);
  for (int i = 0; i < rank; ++i) v(i) = random_rational(rng, bound);
  return v;
}

}  // namespace

GroupAction sphere_action(int k) {
  if (k < 1) throw InvalidInput("sphere needs k >= 1");
  const int n = 3 * k, north = n, south = n + 1;
  std::vector<Simplex> tops;
  std::vector<int> signs;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    add_oriented(tops, signs, {i, j, north});
    add_oriented(tops, signs, {j, i, south});
  }
  std::vector<int> gen(n + 2);
  for (int i = 0; i < n; ++i) gen[i] = (i + 3) % n;
  gen[north] = north;
  gen[south] = south;
  return cyclic_action(SimplicialComplex::from_simplices(tops, signs), gen, k);
}

ChartBundle sphere_tangent_chart(int k) {
  ChartBundle b;
  b.action = sphere_action(k);
  b.rank = 2;
  b.rho = trivial_rep(b.action.group, 2);
  b.defects = {{3 * k, 1}, {3 * k + 1, 1}};
  return b;
}

ChartBundle sphere_trivial_chart(int k, int rank) {
  ChartBundle b;
  b.action = sphere_action(k);
  b.rank = rank;
  b.rho = trivial_rep(b.action.group, rank);
  return b;
}

GroupAction torus_action(int n) {
  if (n < 1) throw InvalidInput("torus needs n >= 1");
  const int cols = 3 * n;
  auto id = [](int i, int j) { return i * 3 + j; };
  std::vector<Simplex> tops;
  std::vector<int> signs;
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % cols, j1 = (j + 1) % 3;
      add_oriented(tops, signs, {id(i, j), id(i1, j), id(i1, j1)});
      add_oriented(tops, signs, {id(i, j), id(i1, j1), id(i, j1)});
    }
  std::vector<int> gen(cols * 3);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < 3; ++j) gen[id(i, j)] = id((i + 3) % cols, j);
  return cyclic_action(SimplicialComplex::from_simplices(tops, signs), gen, n);
}

ChartBundle torus_trivial_chart(int n, int rank) {
  ChartBundle b;
  b.action = torus_action(n);
  b.rank = rank;
  b.rho = trivial_rep(b.action.group, rank);
  return b;
}

GroupAction circle_rotation(int n_vertices, int order) {
  if (order < 1 || n_vertices % order != 0 || n_vertices / order < 3)
    throw InvalidInput("circle rotation needs n_vertices = order * s with s >= 3");
  std::vector<Simplex> tops;
  for (int i = 0; i < n_vertices; ++i) tops.push_back({i, (i + 1) % n_vertices});
  std::vector<int> signs;
  for (auto& t : tops) {
    signs.push_back(permutation_sign(t));
    std::sort(t.begin(), t.end());
  }
  std::vector<int> gen(n_vertices);
  for (int i = 0; i < n_vertices; ++i) gen[i] = (i + n_vertices / order) % n_vertices;
  return cyclic_action(SimplicialComplex::from_simplices(tops, signs), gen, order);
}

GroupAction circle_reflection(int n_vertices) {
  if (n_vertices < 4 || n_vertices % 2 != 0) throw InvalidInput("reflected circle needs an even cycle of length >= 4");
  std::vector<Simplex> tops;
  std::vector<int> signs;
  for (int i = 0; i < n_vertices; ++i) add_oriented(tops, signs, {i, (i + 1) % n_vertices});
  std::vector<int> gen(n_vertices);
  for (int i = 0; i < n_vertices; ++i) gen[i] = mod(-i, n_vertices);
  return cyclic_action(SimplicialComplex::from_simplices(tops, signs), gen, 2);
}

ChartBundle circle_sign_chart(int n_vertices) {
  ChartBundle b;
  b.action = circle_reflection(n_vertices);
  b.rank = 1;
  b.rho = {MatrixQ::Identity(1, 1), -MatrixQ::Identity(1, 1)};
  return b;
}

GroupAction interval_action(int n_vertices) {
  std::vector<Simplex> tops;
  for (int i = 0; i + 1 < n_vertices; ++i) tops.push_back({i, i + 1});
  return trivial_action(SimplicialComplex::from_simplices(tops));
}

EquivariantBundle football_bundle(int m, int n) {
  if (m < 1 || n < 1) throw InvalidInput("football needs m, n >= 1");
  // Quotient: N = 0, A_i = 1 + i, B_i = 4 + i, S = 7.
  const int N = 0, S = 7;
  auto A = [](int i) { return 1 + mod(i, 3); };
  auto B = [](int i) { return 4 + mod(i, 3); };
  std::vector<Simplex> qtops;
  std::vector<int> qsigns;
  for (int i = 0; i < 3; ++i) {
    add_oriented(qtops, qsigns, {N, A(i), A(i + 1)});
    add_oriented(qtops, qsigns, {A(i), B(i), B(i + 1)});
    add_oriented(qtops, qsigns, {A(i), B(i + 1), A(i + 1)});
    add_oriented(qtops, qsigns, {S, B(i + 1), B(i)});
  }
  EquivariantBundle e;
  e.quotient = SimplicialComplex::from_simplices(qtops, qsigns);

  // Both charts: center 0, inner ring 1..3p, outer ring 3p+1..6p, rotation by three.
  auto make_chart = [&](int p, bool south) {
    const int r = 3 * p;
    auto in = [&](int i) { return 1 + mod(i, r); };
    auto out = [&](int i) { return 1 + r + mod(i, r); };
    std::vector<int> proj(1 + 2 * r);
    proj[0] = south ? S : N;
    for (int i = 0; i < r; ++i) {
      proj[in(i)] = south ? B(-i) : A(i);
      proj[out(i)] = south ? A(-i) : B(i);
    }
    std::vector<Simplex> tops;
    for (int i = 0; i < r; ++i) {
      tops.push_back({0, in(i), in(i + 1)});
      if (!south) {
        tops.push_back({in(i), out(i), out(i + 1)});
        tops.push_back({in(i), out(i + 1), in(i + 1)});
      } else {
        tops.push_back({out(i), in(i), in(i - 1)});
        tops.push_back({out(i), in(i - 1), out(i - 1)});
      }
    }
    // Pull the quotient orientation back along the projection.
    std::vector<int> signs;
    for (auto& t : tops) {
      std::sort(t.begin(), t.end());
      Simplex img;
      for (int v : t) img.push_back(proj[v]);
      Simplex sorted = img;
      std::sort(sorted.begin(), sorted.end());
      const int qs = e.quotient.orientation(e.quotient.index(sorted));
      signs.push_back(qs * permutation_sign(img));
    }
    std::vector<int> gen(1 + 2 * r);
    gen[0] = 0;
    for (int i = 0; i < r; ++i) {
      gen[in(i)] = in(i + 3);
      gen[out(i)] = out(i + 3);
    }
    AtlasChart c;
    c.bundle.action = cyclic_action(SimplicialComplex::from_simplices(tops, signs), gen, p);
    c.bundle.rank = 2;
    c.bundle.rho = trivial_rep(c.bundle.action.group, 2);
    c.bundle.defects = {{0, 1}};
    c.projection = std::move(proj);
    return c;
  };
  auto north = make_chart(m, false);
  auto south = make_chart(n, true);
  for (int s = 0; s < e.quotient.size(); ++s) {
    const auto& sx = e.quotient.simplex(s);
    const bool has_s = std::find(sx.begin(), sx.end(), S) != sx.end();
    (has_s ? south : north).owned.push_back(sx);
  }
  e.charts.push_back(std::move(north));
  e.charts.push_back(std::move(south));
  e.transitions[{0, 1}] = MatrixQ::Identity(2, 2) * Rational(-m, n);
  return e;
}

Multisection football_section(int m, int n) {
  auto e = football_bundle(m, n);
  Multisection ms;
  for (int c = 0; c < 2; ++c) {
    VectorQ v(2);
    v << (c == 0 ? Rational(1) : Rational(-m, n)), Rational(0);
    ms.charts.push_back({Branch{1, FieldValues(e.charts[c].bundle.num_vertices(), v)}});
  }
  return ms;
}

IntervalConfiguration interval_configuration() {
  ChartBundle b;
  b.action = interval_action(9);
  b.rank = 1;
  b.rho = trivial_rep(b.action.group, 1);
  IntervalConfiguration out;
  out.bundle = single_chart_bundle(std::move(b));
  FieldValues b1, b2;
  for (int i = 0; i < 9; ++i) {
    VectorQ x(1), y(1);
    x(0) = Rational(i) - Rational(3, 2);
    y(0) = i <= 4 ? x(0) : Rational(15, 2) - Rational(i);
    b1.push_back(x);
    b2.push_back(y);
  }
  out.multisection.charts = {{Branch{1, b1}, Branch{1, b2}}};
  return out;
}

Instance random_instance(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    Instance inst;
    ChartBundle b;
    bool invariant_base = true;
    switch (pick(0, 3)) {
      case 0: {
        const int order = pick(1, 3), reps = pick(1, 2), rank = pick(0, 1);
        b.action = circle_rotation(3 * order * reps, order);
        b.rank = rank;
        b.rho = trivial_rep(b.action.group, rank);
        inst.name = "circle/Z" + std::to_string(order) + " rank " + std::to_string(rank);
        break;
      }
      case 1: {
        const int len = 2 * pick(3, 4);
        b = circle_sign_chart(len);
        invariant_base = false;
        inst.name = "circle/reflection sign rank 1";
        break;
      }
      case 2: {
        const int k = pick(1, 3), rank = pick(0, 2);
        const bool tangent = rank == 2 && pick(0, 1) == 1;
        b = tangent ? sphere_tangent_chart(k) : sphere_trivial_chart(k, rank);
        inst.name = "sphere/Z" + std::to_string(k) + (tangent ? " tangent" : " rank " + std::to_string(rank));
        break;
      }
      default: {
        const int n = pick(1, 2), rank = pick(0, 2);
        b = torus_trivial_chart(n, rank);
        inst.name = "torus/Z" + std::to_string(n) + " rank " + std::to_string(rank);
        break;
      }
    }
    const int rank = b.rank;
    const auto& a = b.action;
    const int nv = b.num_vertices();
    FieldValues base(nv, VectorQ::Zero(rank)), q(nv, VectorQ::Zero(rank));
    if (invariant_base) {
      std::vector<bool> done(nv, false);
      for (int v = 0; v < nv; ++v) {
        if (done[v]) continue;
        auto val = random_vector(rng, rank, 8);
        for (int g = 0; g < a.group.order(); ++g) {
          base[a.act_vertex(g, v)] = val;
          done[a.act_vertex(g, v)] = true;
        }
      }
    }
    for (int v = 0; v < nv; ++v)
      if (!invariant_base || pick(0, 1) == 1) q[v] = random_vector(rng, rank, 8);
    inst.bundle = single_chart_bundle(b);
    Multisection s0, t;
    s0.charts = {{Branch{1, base}}};
    t.charts = {enhance(inst.bundle.charts[0].bundle, q)};
    inst.multisection = normalize(sum(s0, t));
    if (is_transversal(inst.bundle, inst.multisection).ok) return inst;
  }
}

Multisection generic_sphere_field(int k, std::uint64_t seed) {
  auto e = single_chart_bundle(sphere_tangent_chart(k));
  auto zero = zero_multisection(e);
  return perturb_relative(e, zero, zero, generating_basis(e, {}), seed).multisection;
}

}  // namespace orbivfc
