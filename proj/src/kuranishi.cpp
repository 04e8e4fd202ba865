#include "orbivfc/kuranishi.hpp"

#include "orbivfc/euler.hpp"
#include "orbivfc/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace orbivfc {

namespace {

std::string str(int x) { return std::to_string(x); }

bool is_zero_vec(const VectorQ& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

/// Setwise stabilizer of simplex s restricted to the given elements.
std::set<int> stabilizer_in(const GroupAction& a, int s, const std::vector<int>& elems) {
  std::set<int> out;
  for (int g : elems)
    if (a.act(g, s) == s) out.insert(g);
  return out;
}

std::vector<int> all_elements(const FiniteGroup& g) {
  std::vector<int> e(g.order());
  std::iota(e.begin(), e.end(), 0);
  return e;
}

/// Components of the subgraph of k's 1-skeleton spanned by the marked vertices.
std::vector<std::vector<int>> components(const SimplicialComplex& k, const std::vector<bool>& marked) {
  std::vector<int> parent(k.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int s = 0; s < k.size(); ++s) {
    if (k.dim_of(s) != 1) continue;
    int a = k.simplex(s)[0], b = k.simplex(s)[1];
    if (marked[a] && marked[b]) parent[find(a)] = find(b);
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < k.num_vertices(); ++v)
    if (marked[v]) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [r, vs] : groups) out.push_back(vs);
  return out;
}

}  // namespace

std::vector<bool> zero_vertices(const KuranishiChart& c) {
  std::vector<bool> z(c.section.size());
  for (std::size_t v = 0; v < c.section.size(); ++v) z[v] = is_zero_vec(c.section[v]);
  return z;
}

std::vector<int> zero_simplices(const KuranishiChart& c) {
  const auto z = zero_vertices(c);
  const auto& k = c.bundle.action.complex;
  std::vector<int> out;
  for (int s = 0; s < k.size(); ++s) {
    const auto& sx = k.simplex(s);
    if (std::all_of(sx.begin(), sx.end(), [&](int v) { return z[v]; })) out.push_back(s);
  }
  return out;
}

int footprint_of(const KuranishiChart& c, const SimplicialComplex& m, int s) {
  Simplex img;
  for (int v : c.bundle.action.complex.simplex(s)) {
    if (c.footprint[v] < 0) throw InvalidInput("footprint undefined at vertex " + str(v));
    img.push_back(c.footprint[v]);
  }
  std::sort(img.begin(), img.end());
  if (std::adjacent_find(img.begin(), img.end()) != img.end())
    throw InvalidInput("footprint collapses chart simplex " + str(s));
  auto idx = m.find(img);
  if (!idx) throw InvalidInput("footprint image of chart simplex " + str(s) + " is not a simplex of M");
  return *idx;
}

CheckReport validate_chart(const KuranishiChart& c, const SimplicialComplex& m) {
  CheckReport r;
  const auto& b = c.bundle;
  const auto& k = b.action.complex;
  const int nv = k.num_vertices();
  if (static_cast<int>(c.section.size()) != nv || static_cast<int>(c.footprint.size()) != nv) {
    r.fail("section and footprint need one entry per vertex");
    return r;
  }
  for (const auto& v : c.section)
    if (v.size() != b.rank) {
      r.fail("section value has the wrong rank");
      return r;
    }
  try {
    validate(single_chart_bundle(b));
  } catch (const std::exception& e) {
    r.fail(std::string("bundle: ") + e.what());
    return r;
  }
  if (k.dimension() - b.rank != c.dimension)
    r.fail("dimension mismatch: dim V - rank U = " + str(k.dimension() - b.rank) + ", chart says " + str(c.dimension));
  for (int g = 0; g < b.action.group.order(); ++g)
    if (act(b, g, c.section) != c.section) {
      r.fail("section is not equivariant under element " + str(g));
      break;
    }
  const auto z = zero_vertices(c);
  for (int s = 0; s < k.size(); ++s) {
    std::vector<VectorQ> nonzero;
    for (int v : k.simplex(s))
      if (!z[v]) nonzero.push_back(c.section[v]);
    if (!nonzero.empty() && pl::zero_meets(nonzero)) {
      r.fail("zero set is not a subcomplex near simplex " + str(s));
      break;
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (z[v] != (c.footprint[v] >= 0)) {
      r.fail("footprint must be defined exactly on zeros (vertex " + str(v) + ")");
      return r;
    }
    if (c.footprint[v] >= m.num_vertices()) {
      r.fail("footprint of vertex " + str(v) + " is not a point of M");
      return r;
    }
    for (int g = 0; g < b.action.group.order(); ++g)
      if (c.footprint[b.action.act_vertex(g, v)] != c.footprint[v]) {
        r.fail("footprint does not factor through the quotient at vertex " + str(v));
        return r;
      }
  }
  auto orb = build_quotient(b.action);
  std::map<int, int> image_orbit;
  for (int s : zero_simplices(c)) {
    int img;
    try {
      img = footprint_of(c, m, s);
    } catch (const InvalidInput& e) {
      r.fail(e.what());
      continue;
    }
    auto [it, fresh] = image_orbit.emplace(img, orb.orbit_of[s]);
    if (!fresh && it->second != orb.orbit_of[s])
      r.fail("footprint is not injective on the quotient: two orbits over M simplex " + str(img));
  }
  return r;
}

CoordinateChange identity_change(const KuranishiChart& c) {
  CoordinateChange cc;
  const auto& g = c.bundle.action.group;
  cc.subgroup = all_elements(g);
  cc.h = cc.subgroup;
  cc.domain.resize(c.bundle.num_vertices());
  std::iota(cc.domain.begin(), cc.domain.end(), 0);
  cc.phi = cc.domain;
  cc.dphi = MatrixQ::Identity(c.rank(), c.rank());
  return cc;
}

CheckReport validate_coordinate_change(const KuranishiChart& c1, const KuranishiChart& c2,
                                       const CoordinateChange& cc) {
  CheckReport r;
  const auto& a1 = c1.bundle.action;
  const auto& a2 = c2.bundle.action;
  const auto& g1 = a1.group;
  const auto& g2 = a2.group;
  const int nv1 = a1.complex.num_vertices();
  if (static_cast<int>(cc.phi.size()) != nv1 || static_cast<int>(cc.h.size()) != g1.order()) {
    r.fail("phi and h need one entry per source vertex and element");
    return r;
  }
  if (cc.dphi.rows() != c2.rank() || cc.dphi.cols() != c1.rank()) {
    r.fail("fiber map has the wrong shape");
    return r;
  }
  if (c1.dimension != c2.dimension) r.fail("charts have different dimensions");
  if (a1.complex.dimension() > a2.complex.dimension()) r.fail("source chart is bigger than the target");
  if (!g1.is_subgroup(cc.subgroup)) {
    r.fail("subgroup is not a subgroup of the source group");
    return r;
  }
  std::set<int> sub(cc.subgroup.begin(), cc.subgroup.end());
  for (int g = 0; g < g1.order(); ++g)
    if ((cc.h[g] >= 0) != sub.count(g) || cc.h[g] >= g2.order()) {
      r.fail("h must be defined exactly on the subgroup");
      return r;
    }
  std::vector<bool> in_domain(nv1, false);
  for (int v : cc.domain) {
    if (v < 0 || v >= nv1) {
      r.fail("domain vertex out of range");
      return r;
    }
    in_domain[v] = true;
  }
  for (int v = 0; v < nv1; ++v)
    if (in_domain[v] != (cc.phi[v] >= 0) || cc.phi[v] >= a2.complex.num_vertices()) {
      r.fail("phi must be defined exactly on the domain");
      return r;
    }
  if (cc.domain.empty()) {
    r.fail("empty sub-chart");
    return r;
  }
  if (components(a1.complex, in_domain).size() != 1) r.fail("sub-chart is not connected");
  for (int g = 0; g < g1.order(); ++g)
    for (int v : cc.domain) {
      const bool inside = in_domain[a1.act_vertex(g, v)];
      if (sub.count(g) && !inside) r.fail("sub-chart is not invariant under element " + str(g));
      if (!sub.count(g) && inside) r.fail("element " + str(g) + " outside the subgroup meets the sub-chart");
      if (!r.ok()) return r;
    }
  // embedding
  std::set<int> images;
  for (int v : cc.domain) images.insert(cc.phi[v]);
  if (images.size() != cc.domain.size()) r.fail("phi is not injective");
  std::vector<int> sub_simplices;
  for (int s = 0; s < a1.complex.size(); ++s) {
    const auto& sx = a1.complex.simplex(s);
    if (!std::all_of(sx.begin(), sx.end(), [&](int v) { return in_domain[v]; })) continue;
    sub_simplices.push_back(s);
    Simplex img;
    for (int v : sx) img.push_back(cc.phi[v]);
    std::sort(img.begin(), img.end());
    if (!a2.complex.find(img)) {
      r.fail("phi does not map simplex " + str(s) + " to a simplex");
      return r;
    }
  }
  // group data
  for (int x : cc.subgroup)
    for (int y : cc.subgroup)
      if (cc.h[g1.mul(x, y)] != g2.mul(cc.h[x], cc.h[y])) {
        r.fail("h is not a homomorphism");
        return r;
      }
  std::set<int> himg;
  for (int x : cc.subgroup) himg.insert(cc.h[x]);
  if (himg.size() != cc.subgroup.size()) r.fail("h is not injective");
  for (int g : cc.subgroup)
    for (int v : cc.domain)
      if (cc.phi[a1.act_vertex(g, v)] != a2.act_vertex(cc.h[g], cc.phi[v])) {
        r.fail("phi is not equivariant under element " + str(g));
        return r;
      }
  if (linalg::rank(cc.dphi) != c1.rank()) r.fail("fiber map is not injective");
  for (int g : cc.subgroup)
    if (MatrixQ(cc.dphi * c1.bundle.rho[g]) != MatrixQ(c2.bundle.rho[cc.h[g]] * cc.dphi)) {
      r.fail("fiber map is not equivariant under element " + str(g));
      break;
    }
  // sections and footprints
  for (int v : cc.domain) {
    if (VectorQ(cc.dphi * c1.section[v]) != c2.section[cc.phi[v]]) {
      r.fail("D phi s1 != s2 phi at vertex " + str(v));
      break;
    }
    if (c1.footprint[v] >= 0 && c1.footprint[v] != c2.footprint[cc.phi[v]]) {
      r.fail("psi1 != psi2 phi at vertex " + str(v));
      break;
    }
  }
  // isotropy at zeros
  const auto z1 = zero_vertices(c1);
  const auto all2 = all_elements(g2);
  for (int s : sub_simplices) {
    const auto& sx = a1.complex.simplex(s);
    if (!std::all_of(sx.begin(), sx.end(), [&](int v) { return z1[v]; })) continue;
    Simplex img;
    for (int v : sx) img.push_back(cc.phi[v]);
    std::sort(img.begin(), img.end());
    const int t = a2.complex.index(img);
    std::set<int> mapped;
    for (int g : stabilizer_in(a1, s, cc.subgroup)) mapped.insert(cc.h[g]);
    if (mapped != stabilizer_in(a2, t, all2)) {
      r.fail("h is not an isomorphism of isotropy groups at zero simplex " + str(s));
      break;
    }
  }
  return r;
}

CocycleReport check_cocycle(const KuranishiChart& c1, const KuranishiChart&, const KuranishiChart& c3,
                            const CoordinateChange& cc12, const CoordinateChange& cc23,
                            const CoordinateChange& cc13) {
  CocycleReport rep;
  const auto& k1 = c1.bundle.action.complex;
  const auto& a3 = c3.bundle.action;
  const auto& g3 = a3.group;
  std::vector<bool> triple(k1.num_vertices(), false);
  for (int x = 0; x < k1.num_vertices(); ++x) {
    const int y = cc12.phi[x];
    triple[x] = y >= 0 && cc23.phi[y] >= 0 && cc13.phi[x] >= 0;
  }
  const MatrixQ composite = cc23.dphi * cc12.dphi;
  std::vector<std::pair<int, int>> group_pairs;  // (h13(a), h23(h12(a)))
  for (std::size_t a = 0; a < cc12.h.size(); ++a) {
    const int b = cc12.h[a];
    if (b < 0 || cc13.h[a] < 0 || cc23.h[b] < 0) continue;
    group_pairs.push_back({cc13.h[a], cc23.h[b]});
  }
  int idx = 0;
  for (auto& comp : components(k1, triple)) {
    CocycleComponent cres;
    cres.vertices = comp;
    int best = 0;  // 1: vertex maps match, 2: fiber maps too
    for (int g = 0; g < g3.order() && !cres.twist; ++g) {
      bool vmatch = std::all_of(comp.begin(), comp.end(), [&](int x) {
        return cc13.phi[x] == a3.act_vertex(g, cc23.phi[cc12.phi[x]]);
      });
      if (!vmatch) continue;
      best = std::max(best, 1);
      if (cc13.dphi != MatrixQ(c3.bundle.rho[g] * composite)) continue;
      best = 2;
      bool adj = std::all_of(group_pairs.begin(), group_pairs.end(), [&](auto p) {
        return g3.mul(g3.mul(g, p.first), g3.inv(g)) == p.second;
      });
      if (adj) cres.twist = g;
    }
    if (!cres.twist) {
      const char* why = best == 0 ? "vertex maps differ for every g" : best == 1 ? "fiber maps differ" : "adjoint condition fails";
      rep.failures.push_back("component " + str(idx) + " (vertex " + str(comp.front()) + "): " + why);
    }
    rep.components.push_back(std::move(cres));
    ++idx;
  }
  return rep;
}

std::vector<std::string> semicontinuity_violations(const SimplicialComplex& m, const std::vector<int>& level) {
  std::vector<std::string> out;
  for (int s = 0; s < m.size(); ++s)
    for (int f : m.faces(s))
      if (level[f] < level[s])
        out.push_back("M simplex " + str(f) + " at level " + str(level[f]) + " lies in the closure of simplex " +
                      str(s) + " at level " + str(level[s]));
  return out;
}

LevelMap level_map(const KuranishiStructure& k) {
  const auto& m = k.space;
  if (static_cast<int>(k.center.size()) != m.size()) throw InvalidInput("need a center chart per simplex of M");
  LevelMap out;
  out.level.resize(m.size());
  for (int s = 0; s < m.size(); ++s) {
    const int c = k.center[s];
    if (c < 0 || c >= static_cast<int>(k.charts.size())) throw InvalidInput("center chart out of range");
    const auto& chart = k.charts[c];
    bool hit = false;
    for (int z : zero_simplices(chart))
      if (footprint_of(chart, m, z) == s) hit = true;
    if (!hit) throw InvalidInput("chart " + str(c) + " does not cover M simplex " + str(s));
    out.level[s] = chart.rank();
    out.strata[out.level[s]].push_back(s);
  }
  auto bad = semicontinuity_violations(m, out.level);
  if (!bad.empty()) throw InvalidInput("level map is not upper semicontinuous: " + bad.front());
  for (auto& [l, cells] : out.strata) out.levels.push_back(l);
  return out;
}

std::vector<RationalChain> pure_orbibundle_vfc(
    const std::vector<std::pair<EquivariantBundle, Multisection>>& components) {
  std::vector<RationalChain> out;
  for (const auto& [e, m] : components) out.push_back(euler_cycle(e, m));
  return out;
}

namespace {

GroupAction z3_circle(int m) {
  const int n = 3 * m;
  std::vector<Simplex> tops;
  for (int i = 0; i < n; ++i) {
    Simplex e{i, (i + 1) % n};
    std::sort(e.begin(), e.end());
    tops.push_back(e);
  }
  GroupAction a;
  a.group = FiniteGroup::cyclic(3);
  a.complex = SimplicialComplex::from_simplices(tops);
  for (int g = 0; g < 3; ++g) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = (i + g * m) % n;
    a.perm.push_back(p);
  }
  return a;
}

GroupAction path_action(int len) {
  std::vector<Simplex> tops;
  for (int i = 0; i + 1 < len; ++i) tops.push_back({i, i + 1});
  if (len == 1) tops.push_back({0});
  return trivial_action(SimplicialComplex::from_simplices(tops));
}

KuranishiChart zero_chart(GroupAction a, std::vector<int> footprint) {
  KuranishiChart c;
  c.bundle.action = std::move(a);
  c.bundle.rank = 1;
  c.bundle.rho = trivial_rep(c.bundle.action.group, 1);
  c.section.assign(c.bundle.num_vertices(), VectorQ::Zero(1));
  c.footprint = std::move(footprint);
  c.dimension = c.bundle.dimension() - 1;
  return c;
}

CoordinateChange vertex_change(const std::vector<int>& phi, const std::vector<int>& h) {
  CoordinateChange cc;
  cc.phi = phi;
  for (std::size_t v = 0; v < phi.size(); ++v)
    if (phi[v] >= 0) cc.domain.push_back(static_cast<int>(v));
  cc.h = h;
  for (std::size_t g = 0; g < h.size(); ++g)
    if (h[g] >= 0) cc.subgroup.push_back(static_cast<int>(g));
  cc.dphi = MatrixQ::Identity(1, 1);
  return cc;
}

}  // namespace

CocycleTriple cocycle_triple(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int m = pick(3, 5), n = 3 * m;
  auto circle = z3_circle(m);
  std::vector<int> fp3(n);
  for (int i = 0; i < n; ++i) fp3[i] = i % m;
  CocycleTriple t;
  t.twist = pick(0, 2);
  t.c3 = zero_chart(circle, fp3);
  if (pick(0, 1) == 0) {
    const int l2 = pick(3, m + 1), l1 = pick(2, l2);
    const int a2 = pick(0, n - 1), g2 = pick(0, 2), b = pick(0, l2 - l1);
    std::vector<int> phi23(l2), fp2(l2);
    for (int i = 0; i < l2; ++i) {
      phi23[i] = circle.act_vertex(g2, (a2 + i) % n);
      fp2[i] = fp3[phi23[i]];
    }
    std::vector<int> phi12(l2 >= l1 ? l1 : 0), phi13(l1), fp1(l1);
    for (int i = 0; i < l1; ++i) {
      phi12[i] = b + i;
      phi13[i] = circle.act_vertex(t.twist, phi23[phi12[i]]);
      fp1[i] = fp2[phi12[i]];
    }
    t.c2 = zero_chart(path_action(l2), fp2);
    t.c1 = zero_chart(path_action(l1), fp1);
    t.cc12 = vertex_change(phi12, {0});
    t.cc23 = vertex_change(phi23, {0});
    t.cc13 = vertex_change(phi13, {0});
  } else {
    const int g12 = pick(0, 2), g23 = pick(0, 2);
    t.c1 = t.c2 = t.c3;
    std::vector<int> phi12(n), phi23(n), phi13(n);
    for (int i = 0; i < n; ++i) {
      phi12[i] = circle.act_vertex(g12, i);
      phi23[i] = circle.act_vertex(g23, i);
    }
    for (int i = 0; i < n; ++i) phi13[i] = circle.act_vertex(t.twist, phi23[phi12[i]]);
    t.cc12 = vertex_change(phi12, {0, 1, 2});
    t.cc23 = vertex_change(phi23, {0, 1, 2});
    t.cc13 = vertex_change(phi13, {0, 1, 2});
  }
  return t;
}

CoordinateChange mutate_change(const CocycleTriple& t, std::mt19937_64& rng, std::string* what) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  CoordinateChange cc = t.cc13;
  int kind = pick(0, 2);
  if (kind == 2 && cc.subgroup.size() < 2) kind = 0;
  const int n3 = t.c3.bundle.num_vertices();
  if (kind == 0) {
    const int x = cc.domain[pick(0, static_cast<int>(cc.domain.size()) - 1)];
    const int old = cc.phi[x];
    cc.phi[x] = (old + pick(1, n3 - 1)) % n3;
    if (what) *what = "vertex " + str(x);
  } else if (kind == 1) {
    cc.dphi(0, 0) += Rational(pick(1, 4), pick(1, 3));
    if (what) *what = "fiber map";
  } else {
    const int a = cc.subgroup[pick(1, static_cast<int>(cc.subgroup.size()) - 1)];
    const int order = t.c3.bundle.action.group.order();
    cc.h[a] = (cc.h[a] + pick(1, order - 1)) % order;
    if (what) *what = "group element " + str(a);
  }
  return cc;
}

IntervalStrip interval_strip(bool z2) {
  IntervalStrip out;
  std::vector<Simplex> mtops;
  for (int i = 0; i < 6; ++i) mtops.push_back({i, i + 1});
  out.space = SimplicialComplex::from_simplices(mtops);

  // strip: x = 0..4 (step 1/2), y in {-1, 0, 1} (step 1/2), mirror-symmetric triangulation
  auto id = [](int x, int y) { return x * 3 + (y + 1); };
  std::vector<Simplex> tops;
  for (int x = 0; x < 4; ++x)
    for (int s : {1, -1}) {
      Simplex a{id(x, 0), id(x + 1, 0), id(x + 1, s)}, b{id(x, 0), id(x + 1, s), id(x, s)};
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      tops.push_back(a);
      tops.push_back(b);
    }
  GroupAction strip;
  strip.complex = SimplicialComplex::from_simplices(tops);
  const int nv = strip.complex.num_vertices();
  std::vector<int> ident(nv), flip(nv);
  for (int x = 0; x <= 4; ++x)
    for (int y = -1; y <= 1; ++y) {
      ident[id(x, y)] = id(x, y);
      flip[id(x, y)] = id(x, -y);
    }
  if (z2) {
    strip.group = FiniteGroup::cyclic(2);
    strip.perm = {ident, flip};
  } else {
    strip.perm = {ident};
  }
  auto& c2 = out.strip;
  c2.bundle.action = strip;
  c2.bundle.rank = 1;
  c2.bundle.rho = z2 ? std::vector<MatrixQ>{MatrixQ::Identity(1, 1), -MatrixQ::Identity(1, 1)}
                     : trivial_rep(strip.group, 1);
  c2.section.resize(nv);
  c2.footprint.assign(nv, -1);
  for (int x = 0; x <= 4; ++x)
    for (int y = -1; y <= 1; ++y) {
      VectorQ s(1);
      s(0) = Rational(y, 2);
      c2.section[id(x, y)] = s;
      if (y == 0) c2.footprint[id(x, y)] = x;
    }
  c2.dimension = 1;

  auto& c1 = out.interval;
  c1.bundle.action = path_action(5);
  c1.bundle.rank = 0;
  c1.bundle.rho = trivial_rep(c1.bundle.action.group, 0);
  c1.section.assign(5, VectorQ(0));
  c1.footprint.resize(5);
  for (int t = 0; t < 5; ++t) c1.footprint[t] = t + 2;
  c1.dimension = 1;

  std::vector<int> phi(5, -1);
  for (int t = 0; t <= 2; ++t) phi[t] = id(t + 2, 0);
  out.change.phi = phi;
  out.change.domain = {0, 1, 2};
  out.change.subgroup = {0};
  out.change.h = {0};
  out.change.dphi = MatrixQ::Zero(1, 0);
  return out;
}

}  // namespace orbivfc
