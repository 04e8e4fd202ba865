#include "orbivfc/dgs.hpp"

#include "orbivfc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace orbivfc {

namespace {

std::string str(int x) { return std::to_string(x); }

int cell_rep(const GroupAction& a, int s) {
  int best = s;
  for (int g = 0; g < a.group.order(); ++g) best = std::min(best, a.act(g, s));
  return best;
}

bool invariant(const GroupAction& a, const std::vector<bool>& cells) {
  for (int s = 0; s < a.complex.size(); ++s)
    if (cells[s])
      for (int g = 0; g < a.group.order(); ++g)
        if (!cells[a.act(g, s)]) return false;
  return true;
}

std::vector<bool> flags_and(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

/// Index i with levels[i].index == index, for every level pair present.
struct Pair {
  int i, j;
  const DgsEmbedding* e;
};

std::vector<bool> empty_domain(const DGS& d, int i) {
  return std::vector<bool>(d.level(i).chart.bundle.action.complex.size(), false);
}

const std::vector<bool>& domain_or_empty(const DGS& d, int i, int j, std::vector<bool>& scratch) {
  if (auto* e = d.embedding(i, j)) return e->domain;
  scratch = empty_domain(d, i);
  return scratch;
}

/// Cells of the source mapped by the embedding, with their image index.
std::map<int, int> image_map(const DGS& d, const DgsEmbedding& e) {
  const auto& ks = d.level(e.source).chart.bundle.action.complex;
  const auto& kt = d.level(e.target).chart.bundle.action.complex;
  std::map<int, int> out;
  for (int s = 0; s < ks.size(); ++s)
    if (e.domain[s]) out[s] = image_simplex(ks, kt, e.phi, s);
  return out;
}

std::vector<int> vertices_of(const SimplicialComplex& k, const std::vector<bool>& cells) {
  std::set<int> vs;
  for (int s = 0; s < k.size(); ++s)
    if (cells[s]) vs.insert(k.simplex(s).begin(), k.simplex(s).end());
  return {vs.begin(), vs.end()};
}

void check_embedding(const DGS& d, const DgsEmbedding& e, DgsReport& r) {
  const std::string tag = "(3)";
  const std::string where = "embedding " + str(e.source) + "->" + str(e.target) + ": ";
  auto fail = [&](std::string m) { r.failures.push_back({tag, where + m}); };
  const auto& li = d.level(e.source);
  const auto& lj = d.level(e.target);
  const auto& ai = li.chart.bundle.action;
  const auto& aj = lj.chart.bundle.action;
  if (static_cast<int>(e.domain.size()) != ai.complex.size() ||
      static_cast<int>(e.phi.size()) != ai.complex.num_vertices() ||
      static_cast<int>(e.h.size()) != ai.group.order()) {
    fail("sizes do not match the source chart");
    return;
  }
  if (e.dphi.rows() != lj.chart.rank() || e.dphi.cols() != li.chart.rank()) {
    fail("fiber map has the wrong shape");
    return;
  }
  for (int s = 0; s < ai.complex.size(); ++s)
    if (e.domain[s] && !li.open[s]) {
      fail("Y(i,j) is not inside Y(i)");
      return;
    }
  if (!is_open(ai.complex, e.domain)) fail("Y(i,j) is not open");
  if (!invariant(ai, e.domain)) fail("Y(i,j) is not invariant");
  std::map<int, int> img;
  try {
    img = image_map(d, e);
  } catch (const InvalidInput& ex) {
    fail(ex.what());
    return;
  }
  for (auto [s, t] : img)
    if (!lj.open[t]) {
      fail("cell " + str(s) + " maps outside Y(j)");
      return;
    }
  const auto verts = vertices_of(ai.complex, e.domain);
  std::set<int> vimg;
  for (int v : verts) vimg.insert(e.phi[v]);
  if (vimg.size() != verts.size()) fail("phi is not injective");
  for (int h : e.h)
    if (h < 0 || h >= aj.group.order()) {
      fail("h is not defined on all of G_i");
      return;
    }
  const auto& gi = ai.group;
  for (int x = 0; x < gi.order(); ++x)
    for (int y = 0; y < gi.order(); ++y)
      if (e.h[gi.mul(x, y)] != aj.group.mul(e.h[x], e.h[y])) {
        fail("h is not a homomorphism");
        return;
      }
  if (std::set<int>(e.h.begin(), e.h.end()).size() != e.h.size()) fail("h is not injective");
  for (int g = 0; g < gi.order(); ++g)
    for (int v : verts)
      if (e.phi[ai.act_vertex(g, v)] != aj.act_vertex(e.h[g], e.phi[v])) {
        fail("phi is not equivariant");
        return;
      }
  if (linalg::rank(e.dphi) != li.chart.rank()) fail("fiber map is not injective");
  for (int g = 0; g < gi.order(); ++g)
    if (MatrixQ(e.dphi * li.chart.bundle.rho[g]) != MatrixQ(lj.chart.bundle.rho[e.h[g]] * e.dphi)) {
      fail("fiber map is not equivariant");
      break;
    }
  for (int v : verts) {
    if (VectorQ(e.dphi * li.chart.section[v]) != lj.chart.section[e.phi[v]]) {
      fail("D phi s_i != s_j phi at vertex " + str(v));
      break;
    }
    if (li.chart.footprint[v] >= 0 && li.chart.footprint[v] != lj.chart.footprint[e.phi[v]]) {
      fail("footprints disagree at vertex " + str(v));
      break;
    }
  }
  const auto zi = zero_simplices(li.chart);
  for (int s : zi) {
    if (!e.domain[s]) continue;
    std::set<int> a, b;
    for (int g = 0; g < gi.order(); ++g)
      if (ai.act(g, s) == s) a.insert(e.h[g]);
    for (int g = 0; g < aj.group.order(); ++g)
      if (aj.act(g, img[s]) == img[s]) b.insert(g);
    if (a != b) {
      fail("isotropy groups differ at zero cell " + str(s));
      break;
    }
  }
  auto fij = footprint_set(d, li, e.domain);
  auto fi = footprint_set(d, li, li.open);
  auto fj = footprint_set(d, lj, lj.open);
  if (fij != flags_and(fi, fj)) fail("F(i,j) differs from F(i) cap F(j)");
}

}  // namespace

int DGS::position(int index) const {
  for (std::size_t p = 0; p < levels.size(); ++p)
    if (levels[p].index == index) return static_cast<int>(p);
  return -1;
}

const DgsLevel& DGS::level(int index) const {
  const int p = position(index);
  if (p < 0) throw InvalidInput("no level " + str(index));
  return levels[p];
}

const DgsEmbedding* DGS::embedding(int i, int j) const {
  for (const auto& e : embeddings)
    if (e.source == i && e.target == j) return &e;
  return nullptr;
}

bool is_open(const SimplicialComplex& k, const std::vector<bool>& cells) {
  for (int s = 0; s < k.size(); ++s)
    if (cells[s])
      for (int c : k.cofaces(s))
        if (!cells[c]) return false;
  return true;
}

std::vector<bool> closure(const SimplicialComplex& k, const std::vector<bool>& cells) {
  std::vector<bool> out = cells;
  for (int s = k.size() - 1; s >= 0; --s)
    if (out[s])
      for (int f : k.faces(s)) out[f] = true;
  return out;
}

int image_simplex(const SimplicialComplex& source, const SimplicialComplex& target, const std::vector<int>& phi, int s) {
  Simplex img;
  for (int v : source.simplex(s)) {
    if (phi[v] < 0) throw InvalidInput("phi undefined at vertex " + str(v));
    img.push_back(phi[v]);
  }
  std::sort(img.begin(), img.end());
  if (std::adjacent_find(img.begin(), img.end()) != img.end()) throw InvalidInput("phi collapses cell " + str(s));
  auto t = target.find(img);
  if (!t) throw InvalidInput("image of cell " + str(s) + " is not a cell");
  return *t;
}

std::vector<bool> footprint_set(const DGS& d, const DgsLevel& l, const std::vector<bool>& cells) {
  std::vector<bool> out(d.space.size(), false);
  for (int z : zero_simplices(l.chart))
    if (cells[z]) out[footprint_of(l.chart, d.space, z)] = true;
  return out;
}

DgsReport validate(const DGS& d, bool tangent) {
  DgsReport r;
  r.notes.push_back("(7) compatibility with an ambient Kuranishi structure: not applicable without a generating chart set");
  auto fail = [&](const char* c, std::string m) { r.failures.push_back({c, std::move(m)}); };
  const auto& m = d.space;
  if (static_cast<int>(d.space_level.size()) != m.size()) {
    fail("(1)", "level map needs one entry per simplex of M");
    return r;
  }
  for (auto& v : semicontinuity_violations(m, d.space_level)) fail("(1)", "level map: " + v);
  for (std::size_t p = 0; p + 1 < d.levels.size(); ++p)
    if (d.levels[p].index >= d.levels[p + 1].index) fail("(1)", "levels must be strictly increasing");
  for (int l : d.space_level)
    if (d.position(l) < 0) {
      fail("(1)", "M has points of level " + str(l) + " but the system has no such level");
      break;
    }
  for (const auto& l : d.levels) {
    const auto& k = l.chart.bundle.action.complex;
    const std::string who = "level " + str(l.index) + ": ";
    if (l.chart.rank() != l.index) fail("(1)", who + "rank differs from the index");
    if (k.size() > 0 && k.dimension() != d.dimension + l.index) fail("(1)", who + "dimension is not n + i");
    if (static_cast<int>(l.open.size()) != k.size()) {
      fail("(1)", who + "open set has the wrong size");
      return r;
    }
    if (!is_open(k, l.open)) fail("(1)", who + "Y(i) is not open");
    if (!invariant(l.chart.bundle.action, l.open)) fail("(1)", who + "Y(i) is not invariant");
    for (auto& f : validate_chart(l.chart, m).failures) fail("(1)", who + f);
  }
  if (!r.ok()) return r;

  std::map<int, std::vector<bool>> foot;
  std::vector<bool> covered(m.size(), false);
  for (const auto& l : d.levels) {
    foot[l.index] = footprint_set(d, l, l.open);
    for (int s = 0; s < m.size(); ++s) covered[s] = covered[s] || foot[l.index][s];
  }
  for (int s = 0; s < m.size(); ++s)
    if (!covered[s]) {
      fail("(2)", "footprints miss M simplex " + str(s));
      break;
    }
  for (const auto& l : d.levels) {
    auto cl = closure(m, foot[l.index]);
    for (int s = 0; s < m.size(); ++s)
      if (cl[s] && d.space_level[s] > l.index) {
        fail("(2)", "closure of F(" + str(l.index) + ") meets M simplex " + str(s) + " of higher level");
        break;
      }
  }

  for (const auto& e : d.embeddings) {
    if (d.position(e.source) < 0 || d.position(e.target) < 0 || e.source >= e.target) {
      fail("(3)", "embedding " + str(e.source) + "->" + str(e.target) + " does not join two levels upward");
      return r;
    }
    check_embedding(d, e, r);
  }
  // Missing embeddings are empty; their footprints must not overlap.
  for (std::size_t a = 0; a < d.levels.size(); ++a)
    for (std::size_t b = a + 1; b < d.levels.size(); ++b) {
      const int i = d.levels[a].index, j = d.levels[b].index;
      if (d.embedding(i, j)) continue;
      for (int s = 0; s < m.size(); ++s)
        if (foot[i][s] && foot[j][s]) {
          fail("(3)", "no embedding " + str(i) + "->" + str(j) + " although the footprints overlap");
          break;
        }
    }
  if (!r.ok()) return r;

  std::vector<bool> scratch1, scratch2, scratch3;
  for (std::size_t a = 0; a < d.levels.size(); ++a)
    for (std::size_t b = a + 1; b < d.levels.size(); ++b)
      for (std::size_t c = b + 1; c < d.levels.size(); ++c) {
        const int i = d.levels[a].index, j = d.levels[b].index, k = d.levels[c].index;
        const std::string tri = str(i) + "<" + str(j) + "<" + str(k);
        const auto& yij = domain_or_empty(d, i, j, scratch1);
        const auto& yik = domain_or_empty(d, i, k, scratch2);
        const auto& yjk = domain_or_empty(d, j, k, scratch3);
        const auto& ki = d.level(i).chart.bundle.action.complex;
        const auto& ak = d.level(k).chart.bundle.action;
        std::map<int, int> mij, mik, mjk;
        if (auto* e = d.embedding(i, j)) mij = image_map(d, *e);
        if (auto* e = d.embedding(i, k)) mik = image_map(d, *e);
        if (auto* e = d.embedding(j, k)) mjk = image_map(d, *e);
        // (4) source triple intersection
        std::vector<bool> yijk(ki.size(), false);
        bool ok4 = true;
        for (int s = 0; s < ki.size(); ++s) {
          const bool lhs = yij[s] && yjk[mij.count(s) ? mij[s] : 0] && mij.count(s);
          const bool rhs = yij[s] && yik[s];
          if (lhs != rhs) ok4 = false;
          yijk[s] = rhs;
        }
        if (!ok4) fail("(4)", "phi_ij^-1(Y(j,k)) differs from Y(i,k) cap Y(i,j) for " + tri);
        // (5) target triple intersection on cell orbits
        std::set<int> from_i, from_j, from_ijk;
        for (auto [s, t] : mik) {
          from_i.insert(cell_rep(ak, t));
          if (yijk[s]) from_ijk.insert(cell_rep(ak, t));
        }
        for (auto [s, t] : mjk) from_j.insert(cell_rep(ak, t));
        std::set<int> both;
        std::set_intersection(from_i.begin(), from_i.end(), from_j.begin(), from_j.end(),
                              std::inserter(both, both.begin()));
        if (both != from_ijk) fail("(5)", "phi_ik(Y(i,k)) cap phi_jk(Y(j,k)) differs from phi_ik(Y(i,j,k)) for " + tri);
        if (!ok4) continue;
        // (6) cocycle per component of Y(i,j,k)
        const auto* eij = d.embedding(i, j);
        const auto* ejk = d.embedding(j, k);
        const auto* eik = d.embedding(i, k);
        if (!eij || !ejk || !eik) continue;
        std::vector<int> parent(ki.num_vertices());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
          while (parent[x] != x) x = parent[x] = parent[parent[x]];
          return x;
        };
        std::vector<bool> used(ki.num_vertices(), false);
        for (int s = 0; s < ki.size(); ++s) {
          if (!yijk[s]) continue;
          const auto& sx = ki.simplex(s);
          for (int v : sx) used[v] = true;
          for (std::size_t q = 1; q < sx.size(); ++q) parent[find(sx[q])] = find(sx[0]);
        }
        std::map<int, std::vector<int>> comps;
        for (int v = 0; v < ki.num_vertices(); ++v)
          if (used[v]) comps[find(v)].push_back(v);
        const MatrixQ composite = ejk->dphi * eij->dphi;
        const auto& gi = d.level(i).chart.bundle.action.group;
        for (auto& [root, vs] : comps) {
          bool found = false;
          for (int g = 0; g < ak.group.order() && !found; ++g) {
            bool okv = std::all_of(vs.begin(), vs.end(), [&](int v) {
              const int y = eij->phi[v];
              return y >= 0 && ejk->phi[y] >= 0 && eik->phi[v] == ak.act_vertex(g, ejk->phi[y]);
            });
            if (!okv || eik->dphi != MatrixQ(d.level(k).chart.bundle.rho[g] * composite)) continue;
            bool adj = true;
            for (int x = 0; x < gi.order(); ++x)
              if (ak.group.mul(ak.group.mul(g, eik->h[x]), ak.group.inv(g)) != ejk->h[eij->h[x]]) adj = false;
            found = adj;
          }
          if (!found) fail("(6)", "cocycle fails for " + tri + " on the component of vertex " + str(root));
        }
      }
  if (tangent) {
    auto t = tangent_condition(d);
    for (auto& f : t.failures) r.failures.push_back({"(8)", f.message});
  }
  return r;
}

namespace {

struct RelationIndex {
  std::map<std::pair<int, int>, int> id;                 // (level, rep) -> point
  std::vector<std::map<int, int>> up;                     // point -> (target level -> point)
};

}  // namespace

bool related(const DGS& d, const ThickeningPoint& a, const ThickeningPoint& b) {
  if (a.level == b.level) {
    const auto& act = d.level(a.level).chart.bundle.action;
    return cell_rep(act, a.cell) == cell_rep(act, b.cell);
  }
  if (a.level > b.level) return related(d, b, a);
  const auto* e = d.embedding(a.level, b.level);
  if (!e || !e->domain[a.cell]) return false;
  const auto& ks = d.level(a.level).chart.bundle.action.complex;
  const auto& at = d.level(b.level).chart.bundle.action;
  const int t = image_simplex(ks, at.complex, e->phi, a.cell);
  return cell_rep(at, t) == cell_rep(at, b.cell);
}

Thickening build_thickening(const DGS& d) {
  Thickening th;
  RelationIndex idx;
  for (const auto& l : d.levels) {
    const auto& a = l.chart.bundle.action;
    for (int s = 0; s < a.complex.size(); ++s)
      if (l.open[s] && cell_rep(a, s) == s) {
        idx.id[{l.index, s}] = static_cast<int>(th.points.size());
        th.points.push_back({l.index, s});
      }
  }
  const int np = static_cast<int>(th.points.size());
  std::vector<std::set<int>> nbr(np);
  for (const auto& e : d.embeddings) {
    const auto& as = d.level(e.source).chart.bundle.action;
    const auto& at = d.level(e.target).chart.bundle.action;
    for (int s = 0; s < as.complex.size(); ++s) {
      if (!e.domain[s] || cell_rep(as, s) != s) continue;
      const int t = cell_rep(at, image_simplex(as.complex, at.complex, e.phi, s));
      auto it = idx.id.find({e.target, t});
      if (it == idx.id.end()) continue;
      const int p = idx.id.at({e.source, s}), q = it->second;
      nbr[p].insert(q);
      nbr[q].insert(p);
    }
  }
  auto& ax = th.axioms;
  for (int p = 0; p < np; ++p) {
    if (!related(d, th.points[p], th.points[p])) {
      ax.reflexive = false;
      ax.failures.push_back("point " + str(p) + " is not related to itself");
    }
    for (int q : nbr[p])
      if (!related(d, th.points[p], th.points[q]) || !related(d, th.points[q], th.points[p])) {
        ax.symmetric = false;
        ax.failures.push_back("points " + str(p) + " and " + str(q) + " are related one way only");
      }
  }
  for (int b = 0; b < np; ++b) {
    const int lb = th.points[b].level;
    for (int a : nbr[b])
      for (int c : nbr[b]) {
        if (a >= c) continue;
        const int la = th.points[a].level, lc = th.points[c].level;
        const int kind = (la < lb) == (lb < lc) ? 0 : (lb < la ? 1 : 2);
        ++ax.cases[kind];
        if (!related(d, th.points[a], th.points[c])) {
          ax.transitive = false;
          ax.failures.push_back("points " + str(a) + " ~ " + str(b) + " ~ " + str(c) + " but not " + str(a) + " ~ " + str(c));
        }
      }
  }
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int p = 0; p < np; ++p)
    for (int q : nbr[p]) parent[find(p)] = find(q);
  std::map<int, int> cls;
  th.class_of.resize(np);
  for (int p = 0; p < np; ++p) {
    auto [it, fresh] = cls.emplace(find(p), static_cast<int>(cls.size()));
    th.class_of[p] = it->second;
  }
  th.num_classes = static_cast<int>(cls.size());
  return th;
}

DgsReport hausdorff_check(const DGS& d) {
  DgsReport r;
  r.notes.push_back("closedness is tested in the finite cell topology, a surrogate for the quotient topology");
  for (const auto& e : d.embeddings) {
    const auto& li = d.level(e.source);
    const auto& lj = d.level(e.target);
    const auto& ki = li.chart.bundle.action.complex;
    const auto& kj = lj.chart.bundle.action.complex;
    auto limit = closure(ki, e.domain);
    for (int s = 0; s < ki.size(); ++s) {
      if (!limit[s] || e.domain[s] || !li.open[s]) continue;
      const auto t = image_simplex(ki, kj, e.phi, s);
      if (lj.open[t]) {
        r.failures.push_back({"Hausdorff", "pair " + str(e.source) + "," + str(e.target) + ": cell " + str(s) +
                                               " of Y(" + str(e.source) + ") is a limit of Y(i,j) with image in Y(" +
                                               str(e.target) + ")"});
        break;
      }
    }
  }
  return r;
}

ShrinkResult shrink(const DGS& d, const std::vector<std::vector<bool>>& choice) {
  if (choice.size() != d.levels.size()) throw InvalidInput("need one open set per level");
  DGS out = d;
  for (std::size_t p = 0; p < d.levels.size(); ++p) {
    const auto& l = d.levels[p];
    const auto& a = l.chart.bundle.action;
    if (static_cast<int>(choice[p].size()) != a.complex.size()) throw InvalidInput("shrinking has the wrong size");
    for (int s = 0; s < a.complex.size(); ++s)
      if (choice[p][s] && !l.open[s]) throw InvalidInput("shrinking is not inside Y(" + str(l.index) + ")");
    if (!is_open(a.complex, choice[p]) || !invariant(a, choice[p]))
      throw InvalidInput("shrinking of level " + str(l.index) + " is not an invariant open set");
    out.levels[p].open = choice[p];
  }
  std::vector<std::vector<bool>> foot;
  for (const auto& l : out.levels) foot.push_back(footprint_set(out, l, l.open));
  for (int s = 0; s < d.space.size(); ++s) {
    const int k = d.space_level[s];
    bool hit = false;
    for (std::size_t p = 0; p < out.levels.size(); ++p)
      if (out.levels[p].index >= k && foot[p][s]) hit = true;
    if (!hit) throw InvalidInput("shrinking does not cover M(>= " + str(k) + ") at M simplex " + str(s));
  }
  for (auto& e : out.embeddings) {
    const auto& ki = out.level(e.source).chart.bundle.action.complex;
    const auto& lj = out.level(e.target);
    const auto& oi = out.level(e.source).open;
    for (int s = 0; s < ki.size(); ++s)
      if (e.domain[s])
        e.domain[s] = oi[s] && lj.open[image_simplex(ki, lj.chart.bundle.action.complex, e.phi, s)];
  }
  ShrinkResult res{out, validate(out)};
  return res;
}

DgsReport tangent_condition(const DGS& d) {
  DgsReport r;
  for (const auto& e : d.embeddings) {
    const auto& li = d.level(e.source);
    const auto& lj = d.level(e.target);
    const auto& ki = li.chart.bundle.action.complex;
    const auto& kj = lj.chart.bundle.action.complex;
    if (ki.dimension() == kj.dimension()) {
      r.notes.push_back("embedding " + str(e.source) + "->" + str(e.target) + " is equidimensional");
      continue;
    }
    const int normal = kj.dimension() - ki.dimension();
    const int base = linalg::rank(e.dphi);
    const auto zero = zero_vertices(li.chart);
    bool bad = false;
    for (int s : ki.maximal()) {
      if (!e.domain[s] || bad) continue;
      const auto& sx = ki.simplex(s);
      const int t = image_simplex(ki, kj, e.phi, s);
      for (int x : sx) {
        if (!zero[x] || bad) continue;
        const int w0 = e.phi[x];
        for (int u : kj.star(t)) {
          if (!kj.cofaces(u).empty()) continue;
          if (!lj.open[u]) continue;
          const auto& ux = kj.simplex(u);
          MatrixQ aug(lj.chart.rank(), e.dphi.cols() + static_cast<int>(ux.size()) - 1);
          aug.leftCols(e.dphi.cols()) = e.dphi;
          int col = e.dphi.cols();
          for (int w : ux)
            if (w != w0) aug.col(col++) = lj.chart.section[w] - lj.chart.section[w0];
          if (linalg::rank(aug) - base != normal) {
            r.failures.push_back({"(8)", "embedding " + str(e.source) + "->" + str(e.target) +
                                             ": normal derivative degenerates at vertex " + str(x) + " in cell " + str(u)});
            bad = true;
            break;
          }
        }
      }
    }
  }
  return r;
}

SimplicialComplex kuhn_grid(const std::vector<int>& points) {
  const int dim = static_cast<int>(points.size());
  std::vector<int> active;
  for (int a = 0; a < dim; ++a)
    if (points[a] >= 2) active.push_back(a);
  auto id = [&](const std::vector<int>& c) {
    int v = 0;
    for (int a = 0; a < dim; ++a) v = v * points[a] + c[a];
    return v;
  };
  std::vector<Simplex> tops;
  std::vector<int> corner(dim, 0);
  std::function<void(int)> rec = [&](int a) {
    if (a == dim) {
      std::vector<int> order = active;
      do {
        std::vector<int> c = corner;
        Simplex s{id(c)};
        for (int ax : order) {
          ++c[ax];
          s.push_back(id(c));
        }
        std::sort(s.begin(), s.end());
        tops.push_back(s);
      } while (std::next_permutation(order.begin(), order.end()));
      return;
    }
    const int hi = points[a] >= 2 ? points[a] - 2 : 0;
    for (int x = 0; x <= hi; ++x) {
      corner[a] = x;
      rec(a + 1);
    }
  };
  rec(0);
  return SimplicialComplex::from_simplices(tops);
}

namespace {

/// Level chart over [0,N] x [-1,1]^rank with s = y, footprint (x,0) -> x, trivial group.
DgsLevel grid_level(int n_points, int rank, const std::vector<bool>& m_open, const SimplicialComplex& m) {
  std::vector<int> pts{n_points};
  for (int r = 0; r < rank; ++r) pts.push_back(3);
  DgsLevel l;
  l.index = rank;
  l.chart.bundle.action = trivial_action(kuhn_grid(pts));
  l.chart.bundle.rank = rank;
  l.chart.bundle.rho = trivial_rep(l.chart.bundle.action.group, rank);
  l.chart.dimension = 1;
  const auto& k = l.chart.bundle.action.complex;
  const int stride = static_cast<int>(std::pow(3, rank));
  l.chart.section.resize(k.num_vertices());
  l.chart.footprint.assign(k.num_vertices(), -1);
  for (int v = 0; v < k.num_vertices(); ++v) {
    VectorQ s(rank);
    int rest = v % stride;
    for (int r = rank - 1; r >= 0; --r) {
      s(r) = Rational(rest % 3 - 1);
      rest /= 3;
    }
    l.chart.section[v] = s;
    if (s.isZero()) l.chart.footprint[v] = v / stride;
  }
  l.open.resize(k.size());
  for (int s = 0; s < k.size(); ++s) {
    Simplex xs;
    for (int v : k.simplex(s)) xs.push_back(v / stride);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    l.open[s] = m_open[m.index(xs)];
  }
  return l;
}

/// Pads (x, y_1..y_i) with zeros to (x, y_1..y_i, 0..0).
DgsEmbedding pad_embedding(const DGS& d, int i, int j, const std::vector<bool>& m_open) {
  const auto& li = d.level(i);
  const auto& ki = li.chart.bundle.action.complex;
  DgsEmbedding e;
  e.source = i;
  e.target = j;
  const int si = static_cast<int>(std::pow(3, i)), sj = static_cast<int>(std::pow(3, j));
  const int pad = static_cast<int>(std::pow(3, j - i));
  const int zero_tail = (pad - 1) / 2;  // all padded coordinates at index 1
  e.phi.resize(ki.num_vertices());
  for (int v = 0; v < ki.num_vertices(); ++v) e.phi[v] = (v / si) * sj + (v % si) * pad + zero_tail;
  e.domain.resize(ki.size());
  for (int s = 0; s < ki.size(); ++s) {
    Simplex xs;
    for (int v : ki.simplex(s)) xs.push_back(v / si);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    e.domain[s] = li.open[s] && m_open[d.space.index(xs)];
  }
  e.dphi = MatrixQ::Zero(j, i);
  for (int r = 0; r < i; ++r) e.dphi(r, r) = 1;
  e.h = {0};
  return e;
}

SimplicialComplex path_complex(int n_points) {
  std::vector<Simplex> tops;
  for (int i = 0; i + 1 < n_points; ++i) tops.push_back({i, i + 1});
  return SimplicialComplex::from_simplices(tops);
}

}  // namespace

DGS random_dgs(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(5, 8);
  DGS d;
  d.dimension = 1;
  d.space = path_complex(n + 1);
  const auto& m = d.space;
  std::vector<int> lv(n + 1);
  for (auto& x : lv) x = pick(0, 2);
  std::vector<int> slots(n + 1);
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  for (int k = 0; k < 3; ++k) lv[slots[k]] = k;
  d.space_level.resize(m.size());
  for (int s = 0; s < m.size(); ++s) {
    int l = 2;
    for (int v : m.simplex(s)) l = std::min(l, lv[v]);
    d.space_level[s] = l;
  }
  // U_k: interior of the cells whose vertices sit at level <= k, thinned at random below the top.
  std::vector<std::vector<bool>> u(3, std::vector<bool>(m.size(), false));
  for (int k = 0; k < 3; ++k) {
    std::vector<bool> low(m.size());
    for (int s = 0; s < m.size(); ++s) {
      const auto& sx = m.simplex(s);
      low[s] = std::all_of(sx.begin(), sx.end(), [&](int v) { return lv[v] <= k; });
    }
    std::vector<bool> drop(n + 1, false);
    if (k < 2)
      for (int v = 0; v <= n; ++v) drop[v] = pick(0, 4) == 0;
    for (int s = 0; s < m.size(); ++s) {
      bool in = low[s];
      for (int c : m.cofaces(s)) in = in && low[c];
      if (m.dim_of(s) == 0 && drop[m.simplex(s)[0]]) in = false;
      if (m.dim_of(s) == 1 && drop[m.simplex(s)[0]] && drop[m.simplex(s)[1]]) in = false;
      u[k][s] = in;
    }
    // restore openness after dropping
    for (int s = 0; s < m.size(); ++s)
      if (u[k][s])
        for (int c : m.cofaces(s))
          if (!u[k][c]) u[k][s] = false;
  }
  for (int k = 0; k < 3; ++k) d.levels.push_back(grid_level(n + 1, k, u[k], m));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) d.embeddings.push_back(pad_embedding(d, i, j, flags_and(u[i], u[j])));
  return d;
}

DGS open_ray_dgs(int n) {
  DGS d;
  d.dimension = 1;
  const int np = 2 * n + 1;  // x = -n..n, id = x + n
  d.space = path_complex(np);
  const auto& m = d.space;
  d.space_level.assign(m.size(), 0);
  d.space_level[m.index({np - 1})] = 1;

  DgsLevel l0;
  l0.index = 0;
  l0.chart.bundle.action = trivial_action(m);
  l0.chart.bundle.rank = 0;
  l0.chart.bundle.rho = trivial_rep(l0.chart.bundle.action.group, 0);
  l0.chart.section.assign(np, VectorQ(0));
  l0.chart.footprint.resize(np);
  std::iota(l0.chart.footprint.begin(), l0.chart.footprint.end(), 0);
  l0.chart.dimension = 1;
  l0.open.assign(m.size(), true);
  l0.open[m.index({np - 2})] = l0.open[m.index({np - 1})] = l0.open[m.index({np - 2, np - 1})] = false;

  DgsLevel l1;
  l1.index = 1;
  l1.chart.bundle.action = trivial_action(kuhn_grid({n + 1, 3}));
  l1.chart.bundle.rank = 1;
  l1.chart.bundle.rho = trivial_rep(l1.chart.bundle.action.group, 1);
  const auto& k1 = l1.chart.bundle.action.complex;
  l1.chart.section.resize(k1.num_vertices());
  l1.chart.footprint.assign(k1.num_vertices(), -1);
  for (int v = 0; v < k1.num_vertices(); ++v) {
    VectorQ s(1);
    s(0) = v % 3 - 1;
    l1.chart.section[v] = s;
    if (v % 3 == 1) l1.chart.footprint[v] = v / 3 + n;
  }
  l1.chart.dimension = 1;
  l1.open.assign(k1.size(), true);

  DgsEmbedding e;
  e.source = 0;
  e.target = 1;
  e.phi.assign(np, -1);
  for (int x = 0; x <= n; ++x) e.phi[x + n] = x * 3 + 1;
  e.domain.resize(m.size());
  for (int s = 0; s < m.size(); ++s) {
    // open ray x > 0: cells with some vertex at positive x and none below zero
    const auto& sx = m.simplex(s);
    const bool positive = std::all_of(sx.begin(), sx.end(), [&](int v) { return v >= n; }) &&
                          std::any_of(sx.begin(), sx.end(), [&](int v) { return v > n; });
    e.domain[s] = positive && l0.open[s];
  }
  e.dphi = MatrixQ::Zero(1, 0);
  e.h = {0};

  d.levels = {l0, l1};
  d.embeddings = {e};
  return d;
}

std::vector<std::vector<bool>> open_ray_shrinking(const DGS& d) {
  std::vector<std::vector<bool>> out;
  for (const auto& l : d.levels) out.push_back(l.open);
  const auto& k1 = d.levels[1].chart.bundle.action.complex;
  for (int s = 0; s < k1.size(); ++s) {
    const auto& sx = k1.simplex(s);
    if (std::all_of(sx.begin(), sx.end(), [](int v) { return v / 3 == 0; })) out[1][s] = false;
  }
  return out;
}

DGS path_into_strip(bool degenerate) {
  DGS d;
  d.dimension = 1;
  d.space = path_complex(5);
  d.space_level.assign(d.space.size(), 0);
  std::vector<bool> all(d.space.size(), true);
  d.levels.push_back(grid_level(5, 0, all, d.space));
  d.levels.push_back(grid_level(5, 1, all, d.space));
  if (degenerate) {
    auto& c = d.levels[1].chart;
    for (int v = 0; v < c.bundle.num_vertices(); ++v)
      if (v % 3 == 2) {
        c.section[v] = VectorQ::Zero(1);
        c.footprint[v] = v / 3;
      }
  }
  d.embeddings.push_back(pad_embedding(d, 0, 1, all));
  return d;
}

}  // namespace orbivfc
