#include "orbivfc/graph.hpp"

#include "orbivfc/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace orbivfc::graph {

bool LabeledDualGraph::has_degrees() const {
  return !vertices.empty() &&
         std::all_of(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.degree.has_value(); });
}

int LabeledDualGraph::add_vertex(int genus, std::optional<long long> degree) {
  vertices.push_back({genus, degree});
  return num_vertices() - 1;
}

void LabeledDualGraph::add_edge(int a, int b) { edges.push_back({std::min(a, b), std::max(a, b)}); }

bool is_connected(const LabeledDualGraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : g.edges) parent[find(e.a)] = find(e.b);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

void validate(const LabeledDualGraph& g) {
  const int n = g.num_vertices();
  if (n == 0) throw InvalidInput("graph has no vertices");
  for (const auto& v : g.vertices)
    if (v.genus < 0) throw InvalidInput("negative vertex genus");
  for (const auto& e : g.edges)
    if (e.a < 0 || e.b >= n || e.a > e.b) throw InvalidInput("edge endpoint out of range");
  for (int v : g.flags)
    if (v < 0 || v >= n) throw InvalidInput("flag attached to a missing vertex");
  for (int v : g.unordered_flags)
    if (v < 0 || v >= n) throw InvalidInput("flag attached to a missing vertex");
  if (!is_connected(g)) throw InvalidInput("graph is disconnected");
}

int special_points(const LabeledDualGraph& g, int v) {
  int s = 0;
  for (int f : g.flags) s += (f == v);
  for (int f : g.unordered_flags) s += (f == v);
  for (const auto& e : g.edges) s += (e.a == v) + (e.b == v);
  return s;
}

int genus(const LabeledDualGraph& g) {
  validate(g);
  int total = 0;
  for (const auto& v : g.vertices) total += v.genus;
  return total + static_cast<int>(g.edges.size()) - g.num_vertices() + 1;
}

bool is_stable(const LabeledDualGraph& g, Mode mode) {
  validate(g);
  if (mode == Mode::Map && !g.has_degrees()) throw InvalidInput("map-mode stability needs degrees on every vertex");
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (mode == Mode::Map && *g.vertices[v].degree != 0) continue;
    if (2 * g.vertices[v].genus + special_points(g, v) < 3) return false;
  }
  return true;
}

namespace {

void remove_vertex(LabeledDualGraph& g, int v) {
  auto shift = [v](int x) { return x > v ? x - 1 : x; };
  g.vertices.erase(g.vertices.begin() + v);
  for (auto& e : g.edges) { e.a = shift(e.a); e.b = shift(e.b); }
  for (auto& f : g.flags) f = shift(f);
  for (auto& f : g.unordered_flags) f = shift(f);
}

int total_marks(const LabeledDualGraph& g) {
  return g.num_flags() + static_cast<int>(g.unordered_flags.size());
}

}  // namespace

LabeledDualGraph stabilize(const LabeledDualGraph& in) {
  const int gg = genus(in);
  LabeledDualGraph g = in;
  for (auto& v : g.vertices) v.degree.reset();
  if (2 * gg + total_marks(g) < 3) {
    LabeledDualGraph point;
    point.add_vertex(gg);
    point.flags.assign(g.flags.size(), 0);
    point.unordered_flags.assign(g.unordered_flags.size(), 0);
    return point;
  }
  for (;;) {
    int bad = -1;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (2 * g.vertices[v].genus + special_points(g, v) < 3) { bad = v; break; }
    }
    if (bad < 0) break;
    // Outside the unstable range an unstable vertex has genus 0 and one or two edge ends.
    std::vector<int> incident;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
      if (g.edges[i].a == bad || g.edges[i].b == bad) incident.push_back(i);
    auto other = [&](int e) { return g.edges[e].a == bad ? g.edges[e].b : g.edges[e].a; };
    if (incident.size() == 1) {
      int u = other(incident[0]);
      for (auto& f : g.flags) if (f == bad) f = u;
      for (auto& f : g.unordered_flags) if (f == bad) f = u;
      g.edges.erase(g.edges.begin() + incident[0]);
    } else if (incident.size() == 2) {
      int u = other(incident[0]), w = other(incident[1]);
      g.edges.erase(g.edges.begin() + std::max(incident[0], incident[1]));
      g.edges.erase(g.edges.begin() + std::min(incident[0], incident[1]));
      g.add_edge(u, w);
    } else {
      throw InternalError("stabilize reached an unexpected unstable vertex");
    }
    remove_vertex(g, bad);
  }
  return g;
}

LabeledDualGraph forget_points(const LabeledDualGraph& g, const std::vector<int>& orders) {
  validate(g);
  std::set<int> drop;
  for (int o : orders) {
    if (o < 1 || o > g.num_flags()) throw InvalidInput("forgotten flag " + std::to_string(o) + " does not exist");
    drop.insert(o);
  }
  LabeledDualGraph h = g;
  h.flags.clear();
  for (int i = 0; i < g.num_flags(); ++i)
    if (!drop.count(i + 1)) h.flags.push_back(g.flags[i]);
  return stabilize(h);
}

namespace {

int subgraph_genus(const LabeledDualGraph& g, const std::vector<int>& verts, const std::vector<int>& edges) {
  int total = 0;
  for (int v : verts) total += g.vertices[v].genus;
  return total + static_cast<int>(edges.size()) - static_cast<int>(verts.size()) + 1;
}

bool subgraph_connected(const LabeledDualGraph& g, const std::vector<int>& verts, const std::vector<int>& edges) {
  if (verts.empty()) return false;
  std::map<int, int> idx;
  for (int v : verts) idx[v] = static_cast<int>(idx.size());
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int e : edges) parent[find(idx[g.edges[e].a])] = find(idx[g.edges[e].b]);
  for (std::size_t i = 1; i < verts.size(); ++i)
    if (find(static_cast<int>(i)) != find(0)) return false;
  return true;
}

}  // namespace

LabeledDualGraph degenerate(const LabeledDualGraph& target, const CuttingData& cut) {
  validate(target);
  const auto& src = cut.source;
  validate(src);
  const int nv = src.num_vertices();
  if (static_cast<int>(cut.vertex_map.size()) != nv) throw DegenerationInvalid("vertex map has the wrong size");
  std::vector<std::vector<int>> preimage(target.num_vertices());
  for (int v = 0; v < nv; ++v) {
    int t = cut.vertex_map[v];
    if (t < 0 || t >= target.num_vertices()) throw DegenerationInvalid("vertex map leaves the target");
    preimage[t].push_back(v);
  }
  for (int t = 0; t < target.num_vertices(); ++t)
    if (preimage[t].empty()) throw DegenerationInvalid("vertex map is not surjective");
  if (cut.edge_injection.size() != target.edges.size()) throw DegenerationInvalid("edge injection has the wrong size");
  std::vector<bool> used(src.edges.size(), false);
  for (std::size_t e = 0; e < target.edges.size(); ++e) {
    int s = cut.edge_injection[e];
    if (s < 0 || s >= static_cast<int>(src.edges.size()) || used[s]) throw DegenerationInvalid("edge map is not injective");
    used[s] = true;
    int pa = cut.vertex_map[src.edges[s].a], pb = cut.vertex_map[src.edges[s].b];
    if (std::min(pa, pb) != target.edges[e].a || std::max(pa, pb) != target.edges[e].b)
      throw DegenerationInvalid("edge " + std::to_string(e) + " is not mapped over itself");
  }
  std::vector<std::vector<int>> cut_edges(target.num_vertices());
  for (std::size_t s = 0; s < src.edges.size(); ++s) {
    if (used[s]) continue;
    int pa = cut.vertex_map[src.edges[s].a], pb = cut.vertex_map[src.edges[s].b];
    if (pa != pb) throw DegenerationInvalid("cut edge joins different target vertices");
    cut_edges[pa].push_back(static_cast<int>(s));
  }
  if (src.num_flags() != target.num_flags()) throw DegenerationInvalid("flag counts differ");
  for (int i = 0; i < src.num_flags(); ++i)
    if (cut.vertex_map[src.flags[i]] != target.flags[i])
      throw DegenerationInvalid("flag " + std::to_string(i + 1) + " moved to another component");
  for (int t = 0; t < target.num_vertices(); ++t) {
    if (!subgraph_connected(src, preimage[t], cut_edges[t]))
      throw DegenerationInvalid("expanded subgraph over vertex " + std::to_string(t) + " is disconnected");
    if (subgraph_genus(src, preimage[t], cut_edges[t]) != target.vertices[t].genus)
      throw DegenerationInvalid("genus mismatch over vertex " + std::to_string(t));
    if (target.vertices[t].degree) {
      long long sum = 0;
      for (int v : preimage[t]) {
        if (!src.vertices[v].degree) throw DegenerationInvalid("source vertex lacks a degree");
        sum += *src.vertices[v].degree;
      }
      if (sum != *target.vertices[t].degree)
        throw DegenerationInvalid("degree of vertex " + std::to_string(t) + " is not divided correctly");
    }
  }
  return src;
}

LabeledDualGraph contract(const LabeledDualGraph& g, const std::vector<int>& edges) {
  validate(g);
  const int n = g.num_vertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::set<int> gone(edges.begin(), edges.end());
  for (int e : gone) {
    if (e < 0 || e >= static_cast<int>(g.edges.size())) throw InvalidInput("contracted edge out of range");
    parent[find(g.edges[e].a)] = find(g.edges[e].b);
  }
  std::map<int, int> root_index;
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (!root_index.count(r)) root_index.emplace(r, static_cast<int>(root_index.size()));
  }
  LabeledDualGraph out;
  out.vertices.assign(root_index.size(), Vertex{});
  std::vector<int> sizes(root_index.size(), 0), cut_count(root_index.size(), 0);
  bool degrees = g.has_degrees();
  for (int v = 0; v < n; ++v) {
    int i = root_index[find(v)];
    out.vertices[i].genus += g.vertices[v].genus;
    if (degrees) out.vertices[i].degree = out.vertices[i].degree.value_or(0) + *g.vertices[v].degree;
    ++sizes[i];
  }
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    int a = root_index[find(g.edges[e].a)], b = root_index[find(g.edges[e].b)];
    if (gone.count(e)) ++cut_count[a];
    else out.add_edge(a, b);
  }
  for (std::size_t i = 0; i < out.vertices.size(); ++i) out.vertices[i].genus += cut_count[i] - sizes[i] + 1;
  for (int f : g.flags) out.flags.push_back(root_index[find(f)]);
  for (int f : g.unordered_flags) out.unordered_flags.push_back(root_index[find(f)]);
  return out;
}

namespace {

struct VertexKey {
  std::vector<long long> data;
  bool operator<(const VertexKey& o) const { return data < o.data; }
  bool operator==(const VertexKey& o) const { return data == o.data; }
};

std::vector<std::vector<int>> multiplicity(const LabeledDualGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges) {
    ++m[e.a][e.b];
    if (e.a != e.b) ++m[e.b][e.a];
  }
  return m;
}

VertexKey vertex_key(const LabeledDualGraph& g, const std::vector<std::vector<int>>& m, int v) {
  VertexKey k;
  k.data.push_back(g.vertices[v].genus);
  k.data.push_back(g.vertices[v].degree ? 1 : 0);
  k.data.push_back(g.vertices[v].degree.value_or(0));
  std::vector<long long> fl;
  for (int i = 0; i < g.num_flags(); ++i)
    if (g.flags[i] == v) fl.push_back(i + 1);
  k.data.push_back(static_cast<long long>(fl.size()));
  k.data.insert(k.data.end(), fl.begin(), fl.end());
  k.data.push_back(std::count(g.unordered_flags.begin(), g.unordered_flags.end(), v));
  k.data.push_back(m[v][v]);
  std::vector<long long> nb;
  for (int u = 0; u < g.num_vertices(); ++u)
    if (u != v && m[v][u]) nb.push_back(m[v][u]);
  std::sort(nb.begin(), nb.end());
  k.data.push_back(static_cast<long long>(nb.size()));
  k.data.insert(k.data.end(), nb.begin(), nb.end());
  return k;
}

/// Calls visit(order) for every vertex ordering that keeps invariant classes in key order.
void for_each_class_ordering(const LabeledDualGraph& g, const std::function<void(const std::vector<int>&)>& visit) {
  auto m = multiplicity(g);
  const int n = g.num_vertices();
  std::vector<std::pair<VertexKey, int>> keyed;
  for (int v = 0; v < n; ++v) keyed.push_back({vertex_key(g, m, v), v});
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.first < y.first) return true;
    if (y.first < x.first) return false;
    return x.second < y.second;
  });
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || !(keyed[i].first == keyed[i - 1].first)) classes.emplace_back();
    classes.back().push_back(keyed[i].second);
  }
  std::function<void(std::size_t, std::vector<int>&)> rec = [&](std::size_t c, std::vector<int>& order) {
    if (c == classes.size()) { visit(order); return; }
    std::vector<int> cls = classes[c];
    std::sort(cls.begin(), cls.end());
    do {
      std::size_t base = order.size();
      order.insert(order.end(), cls.begin(), cls.end());
      rec(c + 1, order);
      order.resize(base);
    } while (std::next_permutation(cls.begin(), cls.end()));
  };
  std::vector<int> order;
  rec(0, order);
}

std::vector<long long> encode(const LabeledDualGraph& g, const std::vector<std::vector<int>>& m,
                              const std::vector<int>& order) {
  const int n = g.num_vertices();
  std::vector<long long> code{n};
  for (int v : order) {
    auto k = vertex_key(g, m, v);
    code.insert(code.end(), k.data.begin(), k.data.end());
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) code.push_back(m[order[i]][order[j]]);
  return code;
}

}  // namespace

std::vector<long long> canonical_form(const LabeledDualGraph& g) {
  auto m = multiplicity(g);
  std::vector<long long> best;
  bool first = true;
  for_each_class_ordering(g, [&](const std::vector<int>& order) {
    auto code = encode(g, m, order);
    if (first || code < best) { best = std::move(code); first = false; }
  });
  return best;
}

bool isomorphic(const LabeledDualGraph& a, const LabeledDualGraph& b) { return canonical_form(a) == canonical_form(b); }

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

AutomorphismGroup aut_graph(const LabeledDualGraph& g) {
  validate(g);
  auto m = multiplicity(g);
  const int n = g.num_vertices();
  const int ne = static_cast<int>(g.edges.size());
  std::vector<int> base;
  for_each_class_ordering(g, [&](const std::vector<int>& order) {
    if (base.empty()) base = order;
  });
  // Every vertex automorphism sends the base ordering to another class ordering with equal code.
  auto base_code = encode(g, m, base);
  std::vector<std::vector<int>> vertex_auts;
  for_each_class_ordering(g, [&](const std::vector<int>& order) {
    if (encode(g, m, order) != base_code) return;
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[base[i]] = order[i];
    vertex_auts.push_back(sigma);
  });
  AutomorphismGroup out;
  out.order = static_cast<long long>(vertex_auts.size());
  for (int u = 0; u < n; ++u) {
    out.order *= factorial(m[u][u]) * (1LL << m[u][u]);
    for (int v = u + 1; v < n; ++v) out.order *= factorial(m[u][v]);
  }
  // Edges grouped by endpoint pair, in index order.
  std::map<std::pair<int, int>, std::vector<int>> bundle;
  for (int e = 0; e < ne; ++e) bundle[{g.edges[e].a, g.edges[e].b}].push_back(e);
  auto identity = [&] {
    HalfEdgePerm p(2 * ne);
    std::iota(p.begin(), p.end(), 0);
    return p;
  };
  for (const auto& sigma : vertex_auts) {
    bool trivial = true;
    for (int v = 0; v < n; ++v) trivial = trivial && sigma[v] == v;
    if (trivial) continue;
    HalfEdgePerm p = identity();
    for (const auto& [ends, list] : bundle) {
      int a = sigma[ends.first], b = sigma[ends.second];
      const auto& image = bundle.at({std::min(a, b), std::max(a, b)});
      for (std::size_t i = 0; i < list.size(); ++i) {
        int e = list[i], f = image[i];
        bool flip = a > b;
        p[2 * e] = 2 * f + (flip ? 1 : 0);
        p[2 * e + 1] = 2 * f + (flip ? 0 : 1);
      }
    }
    out.generators.push_back(p);
  }
  for (const auto& [ends, list] : bundle) {
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      HalfEdgePerm p = identity();
      int e = list[i], f = list[i + 1];
      std::swap(p[2 * e], p[2 * f]);
      std::swap(p[2 * e + 1], p[2 * f + 1]);
      out.generators.push_back(p);
    }
    if (ends.first == ends.second) {
      for (int e : list) {
        HalfEdgePerm p = identity();
        std::swap(p[2 * e], p[2 * e + 1]);
        out.generators.push_back(p);
      }
    }
  }
  return out;
}

namespace {

/// Calls visit for every way to write total as an ordered sum of parts non-negative integers.
void compositions(int total, int parts, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) { cur[i] = left; visit(cur); return; }
    for (int x = 0; x <= left; ++x) { cur[i] = x; rec(i + 1, left - x); }
  };
  if (parts == 0) { if (total == 0) visit(cur); return; }
  rec(0, total);
}

}  // namespace

std::vector<LabeledDualGraph> enumerate_strata(int g, int k, int max_vertices, std::optional<long long> degree_budget,
                                               Mode mode) {
  if (g < 0 || k < 0) throw InvalidInput("negative genus or mark count");
  if (mode == Mode::Map && !degree_budget) throw InvalidInput("map-mode enumeration needs a degree budget");
  if (mode == Mode::Curve && 2 * g + k < 3) throw InvalidInput("2g+k < 3 has no stable curves");
  if (mode == Mode::Map && *degree_budget < 0) throw InvalidInput("negative degree budget");
  std::map<std::vector<long long>, LabeledDualGraph> found;
  int cap = max_vertices;
  if (mode == Mode::Curve) cap = std::min(cap, 2 * g - 2 + k);
  else cap = std::min<long long>(cap, 2LL * g - 2 + k + 1 + *degree_budget * (2 * g + k + 3));
  for (int nv = 1; nv <= cap; ++nv) {
    const int slots = nv * (nv + 1) / 2;
    std::vector<std::pair<int, int>> slot_ends;
    for (int a = 0; a < nv; ++a)
      for (int b = a; b < nv; ++b) slot_ends.push_back({a, b});
    for (int gsum = 0; gsum <= g; ++gsum) {
      const int ne = g - gsum + nv - 1;
      compositions(gsum, nv, [&](const std::vector<int>& genera) {
        compositions(ne, slots, [&](const std::vector<int>& mult) {
          LabeledDualGraph base;
          for (int v = 0; v < nv; ++v) base.add_vertex(genera[v]);
          for (int s = 0; s < slots; ++s)
            for (int c = 0; c < mult[s]; ++c) base.add_edge(slot_ends[s].first, slot_ends[s].second);
          if (!is_connected(base)) return;
          std::vector<int> flag_of(k, 0);
          std::function<void(int)> place = [&](int f) {
            if (f < k) {
              for (int v = 0; v < nv; ++v) { flag_of[f] = v; place(f + 1); }
              return;
            }
            LabeledDualGraph h = base;
            h.flags = flag_of;
            auto accept = [&](const LabeledDualGraph& cand, Mode md) {
              if (!is_stable(cand, md)) return;
              auto code = canonical_form(cand);
              found.emplace(std::move(code), cand);
            };
            if (mode == Mode::Curve) {
              accept(h, Mode::Curve);
            } else {
              compositions(static_cast<int>(*degree_budget), nv, [&](const std::vector<int>& degs) {
                LabeledDualGraph hd = h;
                for (int v = 0; v < nv; ++v) hd.vertices[v].degree = degs[v];
                accept(hd, Mode::Map);
              });
            }
          };
          place(0);
        });
      });
    }
  }
  std::vector<LabeledDualGraph> out;
  for (auto& [code, gr] : found) out.push_back(gr);
  return out;
}

long long virtual_dim(long long n, long long g, long long k, long long c1A) { return 2 * ((n - 3) * (1 - g) + c1A + k); }

long long riemann_roch_index(long long n, long long g, long long c1) { return 2 * (c1 + n * (1 - g)); }

}  // namespace orbivfc::graph
