#pragma once
// Independent reference implementations used by the unit and acceptance tests.

#include "orbivfc/graph.hpp"
#include "orbivfc/rational.hpp"
#include "orbivfc/resolution.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using orbivfc::Rational;
using orbivfc::graph::LabeledDualGraph;

/// Bernoulli numbers by the Akiyama-Tanigawa algorithm (B_1 = +1/2 there; we flip it).
inline Rational bernoulli(int n) {
  std::vector<Rational> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return n == 1 ? -a[0] : a[0];
}

inline long long divisor_sum(long long m) {
  long long s = 0;
  for (long long a = 1; a <= m; ++a)
    if (m % a == 0) s += a;
  return s;
}

/// Genus by counting independent cycles with union-find.
inline int genus(const LabeledDualGraph& g) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int cycles = 0;
  for (auto& e : g.edges) {
    int a = find(e.a), b = find(e.b);
    if (a == b) ++cycles;
    else parent[a] = b;
  }
  int total = cycles;
  for (auto& v : g.vertices) total += v.genus;
  return total;
}

/// Canonical string by trying every vertex relabelling.
inline std::string canonical(const LabeledDualGraph& g) {
  std::vector<int> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<std::pair<int, int>> edges;
    for (auto& e : g.edges) edges.push_back(std::minmax(perm[e.a], perm[e.b]));
    std::sort(edges.begin(), edges.end());
    std::vector<int> genera(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) genera[perm[v]] = g.vertices[v].genus;
    std::string s;
    for (int x : genera) s += std::to_string(x) + ",";
    s += "|";
    for (auto [a, b] : edges) s += std::to_string(a) + "-" + std::to_string(b) + ",";
    s += "|";
    for (int f : g.flags) s += std::to_string(perm[f]) + ",";
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool stable(const LabeledDualGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    int special = 0;
    for (int f : g.flags) special += f == v;
    for (auto& e : g.edges) special += (e.a == v) + (e.b == v);
    if (2 * g.vertices[v].genus + special < 3) return false;
  }
  return true;
}

inline bool connected(const LabeledDualGraph& g) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto& e : g.edges) parent[find(e.a)] = find(e.b);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (find(v) != find(0)) return false;
  return true;
}

/// Every stable connected graph of genus g with k ordered flags, up to isomorphism.
inline std::set<std::string> strata(int g, int k) {
  std::set<std::string> out;
  const int max_v = std::max(1, 2 * g - 2 + k);
  const int max_e = std::max(0, 3 * g - 3 + k);
  for (int nv = 1; nv <= max_v; ++nv) {
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < nv; ++a)
      for (int b = a; b < nv; ++b) slots.push_back({a, b});
    // multisets of edges: counts per slot
    std::vector<int> count(slots.size(), 0);
    std::function<void(std::size_t, int)> edges = [&](std::size_t i, int left) {
      if (i == slots.size()) {
        int ne = 0;
        for (int c : count) ne += c;
        const int h1 = ne - nv + 1;
        if (h1 < 0 || h1 > g) return;
        // genera summing to g - h1
        std::vector<int> gen(nv, 0);
        std::function<void(int, int)> genera = [&](int v, int rest) {
          if (v == nv - 1) {
            gen[v] = rest;
            std::vector<int> flags(k, 0);
            std::function<void(int)> place = [&](int f) {
              if (f == k) {
                LabeledDualGraph x;
                for (int u = 0; u < nv; ++u) x.add_vertex(gen[u]);
                for (std::size_t s = 0; s < slots.size(); ++s)
                  for (int c = 0; c < count[s]; ++c) x.add_edge(slots[s].first, slots[s].second);
                for (int fl : flags) x.add_flag(fl);
                if (connected(x) && stable(x) && oracle::genus(x) == g) out.insert(canonical(x));
                return;
              }
              for (int u = 0; u < nv; ++u) {
                flags[f] = u;
                place(f + 1);
              }
            };
            place(0);
            return;
          }
          for (int x = 0; x <= rest; ++x) {
            gen[v] = x;
            genera(v + 1, rest - x);
          }
        };
        genera(0, g - h1);
        return;
      }
      for (int c = 0; c <= left; ++c) {
        count[i] = c;
        edges(i + 1, left - c);
      }
      count[i] = 0;
    };
    edges(0, max_e);
  }
  return out;
}

/// Random connected graph, stable or not.
inline LabeledDualGraph random_graph(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  LabeledDualGraph g;
  const int nv = pick(1, 6);
  for (int v = 0; v < nv; ++v) g.add_vertex(pick(0, 3) == 0 ? pick(1, 2) : 0);
  for (int v = 1; v < nv; ++v) g.add_edge(pick(0, v - 1), v);
  for (int extra = pick(0, 2); extra > 0; --extra) g.add_edge(pick(0, nv - 1), pick(0, nv - 1));
  for (int f = pick(0, 4); f > 0; --f) g.add_flag(pick(0, nv - 1));
  return g;
}

/// Changes one sheet weight of a resolution; returns false when there is no sheet.
inline bool mutate_weight(orbivfc::Resolution& res, std::mt19937_64& rng) {
  std::vector<orbivfc::Sheet*> sheets;
  for (auto& c : res.charts)
    for (auto& l : c.levels)
      for (auto& [s, cls] : l.sheets)
        for (auto& sh : cls) sheets.push_back(&sh);
  if (sheets.empty()) return false;
  auto* sh = sheets[std::uniform_int_distribution<std::size_t>(0, sheets.size() - 1)(rng)];
  sh->weight += std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  return true;
}

/// Determinant by the Leibniz formula.
inline Rational leibniz(const orbivfc::MatrixQ& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational det = 0;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
    Rational term = inv % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) term *= m(i, p[i]);
    det += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

}  // namespace oracle
