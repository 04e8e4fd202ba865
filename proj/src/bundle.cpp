#include "orbivfc/bundle.hpp"

#include "orbivfc/linalg.hpp"

#include <algorithm>
#include <set>

namespace orbivfc {

MatrixQ EquivariantBundle::transition(int i, int j) const {
  if (i == j) return MatrixQ::Identity(rank(), rank());
  if (i < j) {
    auto it = transitions.find({i, j});
    if (it == transitions.end()) throw InvalidInput("missing transition " + std::to_string(i) + "->" + std::to_string(j));
    return it->second;
  }
  MatrixQ t = transition(j, i);
  MatrixQ inv(rank(), rank());
  for (int c = 0; c < rank(); ++c) {
    auto col = linalg::solve(t, MatrixQ::Identity(rank(), rank()).col(c));
    if (!col) throw InvalidInput("transition is not invertible");
    inv.col(c) = *col;
  }
  return inv;
}

int EquivariantBundle::project(int chart, int s) const {
  const auto& c = charts[chart];
  Simplex image;
  for (int v : c.bundle.action.complex.simplex(s)) image.push_back(c.projection[v]);
  std::sort(image.begin(), image.end());
  return quotient.index(image);
}

std::vector<int> EquivariantBundle::owner() const {
  std::vector<int> out(quotient.size(), -1);
  for (int c = 0; c < num_charts(); ++c)
    for (const auto& s : charts[c].owned) {
      auto i = quotient.find(s);
      if (i) out[*i] = c;
    }
  return out;
}

std::vector<MatrixQ> trivial_rep(const FiniteGroup& g, int rank) {
  return std::vector<MatrixQ>(g.order(), MatrixQ::Identity(rank, rank));
}

EquivariantBundle single_chart_bundle(ChartBundle b) {
  auto orb = build_quotient(b.action);
  if (!orb.quotient) throw InvalidInput("quotient of the chart is not simplicial; subdivide first");
  EquivariantBundle e;
  e.quotient = *orb.quotient;
  AtlasChart c;
  c.projection = orb.projection;
  c.owned = e.quotient.simplices();
  c.bundle = std::move(b);
  e.charts.push_back(std::move(c));
  return e;
}

namespace {

std::set<int> image_vertices(const AtlasChart& c) { return {c.projection.begin(), c.projection.end()}; }

}  // namespace

void validate(const EquivariantBundle& e) {
  if (e.charts.empty()) throw InvalidInput("bundle has no charts");
  const int r = e.rank();
  if (r < 0) throw InvalidInput("negative rank");
  std::vector<int> owners(e.quotient.size(), 0);
  for (int ci = 0; ci < e.num_charts(); ++ci) {
    const auto& chart = e.charts[ci];
    const auto& b = chart.bundle;
    const std::string where = "chart " + std::to_string(ci) + ": ";
    validate(b.action);
    const auto& g = b.action.group;
    const auto& k = b.action.complex;
    if (b.rank != r) throw InvalidInput(where + "rank differs between charts");
    if (b.fiber_sign != 1 && b.fiber_sign != -1) throw InvalidInput(where + "fiber sign must be +1 or -1");
    if (static_cast<int>(b.rho.size()) != g.order()) throw InvalidInput(where + "need one fiber matrix per group element");
    for (const auto& m : b.rho)
      if (m.rows() != r || m.cols() != r) throw InvalidInput(where + "fiber matrix has the wrong size");
    if (b.rho[g.identity()] != MatrixQ::Identity(r, r)) throw InvalidInput(where + "identity acts nontrivially on fibers");
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y)
        if (MatrixQ(b.rho[x] * b.rho[y]) != b.rho[g.mul(x, y)]) throw InvalidInput(where + "fiber action is not a homomorphism");
    for (auto [v, charge] : b.defects) {
      if (r != 2 || k.dimension() != 2) throw InvalidInput(where + "defects need rank 2 over a surface");
      if (v < 0 || v >= k.num_vertices()) throw InvalidInput(where + "defect vertex out of range");
      if (charge != 1 && charge != -1) throw InvalidInput(where + "defect charge must be +1 or -1");
      for (int x = 0; x < g.order(); ++x) {
        auto it = b.defects.find(b.action.perm[x][v]);
        if (it == b.defects.end() || it->second != charge) throw InvalidInput(where + "defects are not invariant");
      }
    }
    if (static_cast<int>(chart.projection.size()) != k.num_vertices()) throw InvalidInput(where + "projection has the wrong size");
    for (int v = 0; v < k.num_vertices(); ++v) {
      int x = chart.projection[v];
      if (x < 0 || x >= e.quotient.num_vertices()) throw InvalidInput(where + "projection leaves the quotient");
      for (int h = 0; h < g.order(); ++h)
        if (chart.projection[b.action.perm[h][v]] != x) throw InvalidInput(where + "projection is not invariant");
    }
    auto orb = build_quotient(b.action);
    std::map<int, int> orbit_of_image;
    for (int s = 0; s < k.size(); ++s) {
      Simplex image;
      for (int v : k.simplex(s)) image.push_back(chart.projection[v]);
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end())
        throw InvalidInput(where + "projection collapses a simplex");
      auto q = e.quotient.find(image);
      if (!q) throw InvalidInput(where + "projected simplex is missing from the quotient");
      auto [it, fresh] = orbit_of_image.emplace(*q, orb.orbit_of[s]);
      if (!fresh && it->second != orb.orbit_of[s]) throw InvalidInput(where + "two orbits project to one simplex");
    }
    for (const auto& s : chart.owned) {
      auto q = e.quotient.find(s);
      if (!q) throw InvalidInput(where + "owned simplex is missing from the quotient");
      if (!orbit_of_image.count(*q)) throw InvalidInput(where + "owns a simplex outside its image");
      ++owners[*q];
    }
  }
  for (int q = 0; q < e.quotient.size(); ++q)
    if (owners[q] != 1) throw InvalidInput("quotient simplex " + std::to_string(q) + " must have exactly one owner");
  for (int i = 0; i < e.num_charts(); ++i) {
    auto vi = image_vertices(e.charts[i]);
    for (int j = i + 1; j < e.num_charts(); ++j) {
      auto vj = image_vertices(e.charts[j]);
      bool meet = std::any_of(vi.begin(), vi.end(), [&](int x) { return vj.count(x) > 0; });
      if (!meet) continue;
      auto it = e.transitions.find({i, j});
      if (it == e.transitions.end()) throw InvalidInput("missing transition between overlapping charts");
      if (it->second.rows() != r || it->second.cols() != r || linalg::rank(it->second) != r)
        throw InvalidInput("transition must be an invertible rank x rank matrix");
      for (int k = j + 1; k < e.num_charts(); ++k) {
        auto vk = image_vertices(e.charts[k]);
        bool triple = std::any_of(vi.begin(), vi.end(), [&](int x) { return vj.count(x) && vk.count(x); });
        if (triple && MatrixQ(e.transition(j, k) * e.transition(i, j)) != e.transition(i, k))
          throw InvalidInput("transitions fail the cocycle condition");
      }
    }
  }
  for (int c = 0; c < e.num_charts(); ++c) {
    const auto& k = e.charts[c].bundle.action.complex;
    for (int u : overlap_vertices(e, c)) {
      std::set<int> seen;
      for (int w : k.star_vertices(k.index({u})))
        if (!seen.insert(e.charts[c].projection[w]).second)
          throw InvalidInput("chart " + std::to_string(c) + ": projection is not injective on the star of overlap vertex " +
                             std::to_string(u));
    }
  }
}

bool relatively_oriented(const EquivariantBundle& e) {
  for (const auto& chart : e.charts) {
    const auto& b = chart.bundle;
    const auto& k = b.action.complex;
    if (!k.oriented() || !k.orientation_consistent()) return false;
    for (int g = 0; g < b.action.group.order(); ++g) {
      int base = orientation_character(b.action, g);
      int fiber = b.rank == 0 ? 1 : sign(linalg::determinant(b.rho[g]));
      if (base * fiber != 1) return false;
    }
  }
  if (e.num_charts() == 1) return true;
  if (!e.quotient.oriented()) return false;
  for (const auto& chart : e.charts) {
    const auto& k = chart.bundle.action.complex;
    for (int s : k.maximal()) {
      std::vector<int> seq;
      for (int v : k.simplex(s)) seq.push_back(chart.projection[v]);
      Simplex sorted = seq;
      std::sort(sorted.begin(), sorted.end());
      if (k.orientation(s) * permutation_sign(seq) != e.quotient.orientation(e.quotient.index(sorted))) return false;
    }
  }
  for (const auto& [key, t] : e.transitions)
    if (sign(linalg::determinant(t)) <= 0) return false;
  return true;
}

std::vector<int> overlap_vertices(const EquivariantBundle& e, int c) {
  std::set<int> others;
  for (int j = 0; j < e.num_charts(); ++j)
    if (j != c) others.insert(e.charts[j].projection.begin(), e.charts[j].projection.end());
  const auto& chart = e.charts[c];
  std::vector<int> out;
  for (int u = 0; u < chart.bundle.num_vertices(); ++u)
    if (others.count(chart.projection[u])) out.push_back(u);
  return out;
}

}  // namespace orbivfc
