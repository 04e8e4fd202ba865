#include "orbivfc/resolution.hpp"

#include <algorithm>
#include <set>

namespace orbivfc {

namespace {

using Key = std::vector<Rational>;

Key restrict(const FieldValues& values, const Simplex& verts) {
  Key k;
  for (int w : verts)
    for (Eigen::Index i = 0; i < values[w].size(); ++i) k.push_back(values[w](i));
  return k;
}

std::vector<int> faces_of(const SimplicialComplex& k, int s) {
  const auto& verts = k.simplex(s);
  const int n = static_cast<int>(verts.size());
  std::vector<int> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Simplex f;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) f.push_back(verts[i]);
    out.push_back(k.index(f));
  }
  return out;
}

std::vector<std::vector<int>> branch_permutations(const ChartBundle& b, const std::vector<Branch>& branches) {
  std::map<Key, int> where;
  Simplex all(b.num_vertices());
  for (int v = 0; v < b.num_vertices(); ++v) all[v] = v;
  for (int i = 0; i < static_cast<int>(branches.size()); ++i) where[restrict(branches[i].values, all)] = i;
  std::vector<std::vector<int>> perm(b.action.group.order(), std::vector<int>(branches.size()));
  for (int g = 0; g < b.action.group.order(); ++g)
    for (int i = 0; i < static_cast<int>(branches.size()); ++i) {
      auto it = where.find(restrict(act(b, g, branches[i].values), all));
      if (it == where.end()) throw InvalidInput("multisection is not invariant under the group");
      perm[g][i] = it->second;
    }
  return perm;
}

std::vector<int> act_class(const std::vector<int>& perm, const std::vector<int>& cls) {
  std::vector<int> out;
  for (int b : cls) out.push_back(perm[b]);
  std::sort(out.begin(), out.end());
  return out;
}

int find_class(const std::vector<Sheet>& sheets, const std::vector<int>& cls) {
  for (int i = 0; i < static_cast<int>(sheets.size()); ++i)
    if (sheets[i].branches == cls) return i;
  return -1;
}

/// Stab(s, C) as group elements.
std::vector<int> sheet_stabilizer(const ChartBundle& b, const ChartResolution& r, int level, int s, int cls) {
  std::vector<int> out;
  const auto& c = r.levels[level].sheets.at(s)[cls].branches;
  for (int g : b.action.stabilizer(s))
    if (act_class(r.branch_perm[g], c) == c) out.push_back(g);
  return out;
}

}  // namespace

std::vector<int> covering_map(const ChartResolution& r, int i, int j, int s) {
  const auto& hi = r.levels[i].sheets.at(s);
  const auto& lo = r.levels[j].sheets.at(s);
  std::vector<int> out;
  for (const auto& c : hi) {
    int target = -1;
    for (int d = 0; d < static_cast<int>(lo.size()) && target < 0; ++d)
      if (std::includes(lo[d].branches.begin(), lo[d].branches.end(), c.branches.begin(), c.branches.end())) target = d;
    if (target < 0) return {};
    out.push_back(target);
  }
  return out;
}

Rational weight_ratio(const ChartResolution& r, int level, int s, int cls) {
  return Rational(r.levels[level].sheets.at(s)[cls].weight, r.total);
}

int sheet_isotropy(const EquivariantBundle& e, const ChartResolution& r, int chart, int level, int s, int cls) {
  return static_cast<int>(sheet_stabilizer(e.charts[chart].bundle, r, level, s, cls).size());
}

std::vector<Branch> pushforward(const Resolution& res, int chart, int level, int s) {
  std::vector<Branch> out;
  for (const auto& sh : res.charts[chart].levels[level].sheets.at(s))
    out.push_back({sh.weight, res.multisection.charts[chart][sh.branches.front()].values});
  return out;
}

WeightReport check_weight_relation(const EquivariantBundle& e, const Resolution& res) {
  WeightReport rep;
  for (int c = 0; c < static_cast<int>(res.charts.size()); ++c) {
    const auto& r = res.charts[c];
    const auto& b = e.charts[c].bundle;
    const int nlev = static_cast<int>(r.levels.size());
    for (int li = 0; li < nlev; ++li) {
      for (const auto& [s, sheets] : r.levels[li].sheets) {
        long long sum = 0;
        for (const auto& sh : sheets) sum += sh.weight;
        if (sum != r.total) rep.violations.push_back({c, li, li, s, -1, "normalization"});
        for (int g = 0; g < b.action.group.order(); ++g) {
          int gs = b.action.act(g, s);
          auto it = r.levels[li].sheets.find(gs);
          for (int ci = 0; ci < static_cast<int>(sheets.size()); ++ci) {
            int gc = it == r.levels[li].sheets.end() ? -1 : find_class(it->second, act_class(r.branch_perm[g], sheets[ci].branches));
            if (gc < 0 || it->second[gc].weight != sheets[ci].weight) rep.violations.push_back({c, li, li, s, ci, "invariance"});
          }
        }
      }
    }
    for (int i = 0; i < nlev; ++i) {
      for (int j = 0; j < i; ++j) {
        for (const auto& [s, lo] : r.levels[j].sheets) {
          if (!r.levels[i].contains(s)) continue;
          auto q = covering_map(r, i, j, s);
          if (q.empty()) {
            rep.violations.push_back({c, i, j, s, -1, "refinement"});
            continue;
          }
          const auto& hi = r.levels[i].sheets.at(s);
          for (int d = 0; d < static_cast<int>(lo.size()); ++d) {
            auto stab_d = sheet_stabilizer(b, r, j, s, d);
            Rational lhs = weight_ratio(r, j, s, d) / static_cast<long>(stab_d.size());
            Rational rhs = 0;
            std::set<int> done;
            for (int ci = 0; ci < static_cast<int>(hi.size()); ++ci) {
              if (q[ci] != d || done.count(ci)) continue;
              for (int h : stab_d) done.insert(find_class(hi, act_class(r.branch_perm[h], hi[ci].branches)));
              rhs += weight_ratio(r, i, s, ci) / static_cast<long>(sheet_stabilizer(b, r, i, s, ci).size());
            }
            ++rep.relations_checked;
            if (lhs != rhs) rep.violations.push_back({c, i, j, s, d, "weight relation"});
          }
        }
      }
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

Resolution build_resolution(const EquivariantBundle& e, const Multisection& m) {
  Resolution res;
  res.multisection = normalize(m);
  if (!is_transversal(e, res.multisection).ok) throw InvalidInput("build_resolution needs a transversal multisection");
  for (int c = 0; c < e.num_charts(); ++c) {
    const auto& b = e.charts[c].bundle;
    const auto& k = b.action.complex;
    const auto& branches = res.multisection.charts[c];
    ChartResolution r;
    for (const auto& br : branches) r.total += br.multiplicity;
    r.branch_perm = branch_permutations(b, branches);
    std::vector<std::vector<std::vector<int>>> part(k.size());
    r.val.resize(k.size());
    std::set<int> values;
    for (int s = 0; s < k.size(); ++s) {
      part[s] = germ_classes(k, branches, s);
      for (auto& cls : part[s]) std::sort(cls.begin(), cls.end());
      std::sort(part[s].begin(), part[s].end());
      r.val[s] = static_cast<int>(part[s].size());
      values.insert(r.val[s]);
    }
    for (int value : values) {
      ResolutionLevel level;
      level.value = value;
      for (int s = 0; s < k.size(); ++s) {
        const std::vector<std::vector<int>>* agreed = nullptr;
        bool ok = true;
        for (int t : faces_of(k, s)) {
          if (r.val[t] != value) continue;
          if (agreed && *agreed != part[t]) { ok = false; break; }
          agreed = &part[t];
        }
        if (!agreed || !ok) continue;
        std::vector<Sheet> sheets;
        for (const auto& cls : *agreed) {
          Sheet sh{cls, 0};
          for (int bi : cls) sh.weight += branches[bi].multiplicity;
          sheets.push_back(std::move(sh));
        }
        level.sheets.emplace(s, std::move(sheets));
      }
      r.levels.push_back(std::move(level));
    }
    const int nlev = static_cast<int>(r.levels.size());
    for (int s = 0; s < k.size(); ++s)
      for (int i = nlev - 1; i >= 0; --i)
        for (int j = 0; j < i; ++j)
          if (r.levels[i].contains(s) && r.levels[j].contains(s) && covering_map(r, i, j, s).empty())
            r.levels[j].sheets.erase(s);
    r.lowest.assign(k.size(), -1);
    for (int s = 0; s < k.size(); ++s) {
      for (int i = 0; i < nlev && r.lowest[s] < 0; ++i)
        if (r.levels[i].contains(s)) r.lowest[s] = i;
      if (r.lowest[s] < 0) throw InternalError("simplex not covered by any level");
    }
    // Level condition and push-forward equivalence.
    for (int i = 0; i < nlev; ++i) {
      for (const auto& [s, sheets] : r.levels[i].sheets) {
        if (r.val[s] > r.levels[i].value) throw InternalError("level set meets a higher stratum");
        std::map<Key, long long> pushed, original;
        for (const auto& sh : sheets) pushed[restrict(branches[sh.branches.front()].values, k.simplex(s))] += sh.weight;
        for (const auto& br : branches) original[restrict(br.values, k.simplex(s))] += br.multiplicity;
        if (pushed != original) throw InternalError("push-forward differs from the multisection");
      }
    }
    for (int s = 0; s < k.size(); ++s)
      for (int i = 0; i < nlev; ++i)
        for (int j = 0; j < i; ++j)
          for (int l = 0; l < j; ++l) {
            if (!r.levels[i].contains(s) || !r.levels[j].contains(s) || !r.levels[l].contains(s)) continue;
            auto qij = covering_map(r, i, j, s), qjl = covering_map(r, j, l, s), qil = covering_map(r, i, l, s);
            for (std::size_t x = 0; x < qij.size(); ++x)
              if (qjl[qij[x]] != qil[x]) throw InternalError("covering maps do not compose");
          }
    res.charts.push_back(std::move(r));
  }
  auto weights = check_weight_relation(e, res);
  if (!weights.ok) throw InternalError("weight relation fails on a constructed resolution: " + weights.violations.front().kind);
  return res;
}

OrbifoldCovering level_covering(const EquivariantBundle& e, const Resolution& res, int chart, int level) {
  const auto& b = e.charts[chart].bundle;
  const auto& r = res.charts[chart];
  const auto& lev = r.levels[level];
  OrbifoldCovering cov;
  cov.group = b.action.group;
  cov.degree = lev.value;
  for (const auto& [s, sheets] : lev.sheets) {
    CoveringLocalModel m;
    m.chart = s;
    m.group = b.action.stabilizer(s);
    for (int g : m.group) {
      std::vector<int> row;
      for (const auto& sh : sheets) row.push_back(find_class(sheets, act_class(r.branch_perm[g], sh.branches)));
      m.sheet_action.push_back(row);
    }
    std::set<int> covered;
    for (int ci = 0; ci < static_cast<int>(sheets.size()); ++ci) {
      if (covered.count(ci)) continue;
      for (const auto& row : m.sheet_action) covered.insert(row[ci]);
      m.representatives.push_back(ci);
      m.subgroups.push_back(sheet_stabilizer(b, r, level, s, ci));
    }
    cov.charts.push_back(std::move(m));
  }
  return cov;
}

AdmissibleTriangulation triangulate_admissible(const EquivariantBundle& e, const Resolution& res) {
  AdmissibleTriangulation t;
  t.dimension = std::max(e.dimension() - e.rank(), 0);
  auto owner = e.owner();
  for (int c = 0; c < e.num_charts(); ++c) {
    const auto& b = e.charts[c].bundle;
    const auto& k = b.action.complex;
    const auto& r = res.charts[c];
    std::vector<bool> seen(k.size(), false);
    for (int s = 0; s < k.size(); ++s) {
      if (seen[s]) continue;
      for (int g = 0; g < b.action.group.order(); ++g) seen[b.action.act(g, s)] = true;
      if (owner[e.project(c, s)] != c) continue;
      auto stab = b.action.stabilizer(s);
      for (int i = 0; i < static_cast<int>(r.levels.size()); ++i) {
        if (!r.levels[i].contains(s)) continue;
        const auto& sheets = r.levels[i].sheets.at(s);
        std::set<int> done;
        for (int ci = 0; ci < static_cast<int>(sheets.size()); ++ci) {
          if (done.count(ci)) continue;
          for (int g : stab) done.insert(find_class(sheets, act_class(r.branch_perm[g], sheets[ci].branches)));
          const auto& values = res.multisection.charts[c][sheets[ci].branches.front()].values;
          for (auto& cell : zero_cells(e, c, values, s)) {
            int idx = static_cast<int>(t.cells.size());
            t.cells.push_back({c, i, s, ci, std::move(cell)});
            for (int j = 0; j < i; ++j)
              if (r.levels[j].contains(s)) t.overlaps.push_back({idx, j, covering_map(r, i, j, s)[ci]});
          }
        }
      }
    }
  }
  return t;
}

TriangulationReport validate_triangulation(const EquivariantBundle& e, const Resolution& res,
                                           const AdmissibleTriangulation& t) {
  TriangulationReport rep;
  auto has_cell = [&](int c, int s, int level, int cls, const ZeroCell& cell) {
    const auto& sheets = res.charts[c].levels[level].sheets.at(s);
    const auto& values = res.multisection.charts[c][sheets[cls].branches.front()].values;
    for (const auto& z : zero_cells(e, c, values, s))
      if (z.vertices == cell.vertices && z.sign == cell.sign) return true;
    return false;
  };
  std::vector<std::set<int>> witnessed(t.cells.size());
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const auto& tc = t.cells[i];
    const std::string id = "cell " + std::to_string(i) + ": ";
    if (tc.chart < 0 || tc.chart >= e.num_charts()) { rep.failures.push_back(id + "chart out of range"); continue; }
    const auto& r = res.charts[tc.chart];
    if (tc.level < 0 || tc.level >= static_cast<int>(r.levels.size()) || !r.levels[tc.level].contains(tc.carrier)) {
      rep.failures.push_back(id + "carrier is not in its level");
      continue;
    }
    if (tc.sheet < 0 || tc.sheet >= static_cast<int>(r.levels[tc.level].sheets.at(tc.carrier).size())) {
      rep.failures.push_back(id + "sheet out of range");
      continue;
    }
    if (static_cast<int>(tc.cell.vertices.size()) != t.dimension + 1) rep.failures.push_back(id + "wrong dimension");
    if (!has_cell(tc.chart, tc.carrier, tc.level, tc.sheet, tc.cell)) rep.failures.push_back(id + "not a zero cell of its sheet");
  }
  for (const auto& w : t.overlaps) {
    const std::string id = "witness for cell " + std::to_string(w.cell) + ": ";
    if (w.cell < 0 || w.cell >= static_cast<int>(t.cells.size())) { rep.failures.push_back(id + "cell out of range"); continue; }
    const auto& tc = t.cells[w.cell];
    if (tc.chart < 0 || tc.chart >= e.num_charts()) continue;
    const auto& r = res.charts[tc.chart];
    if (w.level_j < 0 || w.level_j >= tc.level || !r.levels[w.level_j].contains(tc.carrier)) {
      rep.failures.push_back(id + "lower level does not contain the carrier");
      continue;
    }
    auto q = covering_map(r, tc.level, w.level_j, tc.carrier);
    if (q.empty() || tc.sheet >= static_cast<int>(q.size()) || q[tc.sheet] != w.sheet_j) {
      rep.failures.push_back(id + "lift does not match the covering map");
      continue;
    }
    if (!has_cell(tc.chart, tc.carrier, w.level_j, w.sheet_j, tc.cell)) rep.failures.push_back(id + "cell differs on the lower level");
    witnessed[w.cell].insert(w.level_j);
  }
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    const auto& tc = t.cells[i];
    if (tc.chart < 0 || tc.chart >= e.num_charts()) continue;
    const auto& r = res.charts[tc.chart];
    for (int j = 0; j < tc.level && j < static_cast<int>(r.levels.size()); ++j)
      if (r.levels[j].contains(tc.carrier) && !witnessed[i].count(j))
        rep.failures.push_back("cell " + std::to_string(i) + ": missing witness for level " + std::to_string(j));
  }
  // Coverage against the canonical construction, compared in the quotient.
  auto canonical = triangulate_admissible(e, res);
  std::map<std::tuple<int, int, std::vector<PointKey>, int>, int> count;
  for (const auto& tc : canonical.cells) ++count[{tc.chart, tc.level, tc.cell.vertices, tc.cell.sign}];
  for (const auto& tc : t.cells) --count[{tc.chart, tc.level, tc.cell.vertices, tc.cell.sign}];
  for (const auto& [key, n] : count)
    if (n != 0) { rep.failures.push_back("cell multiset differs from the zero set"); break; }
  rep.ok = rep.failures.empty();
  return rep;
}

bool is_closed(const EquivariantBundle& e) {
  const int n = e.dimension();
  for (int c = 0; c < e.num_charts(); ++c) {
    const auto& k = e.charts[c].bundle.action.complex;
    if (!k.is_pure() || k.dimension() != n) return false;
    for (int f = 0; f < k.size(); ++f) {
      if (k.dim_of(f) != n - 1 || k.cofaces(f).size() != 1) continue;
      if (n == 0) continue;
      int x = e.project(c, f);
      bool interior = false;
      for (int j = 0; j < e.num_charts() && !interior; ++j) {
        if (j == c) continue;
        const auto& kj = e.charts[j].bundle.action.complex;
        for (int g = 0; g < kj.size() && !interior; ++g)
          if (kj.dim_of(g) == n - 1 && kj.cofaces(g).size() == 2 && e.project(j, g) == x) interior = true;
      }
      if (!interior) return false;
    }
  }
  return true;
}

}  // namespace orbivfc
