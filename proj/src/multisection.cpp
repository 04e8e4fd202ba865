#include "orbivfc/multisection.hpp"

#include "orbivfc/linalg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace orbivfc {

namespace {

using Key = std::vector<Rational>;

Key flatten(const FieldValues& values) {
  Key k;
  for (const auto& v : values)
    for (Eigen::Index i = 0; i < v.size(); ++i) k.push_back(v(i));
  return k;
}

Key restrict(const FieldValues& values, const std::vector<int>& vertices) {
  Key k;
  for (int w : vertices)
    for (Eigen::Index i = 0; i < values[w].size(); ++i) k.push_back(values[w](i));
  return k;
}

std::map<Key, Rational> weighted(const std::vector<Branch>& branches) {
  long long total = 0;
  for (const auto& b : branches) total += b.multiplicity;
  std::map<Key, Rational> out;
  for (const auto& b : branches) out[flatten(b.values)] += Rational(b.multiplicity, total);
  return out;
}

}  // namespace

long long Multisection::total(int c) const {
  long long t = 0;
  for (const auto& b : charts[c]) t += b.multiplicity;
  return t;
}

FieldValues act(const ChartBundle& b, int g, const FieldValues& s) {
  FieldValues out(s.size());
  for (std::size_t v = 0; v < s.size(); ++v) out[b.action.perm[g][v]] = b.rho[g] * s[v];
  return out;
}

std::vector<Branch> enhance(const ChartBundle& b, const FieldValues& s) {
  std::vector<Branch> out;
  for (int g = 0; g < b.action.group.order(); ++g) out.push_back({1, act(b, g, s)});
  return out;
}

Multisection enhance(const EquivariantBundle& e, const Section& s) {
  if (static_cast<int>(s.charts.size()) != e.num_charts()) throw InvalidInput("section has the wrong number of charts");
  Multisection m;
  for (int c = 0; c < e.num_charts(); ++c) m.charts.push_back(enhance(e.charts[c].bundle, s.charts[c]));
  return m;
}

Multisection zero_multisection(const EquivariantBundle& e) {
  Multisection m;
  for (const auto& c : e.charts)
    m.charts.push_back({{1, FieldValues(c.bundle.num_vertices(), VectorQ::Zero(c.bundle.rank))}});
  return m;
}

Multisection normalize(Multisection m) {
  for (auto& chart : m.charts) {
    std::map<Key, std::pair<long long, FieldValues>> merged;
    for (auto& b : chart) {
      auto& slot = merged[flatten(b.values)];
      slot.first += b.multiplicity;
      slot.second = std::move(b.values);
    }
    long long g = 0;
    for (const auto& [k, v] : merged) g = std::gcd(g, v.first);
    chart.clear();
    for (auto& [k, v] : merged) chart.push_back({v.first / g, std::move(v.second)});
  }
  return m;
}

Multisection sum(const Multisection& a, const Multisection& b) {
  if (a.charts.size() != b.charts.size()) throw InvalidInput("multisections live on different bundles");
  Multisection out;
  for (std::size_t c = 0; c < a.charts.size(); ++c) {
    std::vector<Branch> list;
    for (const auto& x : a.charts[c]) {
      for (const auto& y : b.charts[c]) {
        if (x.values.size() != y.values.size()) throw InvalidInput("multisections live on different bundles");
        Branch s{x.multiplicity * y.multiplicity, x.values};
        for (std::size_t v = 0; v < s.values.size(); ++v) {
          if (s.values[v].size() != y.values[v].size()) throw InvalidInput("multisections live on different bundles");
          s.values[v] += y.values[v];
        }
        list.push_back(std::move(s));
      }
    }
    out.charts.push_back(std::move(list));
  }
  return out;
}

Multisection scale(Multisection m, long long k) {
  if (k < 1) throw InvalidInput("multiplicity scale must be positive");
  for (auto& chart : m.charts)
    for (auto& b : chart) b.multiplicity *= k;
  return m;
}

bool equivalent(const EquivariantBundle& e, const Multisection& a, const Multisection& b, Equivalence mode) {
  if (a.charts.size() != b.charts.size() || static_cast<int>(a.charts.size()) != e.num_charts()) return false;
  for (int c = 0; c < e.num_charts(); ++c) {
    if (mode == Equivalence::Lifted) {
      if (weighted(a.charts[c]) != weighted(b.charts[c])) return false;
      continue;
    }
    const auto& k = e.charts[c].bundle.action.complex;
    for (int s : k.maximal()) {
      auto restricted = [&](const std::vector<Branch>& list) {
        long long total = 0;
        for (const auto& br : list) total += br.multiplicity;
        std::map<Key, Rational> out;
        for (const auto& br : list) out[restrict(br.values, k.simplex(s))] += Rational(br.multiplicity, total);
        return out;
      };
      if (restricted(a.charts[c]) != restricted(b.charts[c])) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> germ_classes(const SimplicialComplex& k, const std::vector<Branch>& branches, int s) {
  auto star = k.star_vertices(s);
  std::map<Key, int> cls;
  std::vector<std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(branches.size()); ++i) {
    auto [it, fresh] = cls.emplace(restrict(branches[i].values, star), static_cast<int>(out.size()));
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

int val(const SimplicialComplex& k, const std::vector<Branch>& branches, int s) {
  return static_cast<int>(germ_classes(k, branches, s).size());
}

void validate(const EquivariantBundle& e, const Multisection& m) {
  if (static_cast<int>(m.charts.size()) != e.num_charts()) throw InvalidInput("multisection has the wrong number of charts");
  for (int c = 0; c < e.num_charts(); ++c) {
    const auto& b = e.charts[c].bundle;
    if (m.charts[c].empty()) throw InvalidInput("chart " + std::to_string(c) + " has no branches");
    for (const auto& br : m.charts[c]) {
      if (br.multiplicity < 1) throw InvalidInput("branch multiplicity must be positive");
      if (static_cast<int>(br.values.size()) != b.num_vertices()) throw InvalidInput("branch needs one value per vertex");
      for (const auto& v : br.values)
        if (v.size() != b.rank) throw InvalidInput("branch value has the wrong rank");
    }
    auto base = weighted(m.charts[c]);
    for (int g = 0; g < b.action.group.order(); ++g) {
      std::vector<Branch> moved;
      for (const auto& br : m.charts[c]) moved.push_back({br.multiplicity, act(b, g, br.values)});
      if (weighted(moved) != base)
        throw InvalidInput("chart " + std::to_string(c) + ": branch set is not invariant under element " + std::to_string(g));
    }
  }
  for (int i = 0; i < e.num_charts(); ++i) {
    for (int j = i + 1; j < e.num_charts(); ++j) {
      const auto& ci = e.charts[i];
      const auto& cj = e.charts[j];
      const MatrixQ t = e.transition(i, j);
      auto germs = [&](const AtlasChart& chart, const std::vector<Branch>& list, int u, const std::vector<int>& common,
                       const MatrixQ& map) {
        const auto& k = chart.bundle.action.complex;
        std::map<int, int> by_quotient;
        for (int w : k.star_vertices(k.index({u}))) by_quotient[chart.projection[w]] = w;
        long long total = 0;
        for (const auto& br : list) total += br.multiplicity;
        std::map<Key, Rational> out;
        for (const auto& br : list) {
          Key key;
          for (int x : common) {
            VectorQ v = map * br.values[by_quotient.at(x)];
            for (Eigen::Index r = 0; r < v.size(); ++r) key.push_back(v(r));
          }
          out[key] += Rational(br.multiplicity, total);
        }
        return out;
      };
      auto quotient_star = [](const AtlasChart& chart, int u) {
        const auto& k = chart.bundle.action.complex;
        std::vector<int> out;
        for (int w : k.star_vertices(k.index({u}))) out.push_back(chart.projection[w]);
        std::sort(out.begin(), out.end());
        return out;
      };
      const MatrixQ id = MatrixQ::Identity(e.rank(), e.rank());
      for (int uj = 0; uj < cj.bundle.num_vertices(); ++uj) {
        int x = cj.projection[uj];
        for (int ui = 0; ui < ci.bundle.num_vertices(); ++ui) {
          if (ci.projection[ui] != x) continue;
          auto si = quotient_star(ci, ui);
          auto sj = quotient_star(cj, uj);
          std::vector<int> common;
          std::set_intersection(si.begin(), si.end(), sj.begin(), sj.end(), std::back_inserter(common));
          if (germs(ci, m.charts[i], ui, common, t) != germs(cj, m.charts[j], uj, common, id))
            throw InvalidInput("multisection disagrees between charts " + std::to_string(i) + " and " + std::to_string(j) +
                               " at quotient vertex " + std::to_string(x));
        }
      }
    }
  }
}

namespace pl {

MatrixQ linear_part(const std::vector<VectorQ>& vals) {
  const auto r = vals.front().size();
  MatrixQ a(r, static_cast<Eigen::Index>(vals.size()) - 1);
  for (std::size_t k = 1; k < vals.size(); ++k) a.col(static_cast<Eigen::Index>(k) - 1) = vals[k] - vals[0];
  return a;
}

namespace {

std::optional<std::vector<Rational>> solve_support(const std::vector<VectorQ>& vals, const std::vector<int>& support) {
  const auto r = vals.front().size();
  const auto n = static_cast<Eigen::Index>(support.size());
  MatrixQ m(r + 1, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m.col(k).head(r) = vals[support[k]];
    m(r, k) = 1;
  }
  VectorQ rhs = VectorQ::Zero(r + 1);
  rhs(r) = 1;
  if (linalg::rank(m) != n) return std::nullopt;
  auto x = linalg::solve(m, rhs);
  if (!x) return std::nullopt;
  return std::vector<Rational>(x->data(), x->data() + n);
}

}  // namespace

std::optional<std::vector<Rational>> unique_zero(const std::vector<VectorQ>& vals) {
  std::vector<int> all(vals.size());
  std::iota(all.begin(), all.end(), 0);
  return solve_support(vals, all);
}

bool zero_meets(const std::vector<VectorQ>& vals) {
  const int n = static_cast<int>(vals.size());
  const int r = static_cast<int>(vals.front().size());
  const int max_support = std::min(n, r + 1);
  // A nonempty polytope has a basic feasible point supported on independent columns.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > max_support) continue;
    std::vector<int> support;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) support.push_back(k);
    auto x = solve_support(vals, support);
    if (x && std::all_of(x->begin(), x->end(), [](const Rational& q) { return q >= 0; })) return true;
  }
  return false;
}

}  // namespace pl

TransversalityReport is_transversal(const EquivariantBundle& e, const Multisection& m) {
  TransversalityReport rep;
  const int r = e.rank();
  for (int c = 0; c < e.num_charts(); ++c) {
    const auto& b = e.charts[c].bundle;
    const auto& k = b.action.complex;
    std::map<Key, int> seen;
    for (int bi = 0; bi < static_cast<int>(m.charts[c].size()); ++bi) {
      const auto& values = m.charts[c][bi].values;
      if (!seen.emplace(flatten(values), bi).second) continue;
      for (auto [v, charge] : b.defects) {
        if (values[v].isZero()) rep.failures.push_back({c, bi, k.index({v}), "frame coordinates vanish at a defect"});
      }
      if (r == 0) continue;
      for (int s = 0; s < k.size(); ++s) {
        std::vector<VectorQ> vals;
        for (int v : k.simplex(s)) vals.push_back(values[v]);
        if (!pl::zero_meets(vals)) continue;
        if (k.dim_of(s) < r || linalg::rank(pl::linear_part(vals)) != r)
          rep.failures.push_back({c, bi, s, "zero set meets a simplex where the linear part has rank below the fiber rank"});
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace orbivfc
