#include "orbivfc/orbifold.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbivfc {

int GroupAction::act(int g, int s) const {
  Simplex image;
  for (int v : complex.simplex(s)) image.push_back(perm[g][v]);
  std::sort(image.begin(), image.end());
  return complex.index(image);
}

std::vector<int> GroupAction::stabilizer(int s) const {
  std::vector<int> out;
  for (int g = 0; g < group.order(); ++g)
    if (act(g, s) == s) out.push_back(g);
  return out;
}

void validate(const GroupAction& a) {
  const int n = a.complex.num_vertices();
  if (static_cast<int>(a.perm.size()) != a.group.order()) throw InvalidInput("invalid action: need one permutation per group element");
  for (const auto& p : a.perm) {
    if (static_cast<int>(p.size()) != n) throw InvalidInput("invalid action: permutation has the wrong length");
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 0; v < n; ++v)
      if (sorted[v] != v) throw InvalidInput("invalid action: not a permutation of the vertices");
  }
  for (int g = 0; g < a.group.order(); ++g) {
    for (const auto& s : a.complex.simplices()) {
      Simplex image;
      for (int v : s) image.push_back(a.perm[g][v]);
      std::sort(image.begin(), image.end());
      if (!a.complex.find(image)) throw InvalidInput("invalid action: element " + std::to_string(g) + " is not simplicial");
    }
  }
  for (int v = 0; v < n; ++v)
    if (a.perm[a.group.identity()][v] != v) throw InvalidInput("invalid action: identity moves a vertex");
  for (int g = 0; g < a.group.order(); ++g)
    for (int h = 0; h < a.group.order(); ++h)
      for (int v = 0; v < n; ++v)
        if (a.perm[g][a.perm[h][v]] != a.perm[a.group.mul(g, h)][v])
          throw InvalidInput("invalid action: not a homomorphism at (" + std::to_string(g) + "," + std::to_string(h) + ")");
}

GroupAction trivial_action(const SimplicialComplex& k) {
  GroupAction a;
  a.group = FiniteGroup::trivial();
  a.complex = k;
  std::vector<int> id(k.num_vertices());
  for (int v = 0; v < k.num_vertices(); ++v) id[v] = v;
  a.perm = {id};
  return a;
}

std::vector<int> action_kernel(const GroupAction& a) {
  std::vector<int> out;
  for (int g = 0; g < a.group.order(); ++g) {
    bool fixes = true;
    for (int v = 0; v < a.complex.num_vertices() && fixes; ++v) fixes = a.perm[g][v] == v;
    if (fixes) out.push_back(g);
  }
  return out;
}

bool is_regular(const GroupAction& a) {
  for (int s = 0; s < a.complex.size(); ++s)
    for (int g : a.stabilizer(s))
      for (int v : a.complex.simplex(s))
        if (a.perm[g][v] != v) return false;
  return true;
}

int orientation_character(const GroupAction& a, int g) {
  bool plus = false, minus = false;
  for (int s : a.complex.maximal()) {
    std::vector<int> image;
    for (int v : a.complex.simplex(s)) image.push_back(a.perm[g][v]);
    int t = a.act(g, s);
    int c = a.complex.orientation(s) * permutation_sign(image) * a.complex.orientation(t);
    (c > 0 ? plus : minus) = true;
  }
  if (plus && minus) return 0;
  return minus ? -1 : 1;
}

GroupAction barycentric_subdivision(const GroupAction& a) {
  const auto& k = a.complex;
  std::vector<Simplex> tops;
  std::vector<int> signs;
  for (int top : k.maximal()) {
    // Flags ending at top, built by removing one vertex at a time.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> stack{{{top}, {}}};
    while (!stack.empty()) {
      auto [chain, removed] = stack.back();
      stack.pop_back();
      int last = chain.back();
      if (k.dim_of(last) == 0) {
        std::vector<int> order{k.simplex(last)[0]};
        for (auto it = removed.rbegin(); it != removed.rend(); ++it) order.push_back(*it);
        Simplex flag(chain.rbegin(), chain.rend());
        tops.push_back(flag);
        signs.push_back(k.orientation(top) * permutation_sign(order));
        continue;
      }
      const auto& s = k.simplex(last);
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        auto next = chain;
        next.push_back(k.index(f));
        auto rem = removed;
        rem.push_back(s[i]);
        stack.push_back({next, rem});
      }
    }
  }
  GroupAction out;
  out.group = a.group;
  out.complex = SimplicialComplex::from_simplices(tops, k.oriented() ? signs : std::vector<int>{});
  out.perm.assign(a.group.order(), std::vector<int>(out.complex.num_vertices()));
  for (int g = 0; g < a.group.order(); ++g)
    for (int s = 0; s < k.size(); ++s) out.perm[g][s] = a.act(g, s);
  return out;
}

int OrbifoldComplex::project(int s) const {
  if (!quotient) throw InvalidInput("quotient is not simplicial; subdivide the action first");
  Simplex image;
  for (int v : action.complex.simplex(s)) image.push_back(projection[v]);
  std::sort(image.begin(), image.end());
  return quotient->index(image);
}

OrbifoldComplex build_quotient(const GroupAction& a) {
  validate(a);
  OrbifoldComplex orb;
  orb.action = a;
  const auto& k = a.complex;
  orb.orbit_of.assign(k.size(), -1);
  for (int s = 0; s < k.size(); ++s) {
    if (orb.orbit_of[s] >= 0) continue;
    int id = orb.num_orbits();
    orb.orbit_rep.push_back(s);
    orb.orbit_isotropy.push_back(static_cast<int>(a.stabilizer(s).size()));
    for (int g = 0; g < a.group.order(); ++g) orb.orbit_of[a.act(g, s)] = id;
  }
  orb.kernel = action_kernel(a);
  orb.effective = orb.kernel.size() == 1;
  orb.regular = is_regular(a);
  orb.orientation_preserving = k.oriented();
  for (int g = 0; g < a.group.order() && orb.orientation_preserving; ++g)
    orb.orientation_preserving = orientation_character(a, g) == 1;
  if (orb.regular) {
    for (int r : orb.orbit_rep) orb.quotient_euler += k.dim_of(r) % 2 == 0 ? 1 : -1;
  } else {
    orb.quotient_euler = build_quotient(barycentric_subdivision(a)).quotient_euler;
  }
  std::map<int, int> label;
  orb.projection.assign(k.num_vertices(), -1);
  for (int v = 0; v < k.num_vertices(); ++v) {
    int o = orb.orbit_of[k.index({v})];
    orb.projection[v] = label.emplace(o, static_cast<int>(label.size())).first->second;
  }
  std::vector<Simplex> images;
  std::vector<int> signs;
  bool simplicial = true;
  for (int s : k.maximal()) {
    std::vector<int> seq;
    for (int v : k.simplex(s)) seq.push_back(orb.projection[v]);
    Simplex sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) { simplicial = false; break; }
    images.push_back(sorted);
    signs.push_back(k.orientation(s) * permutation_sign(seq));
  }
  if (simplicial) {
    std::map<Simplex, int> seen;
    for (std::size_t i = 0; i < images.size(); ++i) {
      auto [it, fresh] = seen.emplace(images[i], signs[i]);
      if (!fresh && it->second != signs[i] && orb.orientation_preserving) simplicial = false;
    }
    std::vector<Simplex> tops;
    std::vector<int> top_signs;
    for (const auto& [s, sg] : seen) { tops.push_back(s); top_signs.push_back(sg); }
    if (simplicial) {
      auto q = SimplicialComplex::from_simplices(tops, orb.orientation_preserving ? top_signs : std::vector<int>{});
      if (q.size() == orb.num_orbits()) orb.quotient = std::move(q);
    }
  }
  return orb;
}

int isotropy(const OrbifoldComplex& orb, const Simplex& s) {
  Simplex sorted = s;
  std::sort(sorted.begin(), sorted.end());
  auto idx = orb.action.complex.find(sorted);
  if (!idx) throw InvalidInput("isotropy: simplex not in complex");
  return orb.orbit_isotropy[orb.orbit_of[*idx]];
}

int isotropy(const OrbifoldComplex& orb, int vertex) { return isotropy(orb, Simplex{vertex}); }

namespace {

CoveringReport fail(int chart, std::string msg) { return {false, chart, std::move(msg)}; }

}  // namespace

CoveringReport verify_covering(const OrbifoldCovering& cov) {
  const auto& g = cov.group;
  if (cov.degree < 1) return {false, std::nullopt, "degree must be positive"};
  std::map<int, int> component_count;
  for (const auto& m : cov.charts) {
    const int c = m.chart;
    if (!g.is_subgroup(m.group)) return fail(c, "local group is not a subgroup");
    if (m.sheet_action.size() != m.group.size()) return fail(c, "one sheet permutation per local element required");
    const std::size_t sheets = m.sheet_action.empty() ? 0 : m.sheet_action.front().size();
    std::map<int, int> where;
    for (std::size_t i = 0; i < m.group.size(); ++i) where[m.group[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < m.group.size(); ++i) {
      if (m.sheet_action[i].size() != sheets) return fail(c, "sheet permutations differ in length");
      for (std::size_t j = 0; j < m.group.size(); ++j) {
        const auto& pij = m.sheet_action[where.at(g.mul(m.group[i], m.group[j]))];
        for (std::size_t x = 0; x < sheets; ++x)
          if (m.sheet_action[i][m.sheet_action[j][x]] != pij[x]) return fail(c, "sheet action is not a homomorphism");
      }
    }
    if (m.subgroups.size() != m.representatives.size()) return fail(c, "one representative per subgroup required");
    std::vector<int> covered(sheets, -1);
    long long total = 0;
    for (std::size_t a = 0; a < m.subgroups.size(); ++a) {
      int rep = m.representatives[a];
      if (rep < 0 || rep >= static_cast<int>(sheets)) return fail(c, "representative out of range");
      std::vector<int> stab;
      for (std::size_t i = 0; i < m.group.size(); ++i) {
        int img = m.sheet_action[i][rep];
        if (img == rep) stab.push_back(m.group[i]);
        if (covered[img] >= 0 && covered[img] != static_cast<int>(a)) return fail(c, "representatives share an orbit");
        covered[img] = static_cast<int>(a);
      }
      std::sort(stab.begin(), stab.end());
      std::vector<int> declared = m.subgroups[a];
      std::sort(declared.begin(), declared.end());
      if (!g.is_subgroup(declared)) return fail(c, "G_a is not a subgroup");
      if (declared != stab) return fail(c, "G_a is not the stabilizer of its sheet");
      total += static_cast<long long>(m.group.size() / declared.size());
    }
    for (int x : covered)
      if (x < 0) return fail(c, "sheet not reached by any representative");
    if (total != cov.degree)
      return fail(c, "sum of |G/G_a| is " + std::to_string(total) + ", declared degree " + std::to_string(cov.degree));
    if (!m.components.empty()) {
      if (m.components.size() != sheets) return fail(c, "component labels per sheet required");
      std::map<int, int> here;
      for (int o : m.components) ++here[o];
      for (auto [o, n] : here) {
        if (o < 0 || o >= static_cast<int>(cov.component_degrees.size())) return fail(c, "unknown component");
        if (n != cov.component_degrees[o]) return fail(c, "component degree mismatch");
      }
    }
  }
  long long sum = 0;
  for (int d : cov.component_degrees) sum += d;
  if (!cov.component_degrees.empty() && sum != cov.degree) return {false, std::nullopt, "component degrees do not sum to c"};
  return {};
}

OrbifoldCovering covering_of_free_action(const GroupAction& a) {
  auto orb = build_quotient(a);
  for (int iso : orb.orbit_isotropy)
    if (iso != 1) throw InvalidInput("covering_of_free_action: action is not free");
  OrbifoldCovering cov;
  cov.group = a.group;
  cov.degree = a.group.order();
  cov.component_degrees = {cov.degree};
  for (int o = 0; o < orb.num_orbits(); ++o) {
    CoveringLocalModel m;
    m.chart = o;
    for (int g = 0; g < a.group.order(); ++g) {
      m.group.push_back(g);
      std::vector<int> row(a.group.order());
      for (int h = 0; h < a.group.order(); ++h) row[h] = a.group.mul(g, h);
      m.sheet_action.push_back(row);
    }
    m.subgroups = {{a.group.identity()}};
    m.representatives = {a.group.identity()};
    m.components.assign(a.group.order(), 0);
    cov.charts.push_back(std::move(m));
  }
  return cov;
}

OrbifoldCovering identity_covering(const GroupAction& a) {
  auto orb = build_quotient(a);
  OrbifoldCovering cov;
  cov.group = a.group;
  cov.degree = 1;
  cov.component_degrees = {1};
  for (int o = 0; o < orb.num_orbits(); ++o) {
    CoveringLocalModel m;
    m.chart = o;
    m.group = a.stabilizer(orb.orbit_rep[o]);
    m.sheet_action.assign(m.group.size(), std::vector<int>{0});
    m.subgroups = {m.group};
    m.representatives = {0};
    m.components = {0};
    cov.charts.push_back(std::move(m));
  }
  return cov;
}

}  // namespace orbivfc
