#include "orbivfc/group.hpp"

#include "orbivfc/rational.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbivfc {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InvalidInput("group table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw InvalidInput("group table entry out of range");
  }
  FiniteGroup g;
  g.table_ = std::move(table);
  g.identity_ = -1;
  for (int e = 0; e < n && g.identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.table_[e][a] == a && g.table_[a][e] == a;
    if (ok) g.identity_ = e;
  }
  if (g.identity_ < 0) throw InvalidInput("group table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]]) throw InvalidInput("group table is not associative");
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.table_[a][b] == g.identity_ && g.table_[b][a] == g.identity_) g.inverse_[a] = b;
    if (g.inverse_[a] < 0) throw InvalidInput("group element " + std::to_string(a) + " has no inverse");
  }
  // Greedy generating set.
  std::vector<int> gens;
  std::vector<int> span{g.identity_};
  for (int a = 0; a < n && static_cast<int>(span.size()) < n; ++a) {
    if (std::binary_search(span.begin(), span.end(), a)) continue;
    gens.push_back(a);
    span = g.closure(gens);
  }
  g.generators_ = gens;
  return g;
}

FiniteGroup FiniteGroup::trivial() {
  return FiniteGroup{};
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw InvalidInput("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens,
                                           std::vector<std::vector<int>>* elements) {
  if (gens.empty()) {
    if (elements) elements->clear();
    return trivial();
  }
  const std::size_t m = gens.front().size();
  std::vector<int> id(m);
  for (std::size_t i = 0; i < m; ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : gens) {
      if (s.size() != m) throw InvalidInput("permutations of different sizes");
      auto next = compose(s, elems[i]);
      if (!index.count(next)) {
        index[next] = static_cast<int>(elems.size());
        elems.push_back(next);
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  if (elements) *elements = elems;
  return from_table(std::move(t));
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& elems) const {
  std::set<int> s{identity_};
  std::vector<int> frontier{identity_};
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int g : elems) {
      int y = mul(x, g);
      if (s.insert(y).second) frontier.push_back(y);
    }
  }
  return {s.begin(), s.end()};
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(identity_)) return false;
  for (int a : s) {
    if (a < 0 || a >= order()) return false;
    if (!s.count(inv(a))) return false;
    for (int b : s)
      if (!s.count(mul(a, b))) return false;
  }
  return true;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

}  // namespace orbivfc
