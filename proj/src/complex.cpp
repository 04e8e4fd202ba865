#include "orbivfc/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace orbivfc {

int permutation_sign(std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    while (true) {
      auto pos = static_cast<std::size_t>(std::count_if(seq.begin(), seq.end(), [&](int x) { return x < seq[i]; }));
      if (pos == i) break;
      std::swap(seq[i], seq[pos]);
      sign = -sign;
    }
  }
  return sign;
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> tops, std::vector<int> signs) {
  if (!signs.empty() && signs.size() != tops.size()) throw InvalidInput("orientation sign count does not match simplex count");
  for (auto& t : tops) {
    if (t.empty()) throw InvalidInput("empty simplex");
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw InvalidInput("simplex with a repeated vertex");
    if (t.front() < 0) throw InvalidInput("negative vertex id");
  }
  for (int s : signs)
    if (s != 1 && s != -1) throw InvalidInput("orientation sign must be + or -");
  SimplicialComplex k;
  k.build(signs, tops);
  return k;
}

void SimplicialComplex::build(const std::vector<int>& top_signs, const std::vector<Simplex>& tops) {
  std::set<Simplex> all;
  for (const auto& t : tops) {
    const int n = static_cast<int>(t.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(t[i]);
      all.insert(f);
    }
  }
  simplices_.assign(all.begin(), all.end());
  std::stable_sort(simplices_.begin(), simplices_.end(),
                   [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
  for (int i = 0; i < size(); ++i) lookup_[simplices_[i]] = i;
  num_vertices_ = 0;
  for (const auto& s : simplices_) {
    dim_ = std::max(dim_, static_cast<int>(s.size()) - 1);
    num_vertices_ = std::max(num_vertices_, s.back() + 1);
  }
  for (int v = 0; v < num_vertices_; ++v)
    if (!lookup_.count({v})) throw InvalidInput("vertex ids must be contiguous from 0; " + std::to_string(v) + " is unused");
  faces_.assign(size(), {});
  cofaces_.assign(size(), {});
  for (int i = 0; i < size(); ++i) {
    const auto& s = simplices_[i];
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(drop));
      int j = lookup_.at(f);
      faces_[i].push_back(j);
      cofaces_[j].push_back(i);
    }
  }
  orientation_.assign(size(), 0);
  for (int i = 0; i < size(); ++i)
    if (cofaces_[i].empty()) maximal_.push_back(i);
  for (int i : maximal_) orientation_[i] = 1;
  oriented_ = !top_signs.empty();
  for (std::size_t t = 0; t < tops.size() && oriented_; ++t) {
    int i = lookup_.at(tops[t]);
    if (!cofaces_[i].empty()) throw InvalidInput("orientation given for a non-maximal simplex");
    orientation_[i] = top_signs[t];
  }
}

std::optional<int> SimplicialComplex::find(const Simplex& s) const {
  auto it = lookup_.find(s);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int SimplicialComplex::index(const Simplex& s) const {
  auto i = find(s);
  if (!i) throw InvalidInput("simplex not in complex");
  return *i;
}

bool SimplicialComplex::is_pure() const {
  return std::all_of(maximal_.begin(), maximal_.end(), [&](int i) { return dim_of(i) == dim_; });
}

std::vector<int> SimplicialComplex::star(int i) const {
  std::vector<int> out;
  std::vector<int> stack{i};
  std::set<int> seen{i};
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (int c : cofaces_[s])
      if (seen.insert(c).second) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> SimplicialComplex::star_vertices(int i) const {
  std::set<int> vs;
  for (int s : star(i)) vs.insert(simplices_[s].begin(), simplices_[s].end());
  return {vs.begin(), vs.end()};
}

bool SimplicialComplex::orientation_consistent() const {
  if (!is_pure()) return false;
  for (int i = 0; i < size(); ++i) {
    if (dim_of(i) != dim_ - 1) continue;
    int total = 0;
    for (int c : cofaces_[i]) {
      const auto& top = simplices_[c];
      const auto& f = simplices_[i];
      std::size_t drop = 0;
      while (drop < f.size() && top[drop] == f[drop]) ++drop;
      total += orientation_[c] * face_sign(static_cast<int>(drop));
    }
    if (cofaces_[i].size() == 2 && total != 0) return false;
  }
  return true;
}

bool SimplicialComplex::is_pseudomanifold() const {
  if (!is_pure()) return false;
  for (int i = 0; i < size(); ++i)
    if (dim_of(i) == dim_ - 1 && cofaces_[i].size() > 2) return false;
  return true;
}

std::vector<int> SimplicialComplex::connected_components() const {
  std::vector<int> parent(num_vertices_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (const auto& s : simplices_)
    for (std::size_t j = 1; j < s.size(); ++j) parent[root(s[j])] = root(s[0]);
  std::map<int, int> ids;
  std::vector<int> out(num_vertices_);
  for (int v = 0; v < num_vertices_; ++v) {
    int r = root(v);
    auto it = ids.emplace(r, static_cast<int>(ids.size())).first;
    out[v] = it->second;
  }
  return out;
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (const auto& s : simplices_) chi += (s.size() % 2 == 1) ? 1 : -1;
  return chi;
}

long long euler_characteristic(const SimplicialComplex& k) { return k.euler_characteristic(); }

}  // namespace orbivfc
