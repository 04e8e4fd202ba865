#include "orbivfc/perturb.hpp"

#include <set>

namespace orbivfc {

PerturbationBasis generating_basis(const EquivariantBundle& e, const std::vector<int>& k1_quotient_vertices) {
  std::set<int> k1(k1_quotient_vertices.begin(), k1_quotient_vertices.end());
  PerturbationBasis basis;
  for (int c = 0; c < e.num_charts(); ++c) {
    const auto& chart = e.charts[c];
    const auto& k = chart.bundle.action.complex;
    std::vector<bool> blocked(k.num_vertices(), false);
    if (e.num_charts() > 1)
      for (int u : overlap_vertices(e, c))
        for (int w : k.star_vertices(k.index({u}))) blocked[w] = true;
    for (int v = 0; v < k.num_vertices(); ++v) {
      if (blocked[v] || k1.count(chart.projection[v])) continue;
      for (int i = 0; i < chart.bundle.rank; ++i) basis.elements.push_back({c, v, i});
    }
  }
  return basis;
}

std::vector<std::vector<bool>> support(const EquivariantBundle& e, const PerturbationBasis& basis) {
  std::vector<std::vector<bool>> out;
  for (const auto& c : e.charts) out.emplace_back(c.bundle.num_vertices(), false);
  for (const auto& el : basis.elements) out.at(el.chart).at(el.vertex) = true;
  return out;
}

bool spans(const EquivariantBundle& e, const PerturbationBasis& basis) {
  auto sup = support(e, basis);
  std::set<std::tuple<int, int, int>> have;
  for (const auto& el : basis.elements) have.insert({el.chart, el.vertex, el.coordinate});
  for (int c = 0; c < e.num_charts(); ++c)
    for (int v = 0; v < static_cast<int>(sup[c].size()); ++v)
      if (sup[c][v])
        for (int i = 0; i < e.rank(); ++i)
          if (!have.count({c, v, i})) return false;
  return true;
}

Rational random_rational(std::mt19937_64& rng, long long bound) {
  std::uniform_int_distribution<long long> den(1, bound);
  long long q = den(rng);
  std::uniform_int_distribution<long long> num(-bound * q, bound * q);
  return Rational(num(rng), q);
}

Multisection random_perturbation(const EquivariantBundle& e, const PerturbationBasis& basis, std::mt19937_64& rng,
                                 const PerturbOptions& opts) {
  Section p;
  for (const auto& c : e.charts) p.charts.emplace_back(c.bundle.num_vertices(), VectorQ::Zero(c.bundle.rank));
  for (const auto& el : basis.elements)
    p.charts.at(el.chart).at(el.vertex)(el.coordinate) += opts.epsilon * random_rational(rng, opts.denominator_bound);
  return enhance(e, p);
}

PerturbResult perturb_relative(const EquivariantBundle& e, const Multisection& s, const Multisection& t1,
                               const PerturbationBasis& basis, std::uint64_t seed, const PerturbOptions& opts) {
  std::mt19937_64 rng(seed);
  const Multisection base = normalize(sum(s, t1));
  std::string last = "no attempt made";
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    Multisection out = normalize(sum(base, random_perturbation(e, basis, rng, opts)));
    auto rep = is_transversal(e, out);
    if (rep.ok) return {std::move(out), attempt};
    const auto& f = rep.failures.front();
    last = "chart " + std::to_string(f.chart) + " simplex " + std::to_string(f.simplex) + ": " + f.reason;
  }
  throw GenericityFailure("no transversal perturbation after " + std::to_string(opts.max_attempts) + " attempts; last failure at " + last);
}

}  // namespace orbivfc
