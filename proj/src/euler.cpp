#include "orbivfc/euler.hpp"

namespace orbivfc {

EulerComputation compute_euler(const EquivariantBundle& e, const Multisection& m) {
  validate(e);
  if (!relatively_oriented(e)) throw InvalidInput("bundle is not relatively oriented");
  for (int c = 0; c < e.num_charts(); ++c)
    if (!is_regular(e.charts[c].bundle.action))
      throw InvalidInput("chart " + std::to_string(c) + " action is not regular; subdivide first");
  if (!is_closed(e)) throw InvalidInput("euler cycle needs a closed orbifold");
  validate(e, m);
  if (!is_transversal(e, m).ok) throw InvalidInput("multisection is not transversal");
  EulerComputation out;
  out.resolution = build_resolution(e, m);
  out.triangulation = triangulate_admissible(e, out.resolution);
  out.chain = RationalChain(out.triangulation.dimension);
  for (const auto& tc : out.triangulation.cells) {
    const auto& r = out.resolution.charts[tc.chart];
    if (r.lowest[tc.carrier] != tc.level) continue;
    Rational coeff = weight_ratio(r, tc.level, tc.carrier, tc.sheet) /
                     static_cast<long>(sheet_isotropy(e, r, tc.chart, tc.level, tc.carrier, tc.sheet));
    out.chain.add(tc.cell.vertices, coeff * tc.cell.sign);
  }
  if (!out.chain.boundary().is_zero()) throw InternalError("Euler chain has nonzero boundary");
  return out;
}

RationalChain euler_cycle(const EquivariantBundle& e, const Multisection& m) { return compute_euler(e, m).chain; }

Rational euler_number(const RationalChain& chain) {
  if (chain.degree() != 0) throw InvalidInput("euler number needs a 0-chain, got degree " + std::to_string(chain.degree()));
  return chain.total_mass();
}

std::map<int, Rational> mass_by_component(const EquivariantBundle& e, const RationalChain& chain) {
  if (chain.degree() != 0) throw InvalidInput("component masses need a 0-chain");
  auto comp = e.quotient.connected_components();
  std::map<int, Rational> out;
  for (int id : comp) out[id] = 0;
  for (const auto& [verts, c] : chain.terms()) out[comp[verts.front().carrier.front()]] += c;
  return out;
}

}  // namespace orbivfc
