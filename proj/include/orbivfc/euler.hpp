#pragma once

#include "orbivfc/resolution.hpp"

#include <map>

namespace orbivfc {

struct EulerComputation {
  Resolution resolution;
  AdmissibleTriangulation triangulation;
  RationalChain chain;
};

/**
 * Rational Euler cycle of a transversal multisection: primary cells of an
 * admissible triangulation weighted by w/I, pushed to |X|. Requires a
 * relatively oriented bundle over a closed orbifold with regular chart
 * actions. The boundary is checked to vanish before returning.
 */
EulerComputation compute_euler(const EquivariantBundle& e, const Multisection& m);
RationalChain euler_cycle(const EquivariantBundle& e, const Multisection& m);

/// Sum of coefficients of a 0-chain.
Rational euler_number(const RationalChain& chain);

/// Total mass of a 0-chain per connected component of the quotient.
std::map<int, Rational> mass_by_component(const EquivariantBundle& e, const RationalChain& chain);

}  // namespace orbivfc
