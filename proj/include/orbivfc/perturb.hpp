#pragma once

#include "orbivfc/multisection.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbivfc {

/// Hat function at a chart vertex times one fiber coordinate.
struct BasisElement {
  int chart = 0;
  int vertex = 0;
  int coordinate = 0;
};

struct PerturbationBasis {
  std::vector<BasisElement> elements;
};

/**
 * Generating set relative to K1: every vertex outside K1 and every fiber
 * coordinate. In multi-chart atlases vertices in the closed star of an
 * overlap vertex are left out so that the perturbation keeps charts in
 * agreement.
 */
PerturbationBasis generating_basis(const EquivariantBundle& e, const std::vector<int>& k1_quotient_vertices);

/// Vertices of each chart the basis can move.
std::vector<std::vector<bool>> support(const EquivariantBundle& e, const PerturbationBasis& basis);

/// Every coordinate appears at each supported vertex.
bool spans(const EquivariantBundle& e, const PerturbationBasis& basis);

struct PerturbOptions {
  int max_attempts = 64;
  long long denominator_bound = 16;
  Rational epsilon = 1;  ///< scales every coefficient
};

struct GenericityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PerturbResult {
  Multisection multisection;
  int attempts = 0;
};

/// Random rational in [-bound, bound] with denominator at most bound.
Rational random_rational(std::mt19937_64& rng, long long bound);

/// enhance(sum of c_b nu_b) with fresh coefficients.
Multisection random_perturbation(const EquivariantBundle& e, const PerturbationBasis& basis, std::mt19937_64& rng,
                                 const PerturbOptions& opts);

/**
 * s + t with t = t1 + [G.p], p supported by the basis, retried until
 * transversal. Coefficients come from a generator seeded with seed. Throws
 * GenericityFailure naming the last failing simplex when the budget runs out.
 */
PerturbResult perturb_relative(const EquivariantBundle& e, const Multisection& s, const Multisection& t1,
                               const PerturbationBasis& basis, std::uint64_t seed, const PerturbOptions& opts = {});

}  // namespace orbivfc
