#pragma once

#include "orbivfc/bundle.hpp"
#include "orbivfc/multisection.hpp"

#include <random>
#include <string>

namespace orbivfc {

/// Suspension of a 3k-cycle with poles 3k (north) and 3k+1 (south); Z_k rotates the cycle by 3.
GroupAction sphere_action(int k);

/// Tangent bundle of S^2 in the invariant frame {z d/dz, iz d/dz}: index-one defects at both poles.
ChartBundle sphere_tangent_chart(int k);

/// Trivial rank-r bundle over the Z_k sphere.
ChartBundle sphere_trivial_chart(int k, int rank);

/// (3n) x 3 periodic grid; Z_n translates by three columns.
GroupAction torus_action(int n);
ChartBundle torus_trivial_chart(int n, int rank);

/// Cycle on n_vertices vertices. Z_order rotates by n_vertices / order.
GroupAction circle_rotation(int n_vertices, int order);
/// Z_2 reflection i -> -i on an even cycle.
GroupAction circle_reflection(int n_vertices);
/// Rank-one bundle over the reflected circle with the sign representation.
ChartBundle circle_sign_chart(int n_vertices);

/// Path 0 - 1 - ... - (n-1) with the trivial group.
GroupAction interval_action(int n_vertices);

/**
 * Two-chart atlas for P^1_{m,n}. Chart 0 is a disc with Z_m around the north
 * pole, chart 1 a disc with Z_n around the south pole; both carry the frame
 * {z d/dz, iz d/dz}. The transition is -(m/n) I.
 */
EquivariantBundle football_bundle(int m, int n);
/// The section z d/dz / m, i.e. (1,0) in chart 0 and (-m/n, 0) in chart 1.
Multisection football_section(int m, int n);

/// Two branches on an interval that agree exactly on the first half.
struct IntervalConfiguration {
  EquivariantBundle bundle;
  Multisection multisection;
};
IntervalConfiguration interval_configuration();

struct Instance {
  std::string name;
  EquivariantBundle bundle;
  Multisection multisection;
};

/**
 * Random oriented instance of dimension at most two: circles, the Z_k sphere
 * and the torus with assorted ranks, carrying a transversal multisection
 * s0 + [G.q] where s0 is invariant and q has random partial support.
 */
Instance random_instance(std::mt19937_64& rng);

/// Generic vector field on the Z_k sphere pushed to the quotient: enhance(p) for random p.
Multisection generic_sphere_field(int k, std::uint64_t seed);

}  // namespace orbivfc
