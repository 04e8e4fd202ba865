#pragma once

#include "orbivfc/orbifold.hpp"
#include "orbivfc/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace orbivfc {

/**
 * Equivariant PL bundle over one chart [V/G].
 *
 * The fiber over every vertex is Q^rank in one flat frame, so a section is a
 * vector per vertex extended affinely. rho[g] is the fiber map E_x -> E_{gx}
 * in that frame. A defect marks a vertex where the frame itself degenerates
 * with the given index, as z d/dz does at z = 0; defects need rank = dim = 2.
 * fiber_sign fixes the relative orientation: base orientation times the
 * orientation of the frame.
 */
struct ChartBundle {
  GroupAction action;
  int rank = 0;
  std::vector<MatrixQ> rho;
  std::map<int, int> defects;
  int fiber_sign = 1;

  int dimension() const { return action.complex.dimension(); }
  int num_vertices() const { return action.complex.num_vertices(); }
};

/// A chart together with its place in the quotient complex.
struct AtlasChart {
  ChartBundle bundle;
  std::vector<int> projection;  ///< chart vertex -> quotient vertex
  std::vector<Simplex> owned;   ///< quotient simplices whose cells this chart reports
};

/**
 * Orbibundle over a quotient complex |X| covered by finitely many charts.
 *
 * transitions[{i, j}] with i < j maps chart-i fiber values to chart-j values
 * over the overlap; it is constant on the overlap.
 */
struct EquivariantBundle {
  SimplicialComplex quotient;
  std::vector<AtlasChart> charts;
  std::map<std::pair<int, int>, MatrixQ> transitions;

  int rank() const { return charts.empty() ? 0 : charts.front().bundle.rank; }
  int dimension() const { return quotient.dimension(); }
  int num_charts() const { return static_cast<int>(charts.size()); }

  /// Transition from chart i to chart j; identity when i == j.
  MatrixQ transition(int i, int j) const;
  /// Quotient simplex index of chart simplex s.
  int project(int chart, int s) const;
  /// Owning chart per quotient simplex.
  std::vector<int> owner() const;
};

/// Trivial rep of the given rank.
std::vector<MatrixQ> trivial_rep(const FiniteGroup& g, int rank);

/// Wraps a single chart; the quotient is computed from the action.
EquivariantBundle single_chart_bundle(ChartBundle b);

/// Full structural validation; throws InvalidInput naming the failing piece.
void validate(const EquivariantBundle& e);

/// Relative orientability: every g preserves base orientation times fiber orientation,
/// and charts glue orientation-compatibly.
bool relatively_oriented(const EquivariantBundle& e);

/// Vertices of chart c lying over another chart's image.
std::vector<int> overlap_vertices(const EquivariantBundle& e, int c);

}  // namespace orbivfc
