#pragma once

#include "orbivfc/chain.hpp"
#include "orbivfc/multisection.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace orbivfc {

/// List of failed checks; empty means pass.
struct CheckReport {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
};

/**
 * Kuranishi chart over a finite footprint space M (a simplicial complex).
 *
 * The section vanishes exactly on a subcomplex of the chart. footprint sends
 * each zero vertex to a vertex of M and is -1 elsewhere.
 */
struct KuranishiChart {
  ChartBundle bundle;
  FieldValues section;
  std::vector<int> footprint;
  int dimension = 0;

  int rank() const { return bundle.rank; }
};

/// Vertices where the section vanishes.
std::vector<bool> zero_vertices(const KuranishiChart& c);
/// Chart simplices all of whose vertices are zeros.
std::vector<int> zero_simplices(const KuranishiChart& c);
/// M simplex index hit by a zero simplex; throws when the image is not a simplex of M.
int footprint_of(const KuranishiChart& c, const SimplicialComplex& m, int s);

CheckReport validate_chart(const KuranishiChart& c, const SimplicialComplex& m);

/**
 * Coordinate change from chart 1 to chart 2 on the sub-chart spanned by
 * domain and restricted to subgroup. phi and h are indexed by source vertex
 * and source element and are -1 outside the sub-chart.
 */
struct CoordinateChange {
  std::vector<int> subgroup;
  std::vector<int> domain;
  std::vector<int> phi;
  MatrixQ dphi;
  std::vector<int> h;
};

/// Identity change of a chart onto itself.
CoordinateChange identity_change(const KuranishiChart& c);

CheckReport validate_coordinate_change(const KuranishiChart& c1, const KuranishiChart& c2,
                                       const CoordinateChange& cc);

struct CocycleComponent {
  std::vector<int> vertices;     ///< chart-1 vertices of the component
  std::optional<int> twist;      ///< element g of G_3 found for it
};

struct CocycleReport {
  std::vector<CocycleComponent> components;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/**
 * Cocycle condition for cc12, cc23, cc13 between charts 1, 2, 3: on every
 * connected component of phi12^-1(V23) cap V13 some g in G_3 carries
 * phi23 phi12 to phi13, the same for the fiber maps, and conjugates h13 into
 * h23 h12.
 */
CocycleReport check_cocycle(const KuranishiChart& c1, const KuranishiChart& c2, const KuranishiChart& c3,
                            const CoordinateChange& cc12, const CoordinateChange& cc23,
                            const CoordinateChange& cc13);

/// Finite generating chart set for a Kuranishi structure: center[s] is the chart centered at M simplex s.
struct KuranishiStructure {
  SimplicialComplex space;
  std::vector<KuranishiChart> charts;
  std::vector<int> center;
};

struct LevelMap {
  std::vector<int> level;                   ///< per simplex of M
  std::vector<int> levels;                  ///< nonempty levels, sorted
  std::map<int, std::vector<int>> strata;   ///< level -> simplices of M(k)
};

/// Returns the violations; {L >= k} must be closed, i.e. faces sit at level at least that of their cofaces.
std::vector<std::string> semicontinuity_violations(const SimplicialComplex& m, const std::vector<int>& level);

/// L(p) = rank of the chart centered at p; throws InvalidInput on a semicontinuity violation.
LevelMap level_map(const KuranishiStructure& k);

/**
 * Virtual class of a pure orbibundle structure: the Euler cycle of every
 * component, in order. Each multisection must already be transversal.
 */
std::vector<RationalChain> pure_orbibundle_vfc(
    const std::vector<std::pair<EquivariantBundle, Multisection>>& components);

/// Restricted chain of three charts of a Z_3 circle with a twist g on the 1 -> 3 change.
struct CocycleTriple {
  KuranishiChart c1, c2, c3;
  CoordinateChange cc12, cc23, cc13;
  int twist = 0;
};
CocycleTriple cocycle_triple(std::mt19937_64& rng);

/// Single mutation of cc13 (vertex image, fiber entry or group image); always changes something.
CoordinateChange mutate_change(const CocycleTriple& t, std::mt19937_64& rng, std::string* what = nullptr);

/// Two charts over a path of seven points: an interval with zero bundle and a strip with s = y.
struct IntervalStrip {
  SimplicialComplex space;
  KuranishiChart interval, strip;
  CoordinateChange change;
};
/// With z2 the strip carries Z_2 acting by (x, y, z) -> (x, -y, -z).
IntervalStrip interval_strip(bool z2);

}  // namespace orbivfc
