#pragma once

#include "orbivfc/kuranishi.hpp"

#include <array>
#include <random>
#include <string>
#include <vector>

namespace orbivfc {

/**
 * Finite model of a dimensionally graded system.
 *
 * Open sets are complements of closed subcomplexes, stored as one flag per
 * simplex of the ambient chart complex. Level i carries a chart of rank i
 * whose open part is Y(i); the embedding i -> j is defined on the open set
 * Y(i,j) and given by a vertex map, a fiber map and a group homomorphism
 * defined on the whole of G_i.
 */
struct DgsLevel {
  int index = 0;
  KuranishiChart chart;
  std::vector<bool> open;
};

struct DgsEmbedding {
  int source = 0;
  int target = 0;
  std::vector<bool> domain;
  std::vector<int> phi;
  MatrixQ dphi;
  std::vector<int> h;
};

struct DGS {
  int dimension = 0;
  SimplicialComplex space;
  std::vector<int> space_level;  ///< level map L on simplices of M
  std::vector<DgsLevel> levels;  ///< sorted by index
  std::vector<DgsEmbedding> embeddings;

  int position(int index) const;  ///< -1 when absent
  const DgsLevel& level(int index) const;
  const DgsEmbedding* embedding(int i, int j) const;
};

struct DgsFinding {
  std::string condition;
  std::string message;
};

struct DgsReport {
  std::vector<DgsFinding> failures;
  std::vector<std::string> notes;

  bool ok() const { return failures.empty(); }
};

/// Open-set helpers in the finite topology.
bool is_open(const SimplicialComplex& k, const std::vector<bool>& cells);
std::vector<bool> closure(const SimplicialComplex& k, const std::vector<bool>& cells);

/// Image under phi of a chart simplex; throws when phi is undefined or the image is not a simplex.
int image_simplex(const SimplicialComplex& source, const SimplicialComplex& target, const std::vector<int>& phi, int s);

/// Footprint F(i) restricted to the given cells of Y(i), as flags on M.
std::vector<bool> footprint_set(const DGS& d, const DgsLevel& l, const std::vector<bool>& cells);

/**
 * Checks the grading, footprint, overlap, triple-intersection and cocycle
 * conditions; the tangent condition when asked. Compatibility with an
 * ambient Kuranishi structure needs a generating chart set and is recorded
 * as not applicable.
 */
DgsReport validate(const DGS& d, bool tangent = false);

/// One point of the thickening: a cell orbit of some Y(i), named by its smallest simplex index.
struct ThickeningPoint {
  int level = 0;
  int cell = 0;
};

struct EquivalenceReport {
  bool reflexive = true;
  bool symmetric = true;
  bool transitive = true;
  /// Transitivity triples seen by position of the middle level: between, below both, above both.
  std::array<long long, 3> cases{};
  std::vector<std::string> failures;

  bool ok() const { return reflexive && symmetric && transitive; }
};

struct Thickening {
  std::vector<ThickeningPoint> points;
  std::vector<int> class_of;
  int num_classes = 0;
  EquivalenceReport axioms;
};

/// Related in the disjoint union: same level and cell orbit, or joined by an embedding.
bool related(const DGS& d, const ThickeningPoint& a, const ThickeningPoint& b);

Thickening build_thickening(const DGS& d);

/**
 * Hausdorff surrogate: the graph of every embedding must be closed in
 * Y(i) x Y(j) for the finite cell topology. A face of a cell in Y(i,j) that
 * lies in Y(i) with image in Y(j) must itself lie in Y(i,j).
 */
DgsReport hausdorff_check(const DGS& d);

/// Shrinks to the given open sets; throws InvalidInput when the footprints stop covering M(>= k).
struct ShrinkResult {
  DGS dgs;
  DgsReport report;
};
ShrinkResult shrink(const DGS& d, const std::vector<std::vector<bool>>& choice);

/// Normal derivative ds_{j/i} at every zero of every embedding must be an isomorphism.
DgsReport tangent_condition(const DGS& d);

/// Kuhn triangulation of the grid with the given number of points per axis; vertex ids are mixed radix, axis 0 slowest.
SimplicialComplex kuhn_grid(const std::vector<int>& points);

/**
 * Random three-level system over a path M: Y(i) is an open part of
 * [0,N] x [-1,1]^i with s = (y_1..y_i), embeddings pad with zeros.
 */
DGS random_dgs(std::mt19937_64& rng);

/**
 * Discretized open-ray system: Y(0) a path, Y(1) a closed strip whose
 * boundary column sits over the origin, glued along the positive ray.
 * Fails the Hausdorff check; open_ray_shrinking() drops the column and passes.
 */
DGS open_ray_dgs(int n = 4);
std::vector<std::vector<bool>> open_ray_shrinking(const DGS& d);

/// Path into strip with s = y; with degenerate the strip section is zero off the middle row.
DGS path_into_strip(bool degenerate);

}  // namespace orbivfc
