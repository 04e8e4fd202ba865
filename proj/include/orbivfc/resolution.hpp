#pragma once

#include "orbivfc/chain.hpp"
#include "orbivfc/multisection.hpp"
#include "orbivfc/orbifold.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orbivfc {

/// One sheet over a simplex: a germ class of branches and its integer weight.
struct Sheet {
  std::vector<int> branches;
  long long weight = 0;
};

/// Level c: the simplices of W_c with their sheets.
struct ResolutionLevel {
  int value = 0;
  std::map<int, std::vector<Sheet>> sheets;  ///< chart simplex -> classes

  bool contains(int s) const { return sheets.count(s) > 0; }
};

struct ChartResolution {
  long long total = 0;                        ///< l, total branch multiplicity
  std::vector<ResolutionLevel> levels;        ///< increasing c
  std::vector<int> val;                       ///< per chart simplex
  std::vector<int> lowest;                    ///< lowest level index per chart simplex
  std::vector<std::vector<int>> branch_perm;  ///< per group element, image of each branch
};

/// Resolution of a normalized transversal multisection, chart by chart.
struct Resolution {
  Multisection multisection;
  std::vector<ChartResolution> charts;
};

/**
 * Builds the levels of val, the sheets over each level and their weights,
 * then validates coverage, the level condition, push-forward equivalence,
 * composition of the covering maps and the weight relation. A failed
 * validation is an InternalError.
 */
Resolution build_resolution(const EquivariantBundle& e, const Multisection& m);

/// q_{i,j} at simplex s for levels i > j: the level-j class containing each level-i class.
std::vector<int> covering_map(const ChartResolution& r, int i, int j, int s);

Rational weight_ratio(const ChartResolution& r, int level, int s, int cls);

/// |Stab(s, C)| for class cls of the given level at chart simplex s.
int sheet_isotropy(const EquivariantBundle& e, const ChartResolution& r, int chart, int level, int s, int cls);

/// Weighted push-forward over simplex s of a level: each sheet's germ repeated with its weight.
std::vector<Branch> pushforward(const Resolution& res, int chart, int level, int s);

/// The branched cover of one level as an orbifold covering, one local model per simplex.
OrbifoldCovering level_covering(const EquivariantBundle& e, const Resolution& res, int chart, int level);

struct WeightViolation {
  int chart = 0;
  int level_i = 0;
  int level_j = 0;
  int simplex = 0;
  int cls = 0;
  std::string kind;
};

struct WeightReport {
  bool ok = true;
  long long relations_checked = 0;
  std::vector<WeightViolation> violations;
};

/**
 * Checks w_j(x)/I_j(x) = sum over q^{-1}(x) of w_i(y)/I_i(y) on every overlap,
 * plus the per-simplex normalization sum_C w(C) = l and G-invariance of weights.
 */
WeightReport check_weight_relation(const EquivariantBundle& e, const Resolution& res);

/// One simplex of a good triangulation of a level's zero set.
struct TriangulatedCell {
  int chart = 0;
  int level = 0;
  int carrier = 0;  ///< chart simplex
  int sheet = 0;    ///< class index at the carrier
  ZeroCell cell;
};

/// Agreement witness: a level-i cell lifted through q_{i,j}.
struct OverlapWitness {
  int cell = 0;
  int level_j = 0;
  int sheet_j = 0;
};

struct AdmissibleTriangulation {
  int dimension = 0;
  std::vector<TriangulatedCell> cells;
  std::vector<OverlapWitness> overlaps;
};

/**
 * Zero cells of every sheet orbit representative on every level, with
 * overlap witnesses. Zero sets of dimension at most one, and rank-0 bundles
 * whose zero set is the whole complex, are built directly. Other dimensions
 * raise UnsupportedDimension; supply a candidate and validate it instead.
 */
AdmissibleTriangulation triangulate_admissible(const EquivariantBundle& e, const Resolution& res);

struct TriangulationReport {
  bool ok = true;
  std::vector<std::string> failures;
};

TriangulationReport validate_triangulation(const EquivariantBundle& e, const Resolution& res,
                                           const AdmissibleTriangulation& t);

/// Every free codimension-one face of a chart lies over the interior of another chart.
bool is_closed(const EquivariantBundle& e);

}  // namespace orbivfc
