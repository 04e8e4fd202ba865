#pragma once

#include "orbivfc/complex.hpp"
#include "orbivfc/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbivfc {

/// Simplicial action of a finite group: perm[g][v] is the image of vertex v under g.
struct GroupAction {
  FiniteGroup group;
  SimplicialComplex complex;
  std::vector<std::vector<int>> perm;

  int act_vertex(int g, int v) const { return perm[g][v]; }
  /// Index of g applied to the simplex with index s.
  int act(int g, int s) const;
  /// Elements mapping simplex s to itself.
  std::vector<int> stabilizer(int s) const;
};

/// Throws InvalidInput("invalid action: ...") unless perm is a simplicial homomorphism into Aut(complex).
void validate(const GroupAction& a);

GroupAction trivial_action(const SimplicialComplex& k);

/// Elements acting as the identity on every vertex.
std::vector<int> action_kernel(const GroupAction& a);

/// True when every element that maps a simplex to itself fixes it pointwise.
bool is_regular(const GroupAction& a);

/// +1 if g preserves the orientation of every maximal simplex, -1 if it reverses all, 0 otherwise.
int orientation_character(const GroupAction& a, int g);

/**
 * Barycentric subdivision with the induced action.
 *
 * The new vertex of old simplex i gets id i, so old vertices keep their ids.
 * Orientation is inherited. The subdivided action is always regular.
 */
GroupAction barycentric_subdivision(const GroupAction& a);

/// Global quotient [V/G] with orbit and isotropy bookkeeping.
struct OrbifoldComplex {
  GroupAction action;
  std::vector<int> orbit_of;         ///< orbit id per simplex
  std::vector<int> orbit_rep;        ///< smallest simplex index per orbit
  std::vector<int> orbit_isotropy;   ///< |G_x| at the barycenter, per orbit
  std::vector<int> kernel;
  bool effective = true;
  bool regular = true;
  bool orientation_preserving = true;
  long long quotient_euler = 0;      ///< Euler characteristic of |V|/G

  /// Vertex orbit id per vertex; these are the quotient vertex ids.
  std::vector<int> projection;
  /// Present when the projection is injective on every simplex, so |V|/G is simplicial.
  std::optional<SimplicialComplex> quotient;

  int num_orbits() const { return static_cast<int>(orbit_rep.size()); }
  /// Quotient simplex index of upstairs simplex s; requires quotient.
  int project(int s) const;
};

OrbifoldComplex build_quotient(const GroupAction& a);

/// |G_x| for the barycenter of the given simplex.
int isotropy(const OrbifoldComplex& orb, const Simplex& s);
int isotropy(const OrbifoldComplex& orb, int vertex);

/// One local model of a covering: a finite group acting on a finite sheet set.
struct CoveringLocalModel {
  int chart = 0;
  std::vector<int> group;                      ///< elements of the ambient group
  std::vector<std::vector<int>> sheet_action;  ///< sheet permutation per entry of group
  std::vector<std::vector<int>> subgroups;     ///< G_a per orbit representative
  std::vector<int> representatives;            ///< sheet index per a
  std::vector<int> components;                 ///< source component per sheet
};

/// c-covering of orbifolds described chart by chart.
struct OrbifoldCovering {
  FiniteGroup group;
  int degree = 1;
  std::vector<CoveringLocalModel> charts;
  std::vector<int> component_degrees;  ///< declared c_o, summing to degree
};

struct CoveringReport {
  bool ok = true;
  std::optional<int> failing_chart;
  std::string message;
};

CoveringReport verify_covering(const OrbifoldCovering& cov);

/// V -> [V/G] for a free action: degree |G|.
OrbifoldCovering covering_of_free_action(const GroupAction& a);
/// [V/G] -> [V/G]: degree 1.
OrbifoldCovering identity_covering(const GroupAction& a);

}  // namespace orbivfc
