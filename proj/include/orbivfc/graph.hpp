#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbivfc::graph {

struct Vertex {
  int genus = 0;
  std::optional<long long> degree;  ///< A_v, only used for maps
  bool operator==(const Vertex&) const = default;
};

/// Unordered vertex pair, stored with a <= b. a == b is a loop.
struct Edge {
  int a = 0, b = 0;
  bool operator==(const Edge&) const = default;
};

/**
 * Combinatorial type of a nodal marked curve or map.
 *
 * flags[i] is the vertex carrying the marked point with order i+1, so the
 * ordering is a bijection onto {1..k} by construction. Unordered marked points
 * live in a separate list.
 */
struct LabeledDualGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<int> flags;
  std::vector<int> unordered_flags;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_flags() const { return static_cast<int>(flags.size()); }
  bool has_degrees() const;

  int add_vertex(int genus, std::optional<long long> degree = std::nullopt);
  void add_edge(int a, int b);
  void add_flag(int v) { flags.push_back(v); }

  bool operator==(const LabeledDualGraph&) const = default;
};

enum class Mode { Curve, Map };

/// Throws InvalidInput if indices are out of range, genera negative or the graph disconnected.
void validate(const LabeledDualGraph& g);
bool is_connected(const LabeledDualGraph& g);

/// Number of special points at v: flags plus edge ends, loops counted twice.
int special_points(const LabeledDualGraph& g, int v);

int genus(const LabeledDualGraph& g);
bool is_stable(const LabeledDualGraph& g, Mode mode = Mode::Curve);

/// Collapses unstable genus-0 components. In the range 2g+k < 3 returns the
/// single-vertex point graph carrying the genus and all flags.
LabeledDualGraph stabilize(const LabeledDualGraph& g);

/// Removes the flags with the given 1-based orders, stabilizes and relabels.
LabeledDualGraph forget_points(const LabeledDualGraph& g, const std::vector<int>& orders);

/**
 * Data of a degeneration Gamma' -> Gamma.
 *
 * vertex_map sends vertices of the source onto vertices of the target,
 * edge_injection sends each target edge to a source edge. Source edges not in
 * the image are the cut edges. Flags keep their order.
 */
struct CuttingData {
  LabeledDualGraph source;
  std::vector<int> vertex_map;
  std::vector<int> edge_injection;
};

struct DegenerationInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Validates cut against target and returns its source graph.
LabeledDualGraph degenerate(const LabeledDualGraph& target, const CuttingData& cut);

/// Contracts the given source edges; the inverse of degenerate.
LabeledDualGraph contract(const LabeledDualGraph& g, const std::vector<int>& edges);

/// Canonical encoding up to isomorphism fixing every ordered flag.
std::vector<long long> canonical_form(const LabeledDualGraph& g);
bool isomorphic(const LabeledDualGraph& a, const LabeledDualGraph& b);

/// Permutation of half-edges; half-edge 2e is the a-end of edge e, 2e+1 the b-end.
using HalfEdgePerm = std::vector<int>;

struct AutomorphismGroup {
  long long order = 1;
  std::vector<HalfEdgePerm> generators;
};

AutomorphismGroup aut_graph(const LabeledDualGraph& g);

/// Stable graphs of genus g with k ordered flags and at most max_vertices vertices,
/// sorted by canonical form. Map mode spreads degree_budget over the vertices.
std::vector<LabeledDualGraph> enumerate_strata(int g, int k, int max_vertices,
                                               std::optional<long long> degree_budget = std::nullopt,
                                               Mode mode = Mode::Curve);

/// 2((n-3)(1-g) + c1A + k)
long long virtual_dim(long long n, long long g, long long k, long long c1A);

/// 2(c1 + n(1-g))
long long riemann_roch_index(long long n, long long g, long long c1);

}  // namespace orbivfc::graph
