#pragma once

#include "orbivfc/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace orbivfc {

/// Sorted vertex tuple.
using Simplex = std::vector<int>;

/**
 * Finite abstract simplicial complex on vertices 0..n-1.
 *
 * Simplices are stored sorted by dimension and then lexicographically, so
 * indices are stable for a given set of simplices. Each maximal simplex
 * carries an orientation sign relative to its sorted vertex order.
 */
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Closes the given simplices under faces. signs[i] belongs to tops[i]; empty means all +1.
  static SimplicialComplex from_simplices(std::vector<Simplex> tops, std::vector<int> signs = {});

  int dimension() const { return dim_; }
  int num_vertices() const { return num_vertices_; }
  int size() const { return static_cast<int>(simplices_.size()); }
  const Simplex& simplex(int i) const { return simplices_[i]; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  int dim_of(int i) const { return static_cast<int>(simplices_[i].size()) - 1; }

  std::optional<int> find(const Simplex& s) const;
  int index(const Simplex& s) const;  ///< throws when s is missing
  int vertex_index(int v) const { return v; }

  /// Indices of maximal simplices.
  const std::vector<int>& maximal() const { return maximal_; }
  bool is_pure() const;

  /// Orientation sign of a maximal simplex, 0 for non-maximal ones.
  int orientation(int i) const { return orientation_[i]; }
  bool oriented() const { return oriented_; }

  /// Codimension-one faces and cofaces by index.
  const std::vector<int>& faces(int i) const { return faces_[i]; }
  const std::vector<int>& cofaces(int i) const { return cofaces_[i]; }

  /// All simplices containing simplex i, including i.
  std::vector<int> star(int i) const;
  /// Vertices of the closed star of simplex i, sorted.
  std::vector<int> star_vertices(int i) const;

  /// True when every codimension-one face of a pure complex sees opposite induced signs.
  bool orientation_consistent() const;
  /// Every codimension-one face lies in at most two maximal simplices.
  bool is_pseudomanifold() const;

  std::vector<int> connected_components() const;  ///< component id per vertex

  long long euler_characteristic() const;

  bool operator==(const SimplicialComplex& o) const {
    return simplices_ == o.simplices_ && orientation_ == o.orientation_;
  }

 private:
  void build(const std::vector<int>& top_signs, const std::vector<Simplex>& tops);

  int dim_ = -1;
  int num_vertices_ = 0;
  bool oriented_ = false;
  std::vector<Simplex> simplices_;
  std::map<Simplex, int> lookup_;
  std::vector<int> maximal_;
  std::vector<int> orientation_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::vector<int>> cofaces_;
};

long long euler_characteristic(const SimplicialComplex& k);

/// Sign of the permutation that sorts seq (entries distinct).
int permutation_sign(std::vector<int> seq);

/// Induced boundary sign of the face obtained by dropping position i of a sorted simplex.
inline int face_sign(int i) { return i % 2 == 0 ? 1 : -1; }

}  // namespace orbivfc
