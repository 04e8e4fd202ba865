#pragma once

#include "orbivfc/bundle.hpp"
#include "orbivfc/multisection.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace orbivfc {

/// Point of |X|: open carrier simplex of the quotient plus positive barycentric coordinates.
struct PointKey {
  Simplex carrier;
  std::vector<Rational> bary;

  bool operator<(const PointKey& o) const {
    if (carrier != o.carrier) return carrier < o.carrier;
    return bary < o.bary;
  }
  bool operator==(const PointKey& o) const { return carrier == o.carrier && bary == o.bary; }
};

/// Point of chart simplex s with barycentric coordinates lambda, pushed to the quotient.
PointKey project_point(const EquivariantBundle& e, int chart, const Simplex& s, const std::vector<Rational>& lambda);

/**
 * Formal rational combination of oriented simplices spanned by points of |X|.
 * Terms are stored with sorted vertices; orientation is folded into the sign of
 * the coefficient.
 */
class RationalChain {
 public:
  explicit RationalChain(int degree = 0) : degree_(degree) {}

  int degree() const { return degree_; }
  void add(std::vector<PointKey> vertices, const Rational& coeff);
  const std::map<std::vector<PointKey>, Rational>& terms() const { return terms_; }
  RationalChain boundary() const;
  bool is_zero() const { return terms_.empty(); }
  Rational total_mass() const;
  RationalChain& operator+=(const RationalChain& o);
  bool operator==(const RationalChain& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

 private:
  int degree_;
  std::map<std::vector<PointKey>, Rational> terms_;
};

struct UnsupportedDimension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Oriented piece of a branch's zero set inside one carrier simplex.
struct ZeroCell {
  std::vector<PointKey> vertices;  ///< oriented order
  int sign = 1;
};

/**
 * Zero cells of one branch with the given values whose carrier is chart simplex s.
 *
 * Points lie in open top simplices (rank = dim) or at defect vertices, segments
 * in top simplices (rank = dim - 1), whole top simplices for rank 0. Other
 * codimensions raise UnsupportedDimension. Orientation: index sign at points,
 * normal-first at segments, base orientation for top simplices.
 */
std::vector<ZeroCell> zero_cells(const EquivariantBundle& e, int chart, const FieldValues& values, int s);

}  // namespace orbivfc
