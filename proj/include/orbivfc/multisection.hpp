#pragma once

#include "orbivfc/bundle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbivfc {

/// One fiber vector per chart vertex.
using FieldValues = std::vector<VectorQ>;

struct Branch {
  long long multiplicity = 1;
  FieldValues values;
};

/// PL section given chart by chart.
struct Section {
  std::vector<FieldValues> charts;
};

/**
 * Lifted multisection: an unordered branch list per chart with multiplicities.
 * The branch decomposition itself is the chosen lifting.
 */
struct Multisection {
  std::vector<std::vector<Branch>> charts;

  /// Total multiplicity of chart c, the l of the weight ratio.
  long long total(int c) const;
};

/// (g.s)(x) = rho(g) s(g^-1 x).
FieldValues act(const ChartBundle& b, int g, const FieldValues& s);

std::vector<Branch> enhance(const ChartBundle& b, const FieldValues& s);
Multisection enhance(const EquivariantBundle& e, const Section& s);
Multisection zero_multisection(const EquivariantBundle& e);

/// Merges identical branches, sorts them and divides multiplicities by their gcd per chart.
Multisection normalize(Multisection m);

/// Branchwise sum {v_i + u_j} with product multiplicities.
Multisection sum(const Multisection& a, const Multisection& b);

/// Multiplies every multiplicity by k.
Multisection scale(Multisection m, long long k);

enum class Equivalence {
  Pointwise,  ///< equal weighted branch multisets over every simplex
  Lifted,     ///< equal weighted multisets of global branches
};

bool equivalent(const EquivariantBundle& e, const Multisection& a, const Multisection& b,
                Equivalence mode = Equivalence::Lifted);

/// Partition of branch indices by germ at simplex s (values on the closed star), classes sorted.
std::vector<std::vector<int>> germ_classes(const SimplicialComplex& k, const std::vector<Branch>& branches, int s);
int val(const SimplicialComplex& k, const std::vector<Branch>& branches, int s);

/// Checks sizes, multiplicities, G-invariance per chart and agreement on chart overlaps.
void validate(const EquivariantBundle& e, const Multisection& m);

struct TransversalityFailure {
  int chart = 0;
  int branch = 0;
  int simplex = 0;
  std::string reason;
};

struct TransversalityReport {
  bool ok = true;
  std::vector<TransversalityFailure> failures;
};

/**
 * PL transversality: on every simplex whose closure meets the zero set of a
 * branch, the affine map has linear part of rank equal to the fiber rank.
 * Defect vertices additionally need nonzero frame coordinates.
 */
TransversalityReport is_transversal(const EquivariantBundle& e, const Multisection& m);

namespace pl {

/// Linear part of the affine map with the given vertex values: columns vals[k] - vals[0].
MatrixQ linear_part(const std::vector<VectorQ>& vals);

/// Barycentric coordinates of the zero when the system has exactly one solution.
std::optional<std::vector<Rational>> unique_zero(const std::vector<VectorQ>& vals);

/// Whether the affine map vanishes somewhere on the closed simplex.
bool zero_meets(const std::vector<VectorQ>& vals);

}  // namespace pl

}  // namespace orbivfc
