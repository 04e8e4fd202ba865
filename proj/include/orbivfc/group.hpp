#pragma once

#include <string>
#include <vector>

namespace orbivfc {

/**
 * Finite group given by its multiplication table on elements 0..n-1.
 * mul(a, b) is the product ab.
 */
class FiniteGroup {
 public:
  FiniteGroup() : table_{{0}}, inverse_{0} {}

  /// Validates closure, associativity, identity and inverses.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  /// Group generated by permutations of 0..m-1; element 0 is the identity.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                       std::vector<std::vector<int>>* elements = nullptr);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<int>& generators() const { return generators_; }

  bool is_subgroup(const std::vector<int>& elems) const;
  /// Smallest subgroup containing elems, sorted.
  std::vector<int> closure(const std::vector<int>& elems) const;
  int element_order(int a) const;

  bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  int identity_ = 0;
};

}  // namespace orbivfc
