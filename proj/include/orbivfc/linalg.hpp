#pragma once

#include "orbivfc/rational.hpp"

#include <optional>
#include <utility>

namespace orbivfc::linalg {

/// Row echelon data from exact Gaussian elimination.
template <typename Scalar>
struct Echelon {
  MatrixX<Scalar> reduced;   ///< reduced row echelon form
  std::vector<int> pivots;   ///< pivot column per nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Reduced row echelon form over an exact field. No tolerances anywhere.
template <typename Derived>
Echelon<typename Derived::Scalar> echelon(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> a = m;
  Echelon<Scalar> out;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < a.rows(); ++r) {
      if (a(r, col) != 0) { piv = r; break; }
    }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(row));
    Scalar inv = Scalar(1) / a(row, col);
    a.row(row) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r != row && a(r, col) != 0) {
        Scalar f = a(r, col);
        a.row(r) -= f * a.row(row);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <typename Derived>
int rank(const Eigen::MatrixBase<Derived>& m) {
  return echelon(m).rank();
}

/// Determinant by exact elimination.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  MatrixX<Scalar> a = m;
  Scalar det = 1;
  const int n = static_cast<int>(a.rows());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a(r, c) != 0) { piv = r; break; }
    if (piv < 0) return Scalar(0);
    if (piv != c) { a.row(piv).swap(a.row(c)); det = -det; }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Scalar f = a(r, c) / a(c, c);
      a.row(r) -= f * a.row(c);
    }
  }
  return det;
}

/// One solution of A x = b, or nothing when the system is inconsistent.
template <typename DerivedA, typename DerivedB>
std::optional<VectorX<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                       const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  MatrixX<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  auto e = echelon(aug);
  VectorX<Scalar> x = VectorX<Scalar>::Zero(a.cols());
  for (int i = 0; i < e.rank(); ++i) {
    int c = e.pivots[i];
    if (c == a.cols()) return std::nullopt;
    x(c) = e.reduced(i, a.cols());
  }
  return x;
}

/// Basis of the null space as columns.
template <typename Derived>
MatrixX<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  auto e = echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  MatrixX<Scalar> k = MatrixX<Scalar>::Zero(m.cols(), static_cast<int>(free_cols.size()));
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    int f = free_cols[j];
    k(f, j) = 1;
    for (int i = 0; i < e.rank(); ++i) k(e.pivots[i], j) = -e.reduced(i, f);
  }
  return k;
}

/// Columns of the identity that extend the column space of m to the full space.
template <typename Derived>
MatrixX<typename Derived::Scalar> complement(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(m.rows());
  MatrixX<Scalar> acc = m;
  int r = rank(acc);
  std::vector<int> picked;
  for (int i = 0; i < n && r < n; ++i) {
    MatrixX<Scalar> trial(n, acc.cols() + 1);
    trial << acc, MatrixX<Scalar>::Identity(n, n).col(i);
    int r2 = rank(trial);
    if (r2 > r) { acc = trial; r = r2; picked.push_back(i); }
  }
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(n, static_cast<int>(picked.size()));
  for (std::size_t j = 0; j < picked.size(); ++j) out(picked[j], j) = 1;
  return out;
}

}  // namespace orbivfc::linalg
