#include "orbivfc/chain.hpp"

#include "orbivfc/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace orbivfc {

PointKey project_point(const EquivariantBundle& e, int chart, const Simplex& s, const std::vector<Rational>& lambda) {
  std::vector<std::pair<int, Rational>> pts;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (lambda[i] != 0) pts.push_back({e.charts[chart].projection[s[i]], lambda[i]});
  std::sort(pts.begin(), pts.end());
  PointKey k;
  for (auto& [x, l] : pts) {
    k.carrier.push_back(x);
    k.bary.push_back(l);
  }
  return k;
}

void RationalChain::add(std::vector<PointKey> vertices, const Rational& coeff) {
  if (static_cast<int>(vertices.size()) != degree_ + 1) throw InvalidInput("simplex degree does not match chain degree");
  if (coeff == 0) return;
  std::vector<int> order(vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vertices[a] < vertices[b]; });
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  int sgn = permutation_sign(rank);
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) return;
  auto& slot = terms_[vertices];
  slot += sgn * coeff;
  if (slot == 0) terms_.erase(vertices);
}

RationalChain RationalChain::boundary() const {
  RationalChain out(std::max(degree_ - 1, 0));
  if (degree_ == 0) return out;
  for (const auto& [verts, c] : terms_) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      auto face = verts;
      face.erase(face.begin() + static_cast<long>(i));
      out.add(face, i % 2 == 0 ? c : Rational(-c));
    }
  }
  return out;
}

Rational RationalChain::total_mass() const {
  Rational m = 0;
  for (const auto& [v, c] : terms_) m += c;
  return m;
}

RationalChain& RationalChain::operator+=(const RationalChain& o) {
  if (o.degree_ != degree_ && !o.is_zero()) throw InvalidInput("adding chains of different degree");
  for (const auto& [v, c] : o.terms_) add(v, c);
  return *this;
}

std::vector<ZeroCell> zero_cells(const EquivariantBundle& e, int chart, const FieldValues& values, int s) {
  const auto& b = e.charts[chart].bundle;
  const auto& k = b.action.complex;
  const int n = k.dimension();
  const int r = b.rank;
  const Simplex& verts = k.simplex(s);
  const bool top = k.dim_of(s) == n && k.cofaces(s).empty();
  std::vector<ZeroCell> out;
  if (r > n) return out;
  if (r != 0 && r != n && r != n - 1)
    throw UnsupportedDimension("zero sets of dimension " + std::to_string(n - r) + " need a supplied triangulation");
  auto unit = [&](int v) { return project_point(e, chart, {v}, {Rational(1)}); };
  const int eps = k.orientation(s) * b.fiber_sign;
  if (r == 0) {
    if (!top) return out;
    ZeroCell c;
    for (int v : verts) c.vertices.push_back(unit(v));
    c.sign = eps;
    out.push_back(std::move(c));
    return out;
  }
  std::vector<VectorQ> vals;
  for (int v : verts) vals.push_back(values[v]);
  if (r == n) {
    if (verts.size() == 1) {
      auto it = b.defects.find(verts[0]);
      if (it != b.defects.end() && !values[verts[0]].isZero()) out.push_back({{unit(verts[0])}, it->second});
      return out;
    }
    if (!top) return out;
    auto lambda = pl::unique_zero(vals);
    if (!lambda) return out;
    if (std::any_of(lambda->begin(), lambda->end(), [](const Rational& q) { return q < 0; })) return out;
    if (std::any_of(lambda->begin(), lambda->end(), [](const Rational& q) { return q == 0; }))
      throw InternalError("zero on the boundary of a top simplex; section is not transversal");
    int idx = sign(linalg::determinant(pl::linear_part(vals)));
    if (idx == 0) throw InternalError("degenerate zero; section is not transversal");
    out.push_back({{project_point(e, chart, verts, *lambda)}, idx * eps});
    return out;
  }
  // r == n - 1: a segment crossing the top simplex between two facets.
  if (!top) return out;
  std::vector<std::vector<Rational>> ends;
  for (std::size_t drop = 0; drop < verts.size(); ++drop) {
    std::vector<VectorQ> fv;
    std::vector<int> idx;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (i != drop) { fv.push_back(vals[i]); idx.push_back(static_cast<int>(i)); }
    auto mu = pl::unique_zero(fv);
    if (!mu || std::any_of(mu->begin(), mu->end(), [](const Rational& q) { return q < 0; })) continue;
    if (std::any_of(mu->begin(), mu->end(), [](const Rational& q) { return q == 0; }))
      throw InternalError("zero set meets a codimension-two face; section is not transversal");
    std::vector<Rational> lambda(verts.size(), Rational(0));
    for (std::size_t i = 0; i < idx.size(); ++i) lambda[idx[i]] = (*mu)[i];
    ends.push_back(lambda);
  }
  if (ends.empty()) return out;
  if (ends.size() != 2) throw InternalError("zero set of a transversal branch meets a top simplex in " +
                                            std::to_string(ends.size()) + " facet points");
  MatrixQ a = pl::linear_part(vals);
  MatrixQ aat = a * a.transpose();
  MatrixQ normal(n, r);
  for (int c = 0; c < r; ++c) {
    auto col = linalg::solve(aat, MatrixQ::Identity(r, r).col(c));
    if (!col) throw InternalError("linear part lost rank on a segment");
    normal.col(c) = a.transpose() * *col;
  }
  MatrixQ frame(n, n);
  frame.leftCols(r) = normal;
  for (int i = 0; i < n; ++i) frame(i, r) = ends[1][i + 1] - ends[0][i + 1];
  int orient = sign(linalg::determinant(frame)) * eps;
  if (orient == 0) throw InternalError("segment tangent is not transverse to its normal");
  ZeroCell c;
  c.vertices = {project_point(e, chart, verts, ends[0]), project_point(e, chart, verts, ends[1])};
  if (orient < 0) std::swap(c.vertices[0], c.vertices[1]);
  c.sign = 1;
  out.push_back(std::move(c));
  return out;
}

}  // namespace orbivfc
