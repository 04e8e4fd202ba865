#include "orbivfc/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace orbivfc::io {

ParseError::ParseError(int l, int c, const std::string& message)
    : InvalidInput("parse error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + message), line(l), column(c) {}

namespace {

struct Token {
  std::string text;
  int line = 1;
  int col = 1;
};
using Line = std::vector<Token>;

[[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.col, msg); }

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::vector<std::string> raw;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string l(text.substr(start, end - start));
      if (!l.empty() && l.back() == '\r') l.pop_back();
      raw.push_back(l);
      start = end + 1;
    }
    auto first = raw.front();
    while (!first.empty() && (first.back() == ' ' || first.back() == '\t')) first.pop_back();
    if (first.rfind("#orbivfc", 0) != 0) throw ParseError(1, 1, "missing '#orbivfc v1' header");
    if (first != kHeader) throw ParseError(1, 10, "unsupported format version");
    for (std::size_t n = 1; n < raw.size(); ++n) {
      Line toks;
      const std::string& l = raw[n];
      std::size_t i = 0;
      while (i < l.size()) {
        if (l[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(l[i]))) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < l.size() && !std::isspace(static_cast<unsigned char>(l[j])) && l[j] != '#') ++j;
        std::string word = l.substr(i, j - i);
        if (word != ":") toks.push_back({word, static_cast<int>(n + 1), static_cast<int>(i + 1)});
        i = j;
      }
      if (!toks.empty()) lines_.push_back(std::move(toks));
    }
    eof_ = {"", static_cast<int>(raw.size()) + (raw.back().empty() ? 0 : 1), 1};
  }
  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() {
    if (done()) fail(eof_, "unexpected end of file");
    return lines_[pos_++];
  }
  const Token& eof() const { return eof_; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  Token eof_;
};

long long to_ll(const Token& t) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(t.text, &used);
    if (used != t.text.size()) fail(t, "expected an integer, got '" + t.text + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(t, "expected an integer, got '" + t.text + "'");
  }
}

int to_int(const Token& t) { return static_cast<int>(to_ll(t)); }

Rational to_rat(const Token& t) {
  try {
    return parse_rational(t.text);
  } catch (const std::exception&) {
    fail(t, "expected a rational, got '" + t.text + "'");
  }
}

/// Value of a key=value token.
std::string keyed(const Token& t, const std::string& key) {
  if (t.text.rfind(key + "=", 0) != 0) fail(t, "expected " + key + "=...");
  return t.text.substr(key.size() + 1);
}

int keyed_int(const Token& t, const std::string& key) {
  Token v{keyed(t, key), t.line, static_cast<int>(t.col + key.size() + 1)};
  return to_int(v);
}

void arity(const Line& l, std::size_t lo, std::size_t hi) {
  if (l.size() < lo) fail(l.back(), "too few fields for '" + l[0].text + "'");
  if (l.size() > hi) fail(l[hi], "unexpected field '" + l[hi].text + "'");
}

void expect_keyword(const Line& l, const std::string& kw) {
  if (l[0].text != kw) fail(l[0], "expected '" + kw + "', got '" + l[0].text + "'");
}

std::vector<int> ints(const Line& l, std::size_t from) {
  std::vector<int> out;
  for (std::size_t i = from; i < l.size(); ++i) out.push_back(to_int(l[i]));
  return out;
}

std::vector<Rational> rats(const Line& l, std::size_t from) {
  std::vector<Rational> out;
  for (std::size_t i = from; i < l.size(); ++i) out.push_back(to_rat(l[i]));
  return out;
}

/// simplex v0 v1 ... [sign=-1]; returns sorted vertices and the sign relative to sorted order.
std::pair<Simplex, int> simplex_line(const Line& l) {
  Simplex s;
  int sign = 1;
  for (std::size_t i = 1; i < l.size(); ++i) {
    if (l[i].text.rfind("sign=", 0) == 0) {
      sign = keyed_int(l[i], "sign");
      if (sign != 1 && sign != -1) fail(l[i], "sign must be 1 or -1");
    } else {
      int v = to_int(l[i]);
      if (v < 0) fail(l[i], "negative vertex");
      s.push_back(v);
    }
  }
  if (s.empty()) fail(l[0], "empty simplex");
  std::set<int> uniq(s.begin(), s.end());
  if (uniq.size() != s.size()) fail(l[0], "repeated vertex");
  sign *= permutation_sign(s);
  std::sort(s.begin(), s.end());
  return {s, sign};
}

Simplex vertex_set(const Line& l, std::size_t from) {
  Simplex s = ints(l, from);
  if (s.empty()) fail(l[0], "expected vertices");
  std::sort(s.begin(), s.end());
  return s;
}

int find_simplex(const SimplicialComplex& k, const Simplex& s, const Token& at) {
  auto i = k.find(s);
  if (!i) fail(at, "no such simplex");
  return *i;
}

MatrixQ matrix_from(const std::vector<Rational>& v, int rows, int cols, const Token& at) {
  if (static_cast<int>(v.size()) != rows * cols)
    fail(at, "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(v.size()));
  MatrixQ m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  return m;
}

VectorQ vector_from(const std::vector<Rational>& v) {
  VectorQ out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

FiniteGroup group_line(Reader& r, const Line& l) {
  arity(l, 2, 3);
  const std::string& kind = l[1].text;
  if (kind == "trivial") return FiniteGroup::trivial();
  if (l.size() < 3) fail(l[1], "group needs an order");
  const int n = to_int(l[2]);
  if (n < 1) fail(l[2], "group order must be positive");
  if (kind == "cyclic") return FiniteGroup::cyclic(n);
  if (kind != "table") fail(l[1], "unknown group kind '" + kind + "'");
  std::vector<std::vector<int>> table;
  for (int i = 0; i < n; ++i) {
    const Line& row = r.next();
    expect_keyword(row, "row");
    if (static_cast<int>(row.size()) != n + 1) fail(row[0], "row needs " + std::to_string(n) + " entries");
    table.push_back(ints(row, 1));
  }
  try {
    return FiniteGroup::from_table(table);
  } catch (const InvalidInput& e) {
    fail(l[0], e.what());
  }
}

/// Body of a chart block: group, complex, action and fiber data, up to 'end'.
struct ChartBlock {
  Token start;
  FiniteGroup group;
  bool has_group = false;
  std::vector<Simplex> tops;
  std::vector<int> signs;
  std::map<int, std::pair<Token, std::vector<int>>> perms;
  std::map<int, std::pair<Token, std::vector<Rational>>> rho;
  std::map<int, int> defects;
  int fiber_sign = 1;
  std::optional<std::vector<int>> projection;
  std::vector<Simplex> owned;
  std::map<int, std::pair<Token, std::vector<Rational>>> section;
  std::map<int, int> footprint;
  std::vector<std::pair<Token, Simplex>> excluded;
};

ChartBlock chart_block(Reader& r, const Token& start, const std::set<std::string>& allowed) {
  ChartBlock b;
  b.start = start;
  for (;;) {
    const Line& l = r.next();
    const std::string& kw = l[0].text;
    if (kw == "end") {
      arity(l, 1, 1);
      break;
    }
    if (!allowed.count(kw)) fail(l[0], "unexpected '" + kw + "' in block");
    if (kw == "group") {
      if (b.has_group) fail(l[0], "duplicate group");
      b.group = group_line(r, l);
      b.has_group = true;
    } else if (kw == "simplex") {
      auto [s, sign] = simplex_line(l);
      b.tops.push_back(s);
      b.signs.push_back(sign);
    } else if (kw == "perm" || kw == "rho" || kw == "section") {
      arity(l, 2, 1 << 20);
      const int g = to_int(l[1]);
      if (kw == "perm") {
        if (!b.perms.emplace(g, std::make_pair(l[0], ints(l, 2))).second) fail(l[1], "duplicate perm");
      } else if (kw == "rho") {
        if (!b.rho.emplace(g, std::make_pair(l[0], rats(l, 2))).second) fail(l[1], "duplicate rho");
      } else if (!b.section.emplace(g, std::make_pair(l[0], rats(l, 2))).second) {
        fail(l[1], "duplicate section value");
      }
    } else if (kw == "defect") {
      arity(l, 3, 3);
      b.defects[to_int(l[1])] = to_int(l[2]);
    } else if (kw == "fiber-sign") {
      arity(l, 2, 2);
      b.fiber_sign = to_int(l[1]);
      if (b.fiber_sign != 1 && b.fiber_sign != -1) fail(l[1], "fiber-sign must be 1 or -1");
    } else if (kw == "projection") {
      b.projection = ints(l, 1);
    } else if (kw == "owned") {
      b.owned.push_back(vertex_set(l, 1));
    } else if (kw == "footprint") {
      arity(l, 3, 3);
      b.footprint[to_int(l[1])] = to_int(l[2]);
    } else if (kw == "exclude") {
      b.excluded.push_back({l[0], vertex_set(l, 1)});
    }
  }
  if (!b.has_group) b.group = FiniteGroup::trivial();
  if (b.tops.empty()) fail(start, "block has no simplices");
  return b;
}

GroupAction build_action(const ChartBlock& b) {
  GroupAction a;
  a.group = b.group;
  a.complex = SimplicialComplex::from_simplices(b.tops, b.signs);
  const int nv = a.complex.num_vertices();
  for (int g = 0; g < a.group.order(); ++g) {
    auto it = b.perms.find(g);
    if (it == b.perms.end()) {
      if (g != a.group.identity()) fail(b.start, "missing perm for group element " + std::to_string(g));
      std::vector<int> id(nv);
      for (int v = 0; v < nv; ++v) id[v] = v;
      a.perm.push_back(id);
      continue;
    }
    if (static_cast<int>(it->second.second.size()) != nv)
      fail(it->second.first, "perm needs " + std::to_string(nv) + " entries");
    a.perm.push_back(it->second.second);
  }
  for (auto& [g, p] : b.perms)
    if (g < 0 || g >= a.group.order()) fail(p.first, "perm for a missing group element");
  try {
    validate(a);
  } catch (const InvalidInput& e) {
    fail(b.start, e.what());
  }
  return a;
}

std::vector<MatrixQ> build_rho(const ChartBlock& b, const FiniteGroup& g, int rank) {
  if (b.rho.empty()) return trivial_rep(g, rank);
  std::vector<MatrixQ> out;
  for (int x = 0; x < g.order(); ++x) {
    auto it = b.rho.find(x);
    if (it == b.rho.end()) {
      if (x != g.identity()) fail(b.start, "missing rho for group element " + std::to_string(x));
      out.push_back(MatrixQ::Identity(rank, rank));
      continue;
    }
    out.push_back(matrix_from(it->second.second, rank, rank, it->second.first));
  }
  for (auto& [x, p] : b.rho)
    if (x < 0 || x >= g.order()) fail(p.first, "rho for a missing group element");
  return out;
}

std::vector<bool> open_from(const SimplicialComplex& k, const std::vector<std::pair<Token, Simplex>>& excluded) {
  std::vector<bool> closed(k.size(), false);
  for (auto& [t, s] : excluded) closed[find_simplex(k, s, t)] = true;
  closed = closure(k, closed);
  std::vector<bool> open(k.size());
  for (int s = 0; s < k.size(); ++s) open[s] = !closed[s];
  return open;
}

// ---------- serialization helpers ----------

void put_group(std::ostream& os, const FiniteGroup& g, const std::string& indent) {
  if (g.order() == 1) {
    os << indent << "group trivial\n";
  } else if (g == FiniteGroup::cyclic(g.order())) {
    os << indent << "group cyclic " << g.order() << "\n";
  } else {
    os << indent << "group table " << g.order() << "\n";
    for (auto& row : g.table()) {
      os << indent << "row";
      for (int x : row) os << " " << x;
      os << "\n";
    }
  }
}

void put_simplices(std::ostream& os, const SimplicialComplex& k, const std::string& indent) {
  for (int s : k.maximal()) {
    os << indent << "simplex";
    for (int v : k.simplex(s)) os << " " << v;
    if (k.orientation(s) == -1) os << " sign=-1";
    os << "\n";
  }
}

void put_action(std::ostream& os, const GroupAction& a, const std::string& indent) {
  put_group(os, a.group, indent);
  put_simplices(os, a.complex, indent);
  for (int g = 0; g < a.group.order(); ++g) {
    if (g == a.group.identity()) continue;
    os << indent << "perm " << g << " :";
    for (int v : a.perm[g]) os << " " << v;
    os << "\n";
  }
}

void put_rats(std::ostream& os, const MatrixQ& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) os << " " << to_string(m(r, c));
}

void put_rho(std::ostream& os, const std::vector<MatrixQ>& rho, const FiniteGroup& g, int rank, const std::string& indent) {
  if (rank == 0) return;
  bool trivial = true;
  for (auto& m : rho) trivial = trivial && m == MatrixQ::Identity(rank, rank);
  if (trivial) return;
  for (int x = 0; x < g.order(); ++x) {
    if (x == g.identity()) continue;
    os << indent << "rho " << x << " :";
    put_rats(os, rho[x]);
    os << "\n";
  }
}

void put_excluded(std::ostream& os, const SimplicialComplex& k, const std::vector<bool>& open, const std::string& indent) {
  for (int s = 0; s < k.size(); ++s) {
    if (open[s]) continue;
    bool top = true;
    for (int c : k.cofaces(s)) top = top && open[c];
    if (!top) continue;
    os << indent << "exclude";
    for (int v : k.simplex(s)) os << " " << v;
    os << "\n";
  }
}

// ---------- typed parsers on an open reader ----------

graph::LabeledDualGraph graph_body(Reader& r, const Line& head) {
  arity(head, 1, 1);
  graph::LabeledDualGraph g;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string& kw = l[0].text;
    if (kw == "vertex") {
      arity(l, 2, 3);
      std::optional<long long> deg;
      if (l.size() == 3) deg = keyed_int(l[2], "degree");
      g.add_vertex(to_int(l[1]), deg);
    } else if (kw == "edge") {
      arity(l, 3, 3);
      g.add_edge(to_int(l[1]), to_int(l[2]));
    } else if (kw == "flag") {
      arity(l, 2, 2);
      g.add_flag(to_int(l[1]));
    } else if (kw == "unordered") {
      arity(l, 2, 2);
      g.unordered_flags.push_back(to_int(l[1]));
    } else {
      fail(l[0], "unexpected '" + kw + "' in graph");
    }
  }
  try {
    graph::validate(g);
  } catch (const InvalidInput& e) {
    fail(head[0], e.what());
  }
  return g;
}

SimplicialComplex complex_body(Reader& r, const Line& head) {
  arity(head, 1, 1);
  std::vector<Simplex> tops;
  std::vector<int> signs;
  while (!r.done()) {
    const Line& l = r.next();
    expect_keyword(l, "simplex");
    auto [s, sign] = simplex_line(l);
    tops.push_back(s);
    signs.push_back(sign);
  }
  return SimplicialComplex::from_simplices(tops, signs);
}

EquivariantBundle bundle_body(Reader& r, const Line& head) {
  arity(head, 2, 2);
  const int rank = keyed_int(head[1], "rank");
  if (rank < 0) fail(head[1], "negative rank");
  std::optional<SimplicialComplex> quotient;
  std::vector<ChartBlock> blocks;
  std::vector<std::pair<Line, std::vector<Rational>>> transitions;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string& kw = l[0].text;
    if (kw == "quotient") {
      arity(l, 1, 1);
      if (quotient) fail(l[0], "duplicate quotient");
      std::vector<Simplex> tops;
      std::vector<int> signs;
      for (;;) {
        const Line& q = r.next();
        if (q[0].text == "end") break;
        expect_keyword(q, "simplex");
        auto [sx, sign] = simplex_line(q);
        tops.push_back(sx);
        signs.push_back(sign);
      }
      quotient = SimplicialComplex::from_simplices(tops, signs);
    } else if (kw == "chart") {
      arity(l, 1, 1);
      blocks.push_back(chart_block(r, l[0], {"group", "simplex", "perm", "rho", "defect", "fiber-sign", "projection", "owned"}));
    } else if (kw == "transition") {
      arity(l, 3, 1 << 20);
      transitions.push_back({l, rats(l, 3)});
    } else {
      fail(l[0], "unexpected '" + kw + "' in bundle");
    }
  }
  if (blocks.empty()) fail(r.eof(), "bundle has no charts");
  std::vector<ChartBundle> charts;
  for (auto& b : blocks) {
    ChartBundle c;
    c.action = build_action(b);
    c.rank = rank;
    c.rho = build_rho(b, c.action.group, rank);
    c.defects = b.defects;
    c.fiber_sign = b.fiber_sign;
    charts.push_back(std::move(c));
  }
  EquivariantBundle e;
  if (!quotient) {
    if (blocks.size() != 1 || blocks[0].projection) fail(head[0], "multi-chart bundles need a quotient block");
    try {
      e = single_chart_bundle(charts[0]);
    } catch (const InvalidInput& ex) {
      fail(head[0], ex.what());
    }
  } else {
    e.quotient = *quotient;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      AtlasChart a;
      a.bundle = charts[i];
      if (!blocks[i].projection) fail(blocks[i].start, "chart needs a projection");
      a.projection = *blocks[i].projection;
      if (static_cast<int>(a.projection.size()) != a.bundle.num_vertices())
        fail(blocks[i].start, "projection needs one entry per chart vertex");
      a.owned = blocks[i].owned;
      e.charts.push_back(std::move(a));
    }
    for (auto& [l, v] : transitions) {
      const int i = to_int(l[1]), j = to_int(l[2]);
      if (i < 0 || j < 0 || i >= e.num_charts() || j >= e.num_charts() || i >= j) fail(l[1], "bad chart pair");
      e.transitions[{i, j}] = matrix_from(v, rank, rank, l[0]);
    }
  }
  try {
    validate(e);
  } catch (const InvalidInput& ex) {
    fail(head[0], ex.what());
  }
  return e;
}

Multisection multisection_body(Reader& r, const Line& head) {
  arity(head, 1, 1);
  Multisection m;
  std::optional<int> rank;
  struct Pending {
    Token at;
    std::map<int, VectorQ> values;
  };
  std::vector<std::vector<std::pair<long long, Pending>>> charts;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string& kw = l[0].text;
    if (kw == "chart") {
      arity(l, 2, 2);
      if (to_int(l[1]) != static_cast<int>(charts.size())) fail(l[1], "charts must be numbered in order from 0");
      charts.emplace_back();
    } else if (kw == "branch") {
      arity(l, 2, 2);
      if (charts.empty()) fail(l[0], "branch outside a chart");
      const long long mult = to_ll(l[1]);
      if (mult < 1) fail(l[1], "multiplicity must be positive");
      charts.back().push_back({mult, Pending{l[0], {}}});
    } else if (kw == "at") {
      arity(l, 2, 1 << 20);
      if (charts.empty() || charts.back().empty()) fail(l[0], "value outside a branch");
      const int v = to_int(l[1]);
      auto vals = rats(l, 2);
      if (!rank) rank = static_cast<int>(vals.size());
      if (static_cast<int>(vals.size()) != *rank) fail(l[0], "inconsistent fiber rank");
      if (!charts.back().back().second.values.emplace(v, vector_from(vals)).second) fail(l[1], "duplicate vertex");
    } else {
      fail(l[0], "unexpected '" + kw + "' in multisection");
    }
  }
  for (auto& c : charts) {
    std::vector<Branch> branches;
    for (auto& [mult, p] : c) {
      Branch b;
      b.multiplicity = mult;
      int expect = 0;
      for (auto& [v, val] : p.values) {
        if (v != expect) fail(p.at, "branch misses vertex " + std::to_string(expect));
        b.values.push_back(val);
        ++expect;
      }
      branches.push_back(std::move(b));
    }
    m.charts.push_back(std::move(branches));
  }
  return m;
}

DGS dgs_body(Reader& r, const Line& head) {
  arity(head, 2, 2);
  DGS d;
  d.dimension = keyed_int(head[1], "dim");
  bool have_space = false;
  std::vector<std::pair<Token, std::pair<int, Simplex>>> mlevels;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string& kw = l[0].text;
    if (kw == "space") {
      arity(l, 1, 1);
      if (have_space) fail(l[0], "duplicate space");
      have_space = true;
      std::vector<Simplex> tops;
      std::vector<int> signs;
      for (;;) {
        const Line& q = r.next();
        if (q[0].text == "end") break;
        if (q[0].text == "mlevel") {
          arity(q, 3, 1 << 20);
          mlevels.push_back({q[0], {to_int(q[1]), vertex_set(q, 2)}});
          continue;
        }
        expect_keyword(q, "simplex");
        auto [sx, sign] = simplex_line(q);
        tops.push_back(sx);
        signs.push_back(sign);
      }
      d.space = SimplicialComplex::from_simplices(tops, signs);
      d.space_level.assign(d.space.size(), 0);
      for (auto& [t, ls] : mlevels) d.space_level[find_simplex(d.space, ls.second, t)] = ls.first;
    } else if (kw == "level") {
      arity(l, 4, 4);
      if (!have_space) fail(l[0], "levels must follow the space block");
      if (!d.embeddings.empty()) fail(l[0], "levels must precede embeddings");
      DgsLevel lv;
      lv.index = to_int(l[1]);
      const int rank = keyed_int(l[2], "rank");
      const int dim = keyed_int(l[3], "dim");
      auto b = chart_block(r, l[0], {"group", "simplex", "perm", "rho", "section", "footprint", "exclude"});
      auto& c = lv.chart;
      c.bundle.action = build_action(b);
      c.bundle.rank = rank;
      c.bundle.rho = build_rho(b, c.bundle.action.group, rank);
      c.dimension = d.dimension;
      const auto& k = c.bundle.action.complex;
      if (k.dimension() != dim) fail(l[3], "chart has dimension " + std::to_string(k.dimension()));
      c.section.assign(k.num_vertices(), VectorQ::Zero(rank));
      for (auto& [v, p] : b.section) {
        if (v < 0 || v >= k.num_vertices()) fail(p.first, "no such vertex");
        if (static_cast<int>(p.second.size()) != rank) fail(p.first, "section value needs " + std::to_string(rank) + " entries");
        c.section[v] = vector_from(p.second);
      }
      c.footprint.assign(k.num_vertices(), -1);
      for (auto& [v, x] : b.footprint) {
        if (v < 0 || v >= k.num_vertices() || x < 0 || x >= d.space.num_vertices()) fail(l[0], "footprint out of range");
        c.footprint[v] = x;
      }
      lv.open = open_from(k, b.excluded);
      d.levels.push_back(std::move(lv));
    } else if (kw == "embed") {
      arity(l, 3, 3);
      DgsEmbedding e;
      e.source = to_int(l[1]);
      e.target = to_int(l[2]);
      if (d.position(e.source) < 0 || d.position(e.target) < 0) fail(l[1], "embedding between unknown levels");
      const auto& src = d.level(e.source);
      const auto& dst = d.level(e.target);
      const auto& k = src.chart.bundle.action.complex;
      e.phi.assign(k.num_vertices(), -1);
      std::vector<std::pair<Token, Simplex>> excluded;
      std::optional<std::pair<Token, std::vector<Rational>>> fiber;
      for (;;) {
        const Line& q = r.next();
        const std::string& qk = q[0].text;
        if (qk == "end") break;
        if (qk == "exclude") {
          excluded.push_back({q[0], vertex_set(q, 1)});
        } else if (qk == "map") {
          arity(q, 3, 3);
          const int v = to_int(q[1]);
          if (v < 0 || v >= k.num_vertices()) fail(q[1], "no such vertex");
          e.phi[v] = to_int(q[2]);
          if (e.phi[v] < 0 || e.phi[v] >= dst.chart.bundle.num_vertices()) fail(q[2], "no such target vertex");
        } else if (qk == "fiber-map") {
          fiber = {q[0], rats(q, 1)};
        } else if (qk == "group-map") {
          e.h = ints(q, 1);
          if (static_cast<int>(e.h.size()) != src.chart.bundle.action.group.order())
            fail(q[0], "group-map needs one image per source group element");
        } else {
          fail(q[0], "unexpected '" + qk + "' in embedding");
        }
      }
      e.domain = open_from(k, excluded);
      const int rs = src.chart.rank(), rt = dst.chart.rank();
      e.dphi = fiber ? matrix_from(fiber->second, rt, rs, fiber->first) : MatrixQ::Zero(rt, rs);
      if (e.h.empty()) {
        if (src.chart.bundle.action.group.order() != 1) fail(l[0], "embedding needs a group-map");
        e.h = {0};
      }
      d.embeddings.push_back(std::move(e));
    } else {
      fail(l[0], "unexpected '" + kw + "' in dgs");
    }
  }
  if (!have_space) fail(head[0], "dgs needs a space block");
  return d;
}

Instance parse_any(std::string_view text, const std::string& want) {
  Reader r(text);
  if (r.done()) fail(r.eof(), "missing instance keyword");
  const Line& head = r.next();
  const std::string& kw = head[0].text;
  if (!want.empty() && kw != want) fail(head[0], "expected a " + want + " file, got '" + kw + "'");
  if (kw == "graph") return graph_body(r, head);
  if (kw == "complex") return complex_body(r, head);
  if (kw == "bundle") return bundle_body(r, head);
  if (kw == "multisection") return multisection_body(r, head);
  if (kw == "dgs") return dgs_body(r, head);
  fail(head[0], "unknown instance kind '" + kw + "'");
}

}  // namespace

Instance parse(std::string_view text) { return parse_any(text, ""); }

Instance parse_file(const std::string& path) { return parse(read_file(path)); }

graph::LabeledDualGraph parse_graph(std::string_view text) {
  return std::get<graph::LabeledDualGraph>(parse_any(text, "graph"));
}
SimplicialComplex parse_complex(std::string_view text) { return std::get<SimplicialComplex>(parse_any(text, "complex")); }
EquivariantBundle parse_bundle(std::string_view text) { return std::get<EquivariantBundle>(parse_any(text, "bundle")); }
Multisection parse_multisection(std::string_view text) {
  return std::get<Multisection>(parse_any(text, "multisection"));
}
DGS parse_dgs(std::string_view text) { return std::get<DGS>(parse_any(text, "dgs")); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string serialize(const graph::LabeledDualGraph& g) {
  std::ostringstream os;
  os << kHeader << "\ngraph\n";
  for (auto& v : g.vertices) {
    os << "vertex " << v.genus;
    if (v.degree) os << " degree=" << *v.degree;
    os << "\n";
  }
  for (auto& e : g.edges) os << "edge " << e.a << " " << e.b << "\n";
  for (int f : g.flags) os << "flag " << f << "\n";
  for (int f : g.unordered_flags) os << "unordered " << f << "\n";
  return os.str();
}

std::string summary(const graph::LabeledDualGraph& g) {
  std::ostringstream os;
  os << "genera=(";
  for (int v = 0; v < g.num_vertices(); ++v) {
    os << (v ? "," : "") << g.vertices[v].genus;
    if (g.vertices[v].degree) os << "[" << *g.vertices[v].degree << "]";
  }
  os << ") edges=(";
  for (std::size_t i = 0; i < g.edges.size(); ++i) os << (i ? "," : "") << g.edges[i].a << "-" << g.edges[i].b;
  os << ") flags=(";
  for (int i = 0; i < g.num_flags(); ++i) os << (i ? "," : "") << g.flags[i];
  os << ")";
  return os.str();
}

std::string serialize(const SimplicialComplex& k) {
  std::ostringstream os;
  os << kHeader << "\ncomplex\n";
  put_simplices(os, k, "");
  return os.str();
}

std::string serialize(const EquivariantBundle& e) {
  std::ostringstream os;
  os << kHeader << "\nbundle rank=" << e.rank() << "\nquotient\n";
  put_simplices(os, e.quotient, "  ");
  os << "end\n";
  for (const auto& c : e.charts) {
    const auto& b = c.bundle;
    os << "chart\n";
    put_action(os, b.action, "  ");
    put_rho(os, b.rho, b.action.group, b.rank, "  ");
    for (auto [v, idx] : b.defects) os << "  defect " << v << " " << idx << "\n";
    if (b.fiber_sign != 1) os << "  fiber-sign " << b.fiber_sign << "\n";
    os << "  projection :";
    for (int p : c.projection) os << " " << p;
    os << "\n";
    for (auto& s : c.owned) {
      os << "  owned";
      for (int v : s) os << " " << v;
      os << "\n";
    }
    os << "end\n";
  }
  for (auto& [ij, m] : e.transitions) {
    os << "transition " << ij.first << " " << ij.second << " :";
    put_rats(os, m);
    os << "\n";
  }
  return os.str();
}

std::string serialize(const Multisection& m) {
  std::ostringstream os;
  os << kHeader << "\nmultisection\n";
  for (std::size_t c = 0; c < m.charts.size(); ++c) {
    os << "chart " << c << "\n";
    for (auto& b : m.charts[c]) {
      os << "branch " << b.multiplicity << "\n";
      for (std::size_t v = 0; v < b.values.size(); ++v) {
        os << "  at " << v;
        for (int i = 0; i < b.values[v].size(); ++i) os << " " << to_string(b.values[v](i));
        os << "\n";
      }
    }
  }
  return os.str();
}

std::string serialize(const DGS& d) {
  std::ostringstream os;
  os << kHeader << "\ndgs dim=" << d.dimension << "\nspace\n";
  put_simplices(os, d.space, "  ");
  for (int s = 0; s < d.space.size(); ++s) {
    if (d.space_level[s] == 0) continue;
    os << "  mlevel " << d.space_level[s];
    for (int v : d.space.simplex(s)) os << " " << v;
    os << "\n";
  }
  os << "end\n";
  for (const auto& l : d.levels) {
    const auto& c = l.chart;
    const auto& k = c.bundle.action.complex;
    os << "level " << l.index << " rank=" << c.rank() << " dim=" << k.dimension() << "\n";
    put_action(os, c.bundle.action, "  ");
    put_rho(os, c.bundle.rho, c.bundle.action.group, c.rank(), "  ");
    for (int v = 0; v < k.num_vertices(); ++v) {
      if (c.section[v].isZero()) continue;
      os << "  section " << v << " :";
      for (int i = 0; i < c.section[v].size(); ++i) os << " " << to_string(c.section[v](i));
      os << "\n";
    }
    for (int v = 0; v < k.num_vertices(); ++v)
      if (c.footprint[v] >= 0) os << "  footprint " << v << " " << c.footprint[v] << "\n";
    put_excluded(os, k, l.open, "  ");
    os << "end\n";
  }
  for (const auto& e : d.embeddings) {
    os << "embed " << e.source << " " << e.target << "\n";
    put_excluded(os, d.level(e.source).chart.bundle.action.complex, e.domain, "  ");
    for (std::size_t v = 0; v < e.phi.size(); ++v)
      if (e.phi[v] >= 0) os << "  map " << v << " " << e.phi[v] << "\n";
    if (e.dphi.size() > 0) {
      os << "  fiber-map :";
      put_rats(os, e.dphi);
      os << "\n";
    }
    if (e.h.size() > 1) {
      os << "  group-map :";
      for (int x : e.h) os << " " << x;
      os << "\n";
    }
    os << "end\n";
  }
  return os.str();
}

}  // namespace orbivfc::io
