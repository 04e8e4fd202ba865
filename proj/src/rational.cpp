#include "orbivfc/rational.hpp"

#include <sstream>

namespace orbivfc {

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidInput("empty rational literal");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw InvalidInput("bad rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw InvalidInput("zero denominator in '" + s + "'");
  return Rational(Integer(num), d);
}

int sign(const Rational& q) { return q.sign(); }

bool less_vec(const VectorQ& a, const VectorQ& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

bool equal_vec(const VectorQ& a, const VectorQ& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

std::string to_string(const VectorQ& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v(i));
  }
  return out + ")";
}

}  // namespace orbivfc
