#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbivfc {

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = MatrixX<Rational>;
using VectorQ = VectorX<Rational>;

/// Thrown for malformed user input (bad files, out-of-domain arguments).
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal consistency check fails. Seeing one is a bug.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reduced "p/q" text; integers print without a denominator.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q".
Rational parse_rational(std::string_view text);

/// Sign of a rational: -1, 0 or 1.
int sign(const Rational& q);

/// Vector comparison helpers, lexicographic on entries.
bool less_vec(const VectorQ& a, const VectorQ& b);
bool equal_vec(const VectorQ& a, const VectorQ& b);

std::string to_string(const VectorQ& v);

}  // namespace orbivfc
