#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * Exact rational scalars and the small amount of dense linear algebra the
 * rest of the library is built on. Every quantity is a GMP-backed rational
 * kept in canonical form (positive denominator, coprime), so equality and
 * sign tests are exact and no tolerance appears anywhere.
 */

namespace setopt {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Index = Eigen::Index;
using RVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/** Malformed caller input (dimension mismatch, unparsable text, ...). */
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/** A broken internal invariant; indicates a bug, not bad input. */
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/**
 * Parse "p" or "p/q" with an optional leading minus into a canonical
 * rational. The denominator, when present, must be a positive integer.
 */
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InputError("parse_rational: empty string");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(text));
    }
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den <= 0)
      throw InputError("parse_rational: denominator must be positive in '" + text + "'");
    return Rational(num, den);  // the two-argument constructor canonicalizes
  } catch (const std::runtime_error&) {
    throw InputError("parse_rational: cannot parse '" + text + "'");
  }
}

/** "p" when the denominator is one, "p/q" otherwise. */
inline std::string to_string(const Rational& r) { return r.str(); }

inline bool lex_less(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

struct LexLess {
  bool operator()(const RVector& a, const RVector& b) const { return lex_less(a, b); }
};

inline bool is_zero(const RVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

/**
 * The unique positive multiple of v whose entries are coprime integers.
 * Two vectors are positive multiples of each other iff their canonical
 * forms coincide. Orientation is preserved: there is never a sign flip.
 */
inline RVector canonical_direction(const RVector& v) {
  if (v.size() == 0 || is_zero(v))
    throw InputError("canonical_direction: zero vector has no direction");
  Integer den_lcm = 1;
  for (Index i = 0; i < v.size(); ++i) den_lcm = lcm(den_lcm, denominator(v(i)));
  std::vector<Integer> scaled(static_cast<std::size_t>(v.size()));
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) {
    scaled[static_cast<std::size_t>(i)] =
        numerator(v(i)) * (den_lcm / denominator(v(i)));
    g = gcd(g, scaled[static_cast<std::size_t>(i)]);
  }
  RVector out(v.size());
  for (Index i = 0; i < v.size(); ++i)
    out(i) = Rational(scaled[static_cast<std::size_t>(i)] / g);
  return out;
}

namespace detail {

/**
 * In-place reduced row echelon form with exact arithmetic; the pivot is the
 * first nonzero entry of each column, which keeps the result deterministic.
 * Returns the pivot column of each pivot row, in row order.
 */
inline std::vector<Index> rref(RMatrix& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index p = -1;
    for (Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    if (p != row) m.row(row).swap(m.row(p));
    m.row(row) /= m(row, col);
    for (Index r = 0; r < m.rows(); ++r) {
      if (r != row && m(r, col) != 0) m.row(r) -= m(r, col) * m.row(row).eval();
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline Index rank(RMatrix m) { return static_cast<Index>(detail::rref(m).size()); }

/**
 * One exact solution of M x = rhs if the system is consistent, none
 * otherwise. Free variables are fixed at zero.
 */
inline std::optional<RVector> solve_linear_system(const RMatrix& m, const RVector& rhs) {
  if (rhs.size() != m.rows())
    throw InputError("solve_linear_system: rhs length does not match row count");
  RMatrix aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = rhs;
  const auto pivots = detail::rref(aug);
  RVector x = RVector::Zero(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;  // row 0 = 1: inconsistent
    x(pivots[i]) = aug(static_cast<Index>(i), m.cols());
  }
  return x;
}

/** A basis of { x | M x = 0 }, empty when M has full column rank. */
inline std::vector<RVector> kernel_basis(const RMatrix& m) {
  RMatrix r = m;
  const auto pivots = detail::rref(r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<RVector> basis;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RVector v = RVector::Zero(m.cols());
    v(f) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v(pivots[i]) = -r(static_cast<Index>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/** Indices of a maximal linearly independent row set, greedily from the top. */
inline std::vector<Index> independent_rows(const RMatrix& m) {
  RMatrix t = m.transpose();
  return detail::rref(t);
}

/** Exact inverse, or none when the matrix is singular (or not square). */
inline std::optional<RMatrix> inverse(const RMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Index n = m.rows();
  RMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = RMatrix::Identity(n, n);
  const auto pivots = detail::rref(aug);
  if (static_cast<Index>(pivots.size()) != n) return std::nullopt;
  for (Index i = 0; i < n; ++i)
    if (pivots[static_cast<std::size_t>(i)] != i) return std::nullopt;
  return RMatrix(aug.rightCols(n));
}

}  // namespace setopt
