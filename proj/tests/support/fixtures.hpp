#pragma once

#include <initializer_list>
#include <string>

#include "setopt/setopt.hpp"

// Shared instances and small builders used across the test suites.

namespace setopt::testing {

inline RVector vec(std::initializer_list<std::string> entries) {
  RVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const auto& e : entries) v(i++) = parse_rational(e);
  return v;
}

inline RVector vec(std::initializer_list<long> entries) {
  RVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (long e : entries) v(i++) = e;
  return v;
}

inline RMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = static_cast<Index>(rows.begin()->size());
  RMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

inline ConeSpec orthant_cone(Index q) {
  return ConeSpec{RMatrix::Identity(q, q)};
}

/** The 14-row instance with box-constrained x and quadrilateral values. */
inline ProblemInstance example1() {
  ProblemInstance inst;
  inst.A = mat({{1, 0},
                {0, 1},
                {-1, 0},
                {0, -1},
                {0, 0},
                {0, 0},
                {0, 0},
                {0, 0},
                {0, 1},
                {0, -1},
                {-2, 2},
                {-1, 1},
                {2, -2},
                {1, -1}});
  inst.B = mat({{0, 0},
                {0, 0},
                {0, 0},
                {0, 0},
                {-1, -1},
                {2, 1},
                {1, 2},
                {1, 1},
                {1, 0},
                {0, 1},
                {1, 0},
                {1, 0},
                {0, 1},
                {0, 1}});
  inst.b = vec({-1, 0, -1, -1, -3, 2, 2, 2, 0, -1, 0, 0, -2, -1});
  inst.cone = orthant_cone(2);
  return inst;
}

inline RVector ex1_x1() { return vec({-1, 0}); }
inline RVector ex1_x2() { return vec({-1, 1}); }
inline RVector ex1_x3() { return vec({0, 0}); }
inline RVector ex1_x4() { return vec({0, 1}); }

inline RVector ex1_y1() { return vec({0, 2}); }
inline RVector ex1_y2() { return vec({2, 0}); }
inline RVector ex1_y3() { return vec({-1, 4}); }
inline RVector ex1_y4() { return vec({4, -1}); }

/**
 * Values F(x) = { z | z1 >= -x1+x2, z2 >= -x1-x2, z1+z2 >= x1 } over the
 * triangular domain x1 >= 0, x1 + |x2| <= 1; values already satisfy
 * F(x) = F(x) + C.
 */
inline ProblemInstance example2(bool gc = false) {
  ProblemInstance inst;
  inst.A = mat({{1, 0}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}, {-1, 0}});
  inst.B = mat({{0, 0}, {0, 0}, {0, 0}, {1, 0}, {0, 1}, {1, 1}});
  inst.b = vec({0, -1, -1, 0, 0, 0});
  inst.cone = orthant_cone(2);
  inst.options.gc_values = gc;
  return inst;
}

/** Contradictory value constraints: y1 >= 1 and -y1 >= 0. */
inline ProblemInstance infeasible_instance() {
  ProblemInstance inst;
  inst.A = mat({{0}, {0}});
  inst.B = mat({{1, 0}, {-1, 0}});
  inst.b = vec({1, 0});
  inst.cone = orthant_cone(2);
  return inst;
}

/** F(x) = { y | y1 >= 0 } for every x: a half-plane image, unbounded. */
inline ProblemInstance halfplane_instance() {
  ProblemInstance inst;
  inst.A = mat({{0}});
  inst.B = mat({{1, 0}});
  inst.b = vec({0});
  inst.cone = orthant_cone(2);
  return inst;
}

/** F(x) = R^2_+ for every x. */
inline ProblemInstance constant_map_instance() {
  ProblemInstance inst;
  inst.A = mat({{0}, {0}});
  inst.B = mat({{1, 0}, {0, 1}});
  inst.b = vec({0, 0});
  inst.cone = orthant_cone(2);
  return inst;
}

inline SetValue value(const ProblemInstance& inst, const RVector& x) {
  auto v = value_of(inst, x);
  if (!v) throw InputError("test fixture: point unexpectedly outside dom F");
  return std::move(*v);
}

}  // namespace setopt::testing
