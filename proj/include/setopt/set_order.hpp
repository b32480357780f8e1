#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "setopt/polyhedron.hpp"

/**
 * The objective map and the set relation it is minimized under. A problem
 * instance is the data (A, B, b, Z) with
 *
 *     gr F = { (x,y) | A x + B y >= b },     C = { y | Z' y >= 0 },
 *
 * and values are compared by  F(x) preceq F(u)  iff  F(x) + C  contains
 * F(u) + C. Values are stored as given, with the +C closure computed
 * explicitly and cached, never assumed (unless the instance asserts
 * F(x) = F(x) + C for all x via the gc_values option, in which case the
 * closure step is skipped).
 */

namespace setopt {

struct ProblemOptions {
  bool gc_values = false;  // asserts F(x) = F(x) + C for every x
};

struct ProblemInstance {
  RMatrix A;      // m x n
  RMatrix B;      // m x q
  RVector b;      // m
  ConeSpec cone;  // Z is q x p
  ProblemOptions options;

  Index n() const { return A.cols(); }
  Index m() const { return A.rows(); }
  Index q() const { return B.cols(); }
  Index p() const { return cone.Z.cols(); }

  void validate() const {
    if (m() < 1 || n() < 1 || q() < 1)
      throw ValidationError("instance: A must be m x n and B m x q with m,n,q >= 1");
    if (B.rows() != m()) throw ValidationError("instance: A and B row counts differ");
    if (b.size() != m()) throw ValidationError("instance: b length does not match m");
    if (cone.Z.rows() != q()) throw ValidationError("instance: Z must have q rows");
    validate_cone(cone);
  }
};

/**
 * One value of the objective map together with the representations phase
 * two consumes: h is { y | B y >= b - A x } (zero rows of B checked and
 * dropped), v its minimal generators, v_plus/h_plus the same for F(x) + C.
 * Immutable once built; safe to share across threads.
 */
struct SetValue {
  RVector x;
  HRep h;
  VRep v;
  VRep v_plus;
  HRep h_plus;
};

/**
 * Evaluate F at x. Returns nothing when x is outside the domain of F,
 * which callers treat as a distinct status rather than an error.
 */
inline std::optional<SetValue> value_of(const ProblemInstance& inst, const RVector& x) {
  if (x.size() != inst.n()) throw InputError("value_of: x has wrong dimension");
  const RVector rhs = inst.b - inst.A * x;
  std::vector<Index> keep;
  for (Index i = 0; i < inst.m(); ++i) {
    if (is_zero(inst.B.row(i).transpose())) {
      if (rhs(i) > 0) return std::nullopt;  // 0 >= positive: empty value
    } else {
      keep.push_back(i);
    }
  }
  RMatrix normals(static_cast<Index>(keep.size()), inst.q());
  RVector offsets(normals.rows());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    normals.row(static_cast<Index>(k)) = inst.B.row(keep[k]);
    offsets(static_cast<Index>(k)) = rhs(keep[k]);
  }
  SetValue val;
  val.x = x;
  val.h = HRep{std::move(normals), std::move(offsets)};
  val.v = to_vrep(val.h);
  if (val.v.empty()) return std::nullopt;
  val.v_plus = inst.options.gc_values ? val.v : add_cone(val.v, cone_rays(inst.cone));
  val.h_plus = to_hrep(val.v_plus);
#ifndef NDEBUG
  if (!is_subset(val.v_plus, val.h_plus))
    throw InternalError("value_of: v_plus/h_plus disagree");
#endif
  return val;
}

/** F(x) preceq F(u): every generator of Q + C satisfies the facets of P + C. */
inline bool preceq(const SetValue& P, const SetValue& Q) {
  return is_subset(Q.v_plus, P.h_plus);
}

/** Strict relation: preceq and not equivalent. */
inline bool strictly_less(const SetValue& P, const SetValue& Q) {
  return preceq(P, Q) && !preceq(Q, P);
}

/**
 * Lattice infimum of finitely many values: the minimized V-representation
 * of conv of the union of the closed values. The infimum of no values is
 * the empty set.
 */
inline VRep infimum(std::span<const SetValue> values, Index q) {
  VRep all;
  all.dim = q;
  for (const auto& val : values) {
    all.points.insert(all.points.end(), val.v_plus.points.begin(), val.v_plus.points.end());
    all.directions.insert(all.directions.end(), val.v_plus.directions.begin(),
                          val.v_plus.directions.end());
  }
  if (all.empty()) return all;
  return minimize(all);
}

}  // namespace setopt
