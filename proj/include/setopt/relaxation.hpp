#pragma once

#include <utility>
#include <vector>

#include "setopt/set_order.hpp"

/**
 * Phase one: solve the linear vector optimization relaxation of the set
 * problem. Its feasible image and the set problem share the same infimum
 * polyhedron (the "upper image"), computed here by exact vertex enumeration
 * of the graph of F followed by projection onto the value space and closure
 * under the ordering cone. Each vertex of the upper image, paired with a
 * preimage point whose value attains it, yields one entry of the
 * pre-solution that phase two refines.
 */

namespace setopt {

/** One phase-1 simplex run on the graph constraints. */
inline bool is_feasible(const ProblemInstance& inst) {
  RMatrix g(inst.m(), inst.n() + inst.q());
  g.leftCols(inst.n()) = inst.A;
  g.rightCols(inst.q()) = inst.B;
  LinearProgram lp{RVector::Zero(inst.n() + inst.q()), std::move(g), inst.b};
  return lp_solve(lp).status == LPStatus::Optimal;
}

/**
 * The infimum polyhedron in both representations, plus the graph generators
 * it was projected from (dimension n + q) for witness recovery.
 */
struct UpperImage {
  VRep v;
  HRep h;
  std::vector<RVector> graph_points;
};

inline UpperImage upper_image(const ProblemInstance& inst) {
  const Index n = inst.n();
  const Index q = inst.q();
  std::vector<Index> keep;
  for (Index i = 0; i < inst.m(); ++i) {
    const bool azero = is_zero(inst.A.row(i).transpose());
    const bool bzero = is_zero(inst.B.row(i).transpose());
    if (azero && bzero) {
      if (inst.b(i) > 0) throw EmptySetError("upper_image: the graph of F is empty");
    } else {
      keep.push_back(i);
    }
  }
  RMatrix normals(static_cast<Index>(keep.size()), n + q);
  RVector offsets(normals.rows());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    normals.block(static_cast<Index>(k), 0, 1, n) = inst.A.row(keep[k]);
    normals.block(static_cast<Index>(k), n, 1, q) = inst.B.row(keep[k]);
    offsets(static_cast<Index>(k)) = inst.b(keep[k]);
  }
  const VRep graph = to_vrep(HRep{std::move(normals), std::move(offsets)});
  if (graph.empty()) throw EmptySetError("upper_image: the graph of F is empty");

  VRep proj;
  proj.dim = q;
  for (const auto& g : graph.points) proj.points.push_back(g.tail(q));
  for (const auto& d : graph.directions) {
    RVector w = d.tail(q);
    if (!is_zero(w)) proj.directions.push_back(canonical_direction(w));
  }
  for (auto& ray : cone_rays(inst.cone)) proj.directions.push_back(std::move(ray));

  UpperImage ui;
  ui.v = minimize(proj);
  ui.h = to_hrep(ui.v);
  ui.graph_points = graph.points;
  return ui;
}

/**
 * The problem is bounded iff the recession cone of the upper image is
 * contained in C; otherwise some recession direction violates Z' d >= 0 and
 * is returned as the certificate.
 */
struct BoundednessResult {
  bool bounded = true;
  RVector violating_direction;
};

inline BoundednessResult check_bounded(const UpperImage& ui, const ConeSpec& cone) {
  for (const auto& d : ui.v.directions) {
    const RVector zd = cone.Z.transpose() * d;
    for (Index i = 0; i < zd.size(); ++i)
      if (zd(i) < 0) return {false, d};
  }
  return {true, {}};
}

struct PreSolutionEntry {
  RVector x;
  RVector y;  // a vertex of the upper image, y in F(x)
};

struct PreSolution {
  std::vector<PreSolutionEntry> entries;
};

/**
 * One entry per vertex of the upper image. The witness x comes from the
 * graph generator that projected onto the vertex when one exists (the
 * usual case), otherwise from one feasibility LP over { x | A x >= b - B y }.
 */
inline PreSolution extract_presolution(const ProblemInstance& inst, const UpperImage& ui) {
  const Index n = inst.n();
  const Index q = inst.q();
  PreSolution pre;
  for (const auto& y : ui.v.points) {
    RVector x;
    for (const auto& g : ui.graph_points) {
      if (g.tail(q) == y) {
        x = g.head(n);
        break;
      }
    }
    if (x.size() == 0) {
      LinearProgram lp{RVector::Zero(n), inst.A, inst.b - inst.B * y};
      const auto outcome = lp_solve(lp);
      if (outcome.status != LPStatus::Optimal)
        throw InternalError("extract_presolution: vertex of the upper image has no preimage");
      x = outcome.point;
    }
    pre.entries.push_back({std::move(x), y});
  }
  return pre;
}

}  // namespace setopt
