#pragma once

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "setopt/rational_linalg.hpp"
#include "setopt/simplex.hpp"

/**
 * Polyhedral convex sets in both descriptions and the conversions between
 * them. The single computational kernel is the double description method
 * (Motzkin et al. 1953; Fukuda & Prodon 1996) run on a homogenizing cone:
 * a set { y | N y >= g } in dimension q lifts to { (t,y) | N y - g t >= 0,
 * t >= 0 } in dimension q+1, whose extreme rays split into vertices (t > 0)
 * and recession directions (t = 0). Facet enumeration is the same
 * computation on the dual cone of the lifted generators. Lineality is
 * handled by pinning the kernel of the constraint matrix, so unbounded sets,
 * sets containing lines and lower-dimensional sets all go through the one
 * code path.
 *
 * All generator and facet lists are canonical: directions are coprime
 * integer vectors with orientation preserved, lists are sorted, and
 * H-representations coming out of `to_hrep` are irredundant (each facet
 * certified necessary by one linear program). Identical inputs therefore
 * produce identical outputs.
 */

namespace setopt {

/** Operation applied to an empty set where that is not meaningful. */
class EmptySetError : public std::runtime_error {
 public:
  explicit EmptySetError(const std::string& what) : std::runtime_error(what) {}
};

/** Input data violating a standing assumption (e.g. a degenerate cone). */
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/** Intersection of half-spaces { y | normals y >= offsets }, no zero rows. */
struct HRep {
  RMatrix normals;  // r x q
  RVector offsets;  // r

  Index dim() const { return normals.cols(); }
  Index size() const { return normals.rows(); }
};

/**
 * conv(points) + cone(directions). The empty set is the unique VRep with no
 * points; directions are nonzero canonical vectors.
 */
struct VRep {
  std::vector<RVector> points;
  std::vector<RVector> directions;
  Index dim = 0;

  bool empty() const { return points.empty(); }
};

/** Ordering cone C = { y | Z' y >= 0 }; must be pointed with interior. */
struct ConeSpec {
  RMatrix Z;  // q x p

  Index dim() const { return Z.rows(); }
};

inline HRep make_hrep(RMatrix normals, RVector offsets) {
  if (normals.rows() != offsets.size())
    throw InputError("make_hrep: offsets length does not match row count");
  for (Index i = 0; i < normals.rows(); ++i)
    if (is_zero(normals.row(i).transpose()))
      throw InputError("make_hrep: zero normal row");
  return HRep{std::move(normals), std::move(offsets)};
}

inline bool contains(const HRep& h, const RVector& y) {
  if (y.size() != h.dim()) throw InputError("contains: dimension mismatch");
  for (Index i = 0; i < h.size(); ++i)
    if (h.normals.row(i).dot(y.transpose()) < h.offsets(i)) return false;
  return true;
}

/**
 * Generator test for inclusion: every point of `inner` satisfies the
 * inequalities of `outer` and every direction satisfies them homogeneously.
 * An empty `inner` is a subset of anything.
 */
inline bool is_subset(const VRep& inner, const HRep& outer) {
  if (!inner.empty() && inner.dim != outer.dim())
    throw InputError("is_subset: dimension mismatch");
  for (const auto& p : inner.points)
    if (!contains(outer, p)) return false;
  for (const auto& d : inner.directions)
    for (Index i = 0; i < outer.size(); ++i)
      if (outer.normals.row(i).dot(d.transpose()) < 0) return false;
  return true;
}

namespace detail {

struct ConeGenerators {
  std::vector<RVector> rays;       // extreme rays of the pointed part
  std::vector<RVector> lineality;  // basis of the lineality space
};

/**
 * Double description: generators of the cone { u | M u >= 0 }.
 *
 * The lineality space is split off first (kernel of M), the remaining
 * pointed cone is seeded from an invertible row subset, and the other
 * inequalities are inserted one at a time in lexicographic order. Adjacency
 * of rays uses the combinatorial test: two rays are adjacent iff no third
 * ray's active set contains the intersection of theirs.
 */
inline ConeGenerators dd_cone(const RMatrix& constraints) {
  const Index d = constraints.cols();
  ConeGenerators out;
  if (d == 0) return out;

  std::set<RVector, LexLess> row_set;
  for (Index i = 0; i < constraints.rows(); ++i) {
    RVector r = constraints.row(i).transpose();
    if (!is_zero(r)) row_set.insert(canonical_direction(r));
  }
  std::vector<RVector> ineqs(row_set.begin(), row_set.end());

  RMatrix m(static_cast<Index>(ineqs.size()), d);
  for (std::size_t i = 0; i < ineqs.size(); ++i)
    m.row(static_cast<Index>(i)) = ineqs[i].transpose();
  for (const auto& k : kernel_basis(m))
    out.lineality.push_back(canonical_direction(k));

  // Lineality pins first (as equality pairs), then the sorted inequalities.
  std::vector<RVector> work;
  for (const auto& l : out.lineality) {
    work.push_back(l);
    work.push_back((-l).eval());
  }
  work.insert(work.end(), ineqs.begin(), ineqs.end());
  const Index nrows = static_cast<Index>(work.size());

  RMatrix w(nrows, d);
  for (Index i = 0; i < nrows; ++i) w.row(i) = work[static_cast<std::size_t>(i)].transpose();
  const std::vector<Index> seed = independent_rows(w);
  if (static_cast<Index>(seed.size()) != d)
    throw InternalError("dd_cone: constraint matrix plus lineality pins must have full rank");

  // Process order: the seed rows, then every other row in `work` order.
  std::vector<Index> order = seed;
  {
    std::vector<bool> used(static_cast<std::size_t>(nrows), false);
    for (Index i : seed) used[static_cast<std::size_t>(i)] = true;
    for (Index i = 0; i < nrows; ++i)
      if (!used[static_cast<std::size_t>(i)]) order.push_back(i);
  }

  RMatrix seed_m(d, d);
  for (Index i = 0; i < d; ++i) seed_m.row(i) = w.row(seed[static_cast<std::size_t>(i)]);
  const auto seed_inv = inverse(seed_m);
  if (!seed_inv) throw InternalError("dd_cone: seed rows not invertible");

  struct Ray {
    RVector u;
    boost::dynamic_bitset<> active;  // bit k: row order[k] is tight
  };
  std::vector<Ray> rays;
  const auto activity = [&](const RVector& u, Index processed) {
    boost::dynamic_bitset<> act(static_cast<std::size_t>(nrows));
    for (Index k = 0; k < processed; ++k)
      if (w.row(order[static_cast<std::size_t>(k)]).dot(u.transpose()) == 0)
        act.set(static_cast<std::size_t>(k));
    return act;
  };
  for (Index j = 0; j < d; ++j) {
    Ray r{canonical_direction(seed_inv->col(j)), {}};
    r.active = activity(r.u, d);
    rays.push_back(std::move(r));
  }

  for (Index t = d; t < nrows; ++t) {
    const RVector& a = work[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
    std::vector<Rational> s(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) s[i] = a.dot(rays[i].u);

    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] > 0) {
        next.push_back(rays[i]);
      } else if (s[i] == 0) {
        Ray r = rays[i];
        r.active.set(static_cast<std::size_t>(t));
        next.push_back(std::move(r));
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] <= 0) continue;
      for (std::size_t j = 0; j < rays.size(); ++j) {
        if (s[j] >= 0) continue;
        const auto mask = rays[i].active & rays[j].active;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size(); ++k) {
          if (k == i || k == j) continue;
          if (mask.is_subset_of(rays[k].active)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Ray combo;
        combo.u = canonical_direction(s[i] * rays[j].u - s[j] * rays[i].u);
        combo.active = activity(combo.u, t + 1);
        next.push_back(std::move(combo));
      }
    }
    rays = std::move(next);
  }

  std::set<RVector, LexLess> unique;
  for (auto& r : rays) unique.insert(std::move(r.u));
  out.rays.assign(unique.begin(), unique.end());
  return out;
}

/** Homogenization rows for { y | N y >= g }: (-g | N) plus the t >= 0 row. */
inline RMatrix lift_rows(const HRep& h) {
  const Index q = h.dim();
  RMatrix m(h.size() + 1, q + 1);
  m.setZero();
  m(0, 0) = 1;
  for (Index i = 0; i < h.size(); ++i) {
    m(i + 1, 0) = -h.offsets(i);
    m.block(i + 1, 1, 1, q) = h.normals.row(i);
  }
  return m;
}

/** Rescale (normal, offset) so the normal is canonical; offset follows. */
inline std::pair<RVector, Rational> canonical_row(const RVector& normal,
                                                  const Rational& offset) {
  RVector cn = canonical_direction(normal);
  Index nz = 0;
  while (normal(nz) == 0) ++nz;
  const Rational scale = cn(nz) / normal(nz);
  return {std::move(cn), offset * scale};
}

struct RowLess {
  bool operator()(const std::pair<RVector, Rational>& a,
                  const std::pair<RVector, Rational>& b) const {
    if (lex_less(a.first, b.first)) return true;
    if (lex_less(b.first, a.first)) return false;
    return a.second < b.second;
  }
};

}  // namespace detail

/**
 * Minimal V-representation of { y | normals y >= offsets }: the vertices and
 * extreme directions when the set is pointed, a canonical generator list
 * otherwise. Returns the empty VRep iff the set is empty.
 */
inline VRep to_vrep(const HRep& h) {
  const Index q = h.dim();
  const auto cg = detail::dd_cone(detail::lift_rows(h));
  std::set<RVector, LexLess> pts, dirs;
  for (const auto& u : cg.rays) {
    const Rational t = u(0);
    if (t > 0)
      pts.insert((u.tail(q) / t).eval());
    else if (t == 0)
      dirs.insert(canonical_direction(u.tail(q)));
    else
      throw InternalError("to_vrep: homogenization ray with negative height");
  }
  for (const auto& l : cg.lineality) {
    if (l(0) != 0) throw InternalError("to_vrep: lineality with nonzero height");
    RVector dir = canonical_direction(l.tail(q));
    dirs.insert((-dir).eval());
    dirs.insert(std::move(dir));
  }
  VRep out;
  out.dim = q;
  if (pts.empty()) return out;  // empty set: no generators at all
  out.points.assign(pts.begin(), pts.end());
  out.directions.assign(dirs.begin(), dirs.end());
  return out;
}

/**
 * Irredundant H-representation of a nonempty V-represented set, computed as
 * the double description of the dual of the lifted generator cone followed
 * by LP-certified redundancy removal. Lineality vectors of the dual encode
 * the affine hull and come out as inequality pairs.
 */
inline HRep to_hrep(const VRep& v);

/**
 * Subset of rows describing the same set, each certified necessary: for
 * every surviving row, relaxing just that row admits a point beyond its
 * offset (one LP per row). Throws EmptySetError on an empty input set so
 * callers can tell emptiness from a trivial description.
 */
inline HRep remove_redundancy(const HRep& h) {
  if (h.size() == 0) return h;
  {
    LinearProgram feas{RVector::Zero(h.dim()), h.normals, h.offsets};
    if (lp_solve(feas).status == LPStatus::Infeasible)
      throw EmptySetError("remove_redundancy: the described set is empty");
  }

  std::vector<Index> alive;
  {
    // Drop exact duplicates (up to positive scaling) first.
    std::set<std::pair<RVector, Rational>, detail::RowLess> seen;
    for (Index i = 0; i < h.size(); ++i) {
      auto row = detail::canonical_row(h.normals.row(i).transpose(), h.offsets(i));
      if (seen.insert(std::move(row)).second) alive.push_back(i);
    }
  }

  for (std::size_t pos = 0; pos < alive.size();) {
    const Index i = alive[pos];
    RMatrix rest(static_cast<Index>(alive.size()) - 1, h.dim());
    RVector rest_rhs(rest.rows());
    Index r = 0;
    for (Index j : alive) {
      if (j == i) continue;
      rest.row(r) = h.normals.row(j);
      rest_rhs(r) = h.offsets(j);
      ++r;
    }
    // Row i is redundant iff min of its normal over the others stays >= offset.
    LinearProgram lp{(-h.normals.row(i)).transpose(), std::move(rest),
                     std::move(rest_rhs)};
    const auto outcome = lp_solve(lp);
    const bool redundant =
        outcome.status == LPStatus::Optimal && outcome.value <= -h.offsets(i);
    if (redundant)
      alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pos));
    else
      ++pos;
  }

  RMatrix normals(static_cast<Index>(alive.size()), h.dim());
  RVector offsets(normals.rows());
  for (std::size_t k = 0; k < alive.size(); ++k) {
    normals.row(static_cast<Index>(k)) = h.normals.row(alive[k]);
    offsets(static_cast<Index>(k)) = h.offsets(alive[k]);
  }
  return HRep{std::move(normals), std::move(offsets)};
}

inline HRep to_hrep(const VRep& v) {
  if (v.empty()) throw InputError("to_hrep: the empty set has no H-representation");
  const Index q = v.dim;
  RMatrix gens(static_cast<Index>(v.points.size() + v.directions.size()), q + 1);
  Index r = 0;
  for (const auto& p : v.points) {
    gens(r, 0) = 1;
    gens.block(r, 1, 1, q) = p.transpose();
    ++r;
  }
  for (const auto& d : v.directions) {
    gens(r, 0) = 0;
    gens.block(r, 1, 1, q) = d.transpose();
    ++r;
  }
  const auto dual = detail::dd_cone(gens);

  std::set<std::pair<RVector, Rational>, detail::RowLess> rows;
  for (const auto& u : dual.rays) {
    RVector normal = u.tail(q);
    if (is_zero(normal)) {
      if (u(0) < 0) throw InternalError("to_hrep: nonempty set with 0 >= positive");
      continue;  // the trivial inequality t >= 0
    }
    rows.insert(detail::canonical_row(normal, -u(0)));
  }
  for (const auto& l : dual.lineality) {
    RVector normal = l.tail(q);
    if (is_zero(normal))
      throw InternalError("to_hrep: dual lineality must have a normal part");
    rows.insert(detail::canonical_row(normal, -l(0)));
    rows.insert(detail::canonical_row((-normal).eval(), l(0)));
  }

  RMatrix normals(static_cast<Index>(rows.size()), q);
  RVector offsets(normals.rows());
  Index i = 0;
  for (const auto& [n, g] : rows) {
    normals.row(i) = n.transpose();
    offsets(i) = g;
    ++i;
  }
  return remove_redundancy(HRep{std::move(normals), std::move(offsets)});
}

/** Canonical minimal form of a V-representation (round trip through H). */
inline VRep minimize(const VRep& v) {
  if (v.empty()) return v;
  return to_vrep(to_hrep(v));
}

inline void validate_cone(const ConeSpec& cone) {
  const Index q = cone.Z.rows();
  const Index p = cone.Z.cols();
  if (q < 1 || p < 1) throw ValidationError("cone: Z must be a q x p matrix, q,p >= 1");
  for (Index j = 0; j < p; ++j)
    if (is_zero(cone.Z.col(j)))
      throw ValidationError("cone: zero column in Z");
  if (rank(cone.Z) < q)
    throw ValidationError("cone: not pointed (Z' y >= 0 admits a line)");
  // Interior test: maximize t subject to Z'y >= t * 1 and t <= 1.
  RMatrix g(p + 1, q + 1);
  g.setZero();
  g.block(0, 0, p, q) = cone.Z.transpose();
  for (Index i = 0; i < p; ++i) g(i, q) = -1;
  g(p, q) = -1;
  RVector rhs = RVector::Zero(p + 1);
  rhs(p) = -1;
  RVector obj = RVector::Zero(q + 1);
  obj(q) = 1;
  const auto outcome = lp_solve(LinearProgram{obj, std::move(g), std::move(rhs)});
  if (outcome.status != LPStatus::Optimal)
    throw InternalError("validate_cone: interior test must be solvable");
  if (outcome.value <= 0)
    throw ValidationError("cone: empty interior");
}

/** Extreme rays of a validated ordering cone, canonical and sorted. */
inline std::vector<RVector> cone_rays(const ConeSpec& cone) {
  validate_cone(cone);
  auto cg = detail::dd_cone(cone.Z.transpose());
  if (!cg.lineality.empty())
    throw InternalError("cone_rays: pointed cone cannot have lineality");
  return std::move(cg.rays);
}

/**
 * Coordinate projection onto `keep` (0-based, strictly increasing indices);
 * directions that project to zero are dropped and generators re-minimized.
 */
inline VRep project(const VRep& v, std::span<const Index> keep) {
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= v.dim) throw InputError("project: index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw InputError("project: indices must be strictly increasing");
  }
  VRep out;
  out.dim = static_cast<Index>(keep.size());
  if (v.empty()) return out;
  const auto pick = [&](const RVector& u) {
    RVector w(out.dim);
    for (std::size_t i = 0; i < keep.size(); ++i) w(static_cast<Index>(i)) = u(keep[i]);
    return w;
  };
  for (const auto& p : v.points) out.points.push_back(pick(p));
  for (const auto& d : v.directions) {
    RVector w = pick(d);
    if (!is_zero(w)) out.directions.push_back(canonical_direction(w));
  }
  return minimize(out);
}

/** V-representation of v + cone(rays), generator lists re-minimized. */
inline VRep add_cone(VRep v, const std::vector<RVector>& rays) {
  if (v.empty()) throw InputError("add_cone: the base set must be nonempty");
  for (const auto& r : rays) v.directions.push_back(canonical_direction(r));
  return minimize(v);
}

/** Set equality of two V-represented sets by mutual generator inclusion. */
inline bool describes_same_set(const VRep& a, const VRep& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  if (a.dim != b.dim) return false;
  return is_subset(a, to_hrep(b)) && is_subset(b, to_hrep(a));
}

inline std::string to_debug_string(const RVector& v) {
  std::ostringstream os;
  for (Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << to_string(v(i));
  return os.str();
}

inline std::string to_debug_string(const VRep& v) {
  std::ostringstream os;
  for (const auto& p : v.points) os << "point " << to_debug_string(p) << "\n";
  for (const auto& d : v.directions) os << "dir   " << to_debug_string(d) << "\n";
  return os.str();
}

inline std::string to_debug_string(const HRep& h) {
  std::ostringstream os;
  for (Index i = 0; i < h.size(); ++i)
    os << to_debug_string(h.normals.row(i).transpose()) << " >= "
       << to_string(h.offsets(i)) << "\n";
  return os.str();
}

}  // namespace setopt
