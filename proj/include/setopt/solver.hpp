#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "setopt/relaxation.hpp"

/**
 * Phase two and the full solver. For each pre-solution point the facets of
 * the current value's closure are certified one by one: the facet normal w
 * (in the outer orientation w'y <= gamma) is scored by
 *
 *   alpha = best of w'y over all values dominating the current one,
 *   beta  = best of w'y over the current value itself,
 *
 * where alpha comes from one scalar linear program over (x, y, c^1..c^s)
 * and beta directly from the vertex list. alpha >= beta always holds;
 * alpha = beta on every facet certifies minimality, and alpha > beta hands
 * back a strictly better point to restart from. Normals already certified
 * for this pre-solution index are cached (keyed by canonical direction, an
 * exact stand-in for unit-norm scaling) and skipped, which bounds the
 * total number of scalar programs.
 */

namespace setopt {

/** A solver self-check failed; always indicates a bug. */
class VerificationError : public std::logic_error {
 public:
  explicit VerificationError(const std::string& what) : std::logic_error(what) {}
};

/**
 * Outcome of scoring one facet. w is canonical and oriented as w'y <= gamma
 * on the value's closure; improving_x is present exactly when alpha > beta.
 */
struct ScalarCertificate {
  RVector w;
  Rational gamma = 0;
  Rational alpha = 0;
  Rational beta = 0;
  std::optional<RVector> improving_x;
};

/** Facet normals already certified for the current pre-solution index. */
class NormalCache {
 public:
  bool contains(const RVector& w) const { return normals_.count(w) != 0; }
  void insert(RVector w) { normals_.insert(std::move(w)); }
  std::size_t size() const { return normals_.size(); }

 private:
  std::set<RVector, LexLess> normals_;
};

struct LpLogEntry {
  Index variables = 0;
  Index rows = 0;
  LPStatus status = LPStatus::Optimal;
  Rational value = 0;
};
using LpObserver = std::function<void(const LpLogEntry&)>;

namespace detail {

inline LPOutcome solve_logged(const LinearProgram& lp, const LpObserver& observer) {
  auto out = lp_solve(lp);
  if (observer) observer({lp.var_count(), lp.constraints.rows(), out.status, out.value});
  return out;
}

/** Facet row j of h in the outer orientation w'y <= gamma, canonical. */
inline std::pair<RVector, Rational> facet_leq(const HRep& h, Index j) {
  return canonical_row((-h.normals.row(j)).transpose(), -h.offsets(j));
}

}  // namespace detail

/**
 * The scalar program for facet normal w at a value with closure vertices
 * y^1..y^s: maximize w'y over (x, y, c^1..c^s) subject to
 *
 *     A x + B y           >= b
 *     A x - B c^i         >= b - B y^i   (i = 1..s)
 *             Z' c^i      >= 0           (i = 1..s)
 *
 * i.e. y in F(x) and F(x) + C covering every y^i: n + q(s+1) variables and
 * m + ms + ps constraints.
 */
inline LinearProgram build_scalar_lp(const ProblemInstance& inst, const RVector& w,
                                     std::span<const RVector> vertices) {
  const Index n = inst.n(), m = inst.m(), q = inst.q(), p = inst.p();
  const Index s = static_cast<Index>(vertices.size());
  if (s < 1) throw InputError("build_scalar_lp: need at least one vertex");
  if (w.size() != q) throw InputError("build_scalar_lp: normal has wrong dimension");

  const Index vars = n + q * (s + 1);
  const Index rows = m + m * s + p * s;
  RMatrix g = RMatrix::Zero(rows, vars);
  RVector rhs(rows);

  g.block(0, 0, m, n) = inst.A;
  g.block(0, n, m, q) = inst.B;
  rhs.head(m) = inst.b;
  for (Index i = 0; i < s; ++i) {
    const Index r0 = m + i * m;
    g.block(r0, 0, m, n) = inst.A;
    g.block(r0, n + q * (i + 1), m, q) = -inst.B;
    rhs.segment(r0, m) = inst.b - inst.B * vertices[static_cast<std::size_t>(i)];
  }
  for (Index i = 0; i < s; ++i) {
    const Index r0 = m + m * s + i * p;
    g.block(r0, n + q * (i + 1), p, q) = inst.cone.Z.transpose();
    rhs.segment(r0, p).setZero();
  }

  RVector obj = RVector::Zero(vars);
  obj.segment(n, q) = w;
  return LinearProgram{std::move(obj), std::move(g), std::move(rhs)};
}

/**
 * Specialization for instances whose values already satisfy F(x) = F(x)+C:
 * the cover constraint collapses to A x >= max_i (b - B y^i) taken
 * componentwise, leaving n + q variables and 2m constraints.
 */
inline LinearProgram build_scalar_lp_gc(const ProblemInstance& inst, const RVector& w,
                                        std::span<const RVector> vertices) {
  if (!inst.options.gc_values)
    throw InputError("build_scalar_lp_gc: instance does not assert F(x) = F(x) + C");
  const Index n = inst.n(), m = inst.m(), q = inst.q();
  const Index s = static_cast<Index>(vertices.size());
  if (s < 1) throw InputError("build_scalar_lp_gc: need at least one vertex");

  RVector cover = inst.b - inst.B * vertices[0];
  for (Index i = 1; i < s; ++i) {
    const RVector cand = inst.b - inst.B * vertices[static_cast<std::size_t>(i)];
    for (Index r = 0; r < m; ++r)
      if (cand(r) > cover(r)) cover(r) = cand(r);
  }

  RMatrix g = RMatrix::Zero(2 * m, n + q);
  RVector rhs(2 * m);
  g.block(0, 0, m, n) = inst.A;
  g.block(0, n, m, q) = inst.B;
  rhs.head(m) = inst.b;
  g.block(m, 0, m, n) = inst.A;
  rhs.tail(m) = cover;

  RVector obj = RVector::Zero(n + q);
  obj.segment(n, q) = w;
  return LinearProgram{std::move(obj), std::move(g), std::move(rhs)};
}

/** The lower bound beta: the exact maximum of w'y over the vertex list. */
inline Rational beta_of(const RVector& w, std::span<const RVector> vertices) {
  if (vertices.empty()) throw InputError("beta_of: empty vertex list");
  Rational best = w.dot(vertices[0]);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Rational v = w.dot(vertices[i]);
    if (v > best) best = v;
  }
  return best;
}

/** One recorded descent: the pass-start point and its strict improvement. */
struct DescentStep {
  RVector from;
  RVector to;
  ScalarCertificate certificate;
};

/** Result of driving one pre-solution point to minimality. */
struct PointRun {
  RVector x;                                   // the minimizer reached
  SetValue value;                              // fresh value of x
  std::vector<ScalarCertificate> certificates; // one per facet of the final pass
  std::vector<DescentStep> descent;
  int lp_count = 0;
  int while_restarts = 0;
  int normals_seen = 0;
};

/**
 * Phase-2 inner loop for one starting point, following the published
 * pseudocode exactly: per pass the V- and H-representations of the current
 * closure are recomputed, facets are visited in order, cached normals are
 * skipped, and the point is replaced by the scalar program's x-part
 * unconditionally, with a restart whenever alpha > beta. On a full pass the
 * final point is equivalent to the pass start, so the pass certificates
 * apply to it verbatim.
 */
inline PointRun minimize_point(const ProblemInstance& inst, const RVector& x0,
                               const LpObserver& observer = {}) {
  PointRun run;
  run.x = x0;
  NormalCache cache;
  auto val = value_of(inst, x0);
  if (!val) throw InputError("minimize_point: starting point outside dom F");

  bool done = false;
  while (!done) {
    const std::vector<RVector> verts = val->v_plus.points;
    const HRep facets = val->h_plus;
    if (facets.size() == 0)
      throw InternalError(
          "minimize_point: value closure has no facets; the instance is "
          "unbounded and should have been screened");
    const RVector pass_start = run.x;
    std::vector<ScalarCertificate> pass;
    bool restarted = false;

    for (Index j = 0; j < facets.size(); ++j) {
      auto [w, gamma] = detail::facet_leq(facets, j);
      if (!cache.contains(w)) {
        cache.insert(w);
        const LinearProgram lp = inst.options.gc_values
                                     ? build_scalar_lp_gc(inst, w, verts)
                                     : build_scalar_lp(inst, w, verts);
        const LPOutcome outcome = detail::solve_logged(lp, observer);
        ++run.lp_count;
        if (outcome.status != LPStatus::Optimal)
          throw InternalError(
              "minimize_point: scalar program without optimum; instance is "
              "unbounded or infeasible and should have been screened");
        const Rational alpha = outcome.value;
        const Rational beta = beta_of(w, verts);
        if (alpha < beta) throw InternalError("minimize_point: alpha < beta");
        ScalarCertificate cert{w, gamma, alpha, beta, {}};
        run.x = outcome.point.head(inst.n());
        if (alpha > beta) {
          cert.improving_x = run.x;
          run.descent.push_back({pass_start, run.x, cert});
          pass.push_back(std::move(cert));
          val = value_of(inst, run.x);
          if (!val) throw InternalError("minimize_point: descent left dom F");
          ++run.while_restarts;
          restarted = true;
          break;
        }
        pass.push_back(std::move(cert));
      } else {
        const Rational beta = beta_of(w, verts);
        pass.push_back({w, gamma, beta, beta, {}});
      }
      if (j + 1 == facets.size()) done = true;
    }
    if (!restarted) run.certificates = std::move(pass);
  }

  run.normals_seen = static_cast<int>(cache.size());
  auto final_val = value_of(inst, run.x);
  if (!final_val) throw InternalError("minimize_point: final point outside dom F");
  run.value = std::move(*final_val);
  return run;
}

struct MinimizerVerdict {
  bool minimal = false;
  std::vector<ScalarCertificate> certificates;
};

/**
 * Certify whether x is a minimizer: one scalar program per facet of
 * F(x) + C, no cache. Stops at the first violated facet, whose certificate
 * then carries the improving point.
 */
inline MinimizerVerdict is_minimizer(const ProblemInstance& inst, const RVector& x,
                                     const LpObserver& observer = {}) {
  const auto val = value_of(inst, x);
  if (!val) throw InputError("is_minimizer: point outside dom F");
  MinimizerVerdict verdict;
  for (Index j = 0; j < val->h_plus.size(); ++j) {
    auto [w, gamma] = detail::facet_leq(val->h_plus, j);
    const LinearProgram lp = inst.options.gc_values
                                 ? build_scalar_lp_gc(inst, w, val->v_plus.points)
                                 : build_scalar_lp(inst, w, val->v_plus.points);
    const LPOutcome outcome = detail::solve_logged(lp, observer);
    if (outcome.status != LPStatus::Optimal)
      throw InternalError("is_minimizer: scalar program without optimum");
    const Rational alpha = outcome.value;
    const Rational beta = beta_of(w, val->v_plus.points);
    if (alpha < beta) throw InternalError("is_minimizer: alpha < beta");
    ScalarCertificate cert{w, gamma, alpha, beta, {}};
    if (alpha > beta) {
      cert.improving_x = outcome.point.head(inst.n());
      verdict.certificates.push_back(std::move(cert));
      verdict.minimal = false;
      return verdict;
    }
    verdict.certificates.push_back(std::move(cert));
  }
  verdict.minimal = true;
  return verdict;
}

enum class SolveStatus { Solved, Infeasible, Unbounded };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "Solved";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

struct SolutionPoint {
  RVector x;
  std::vector<ScalarCertificate> certificates;
};

struct SolveStats {
  int lp_count = 0;                 // scalar programs solved in phase 2
  std::vector<int> while_restarts;  // per processed pre-solution index
  std::vector<int> normals_seen;    // per processed pre-solution index
  std::vector<int> skipped;         // pre-solution indices skipped
};

struct SolveOptions {
  bool skip_rule = true;
  bool gc_values = false;  // force the F(x) = F(x)+C specialization
  bool verify = false;     // re-certify the output independently
  LpObserver lp_observer;
};

struct SetOptReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<SolutionPoint> solution;
  VRep infimum;
  PreSolution presolution;
  SolveStats stats;
  RVector certificate;  // Farkas vector (Infeasible) or direction (Unbounded)
  std::vector<DescentStep> descent;  // all strict improvements, across points
};

namespace detail {

/**
 * Farkas certificate of an empty graph: lambda >= 0 with lambda'[A B] = 0
 * and lambda'b = 1, found by one auxiliary LP in lambda.
 */
inline RVector farkas_certificate(const ProblemInstance& inst) {
  const Index m = inst.m(), n = inst.n(), q = inst.q();
  RMatrix g(m + 2 * (n + q) + 2, m);
  RVector rhs = RVector::Zero(g.rows());
  g.setZero();
  g.block(0, 0, m, m) = RMatrix::Identity(m, m);
  RMatrix ab(m, n + q);
  ab.leftCols(n) = inst.A;
  ab.rightCols(q) = inst.B;
  g.block(m, 0, n + q, m) = ab.transpose();
  g.block(m + n + q, 0, n + q, m) = -ab.transpose();
  g.block(m + 2 * (n + q), 0, 1, m) = inst.b.transpose();
  g.block(m + 2 * (n + q) + 1, 0, 1, m) = -inst.b.transpose();
  rhs(m + 2 * (n + q)) = 1;
  rhs(m + 2 * (n + q) + 1) = -1;
  const auto outcome = lp_solve(LinearProgram{RVector::Zero(m), std::move(g), std::move(rhs)});
  if (outcome.status != LPStatus::Optimal)
    throw InternalError("farkas_certificate: certificate LP must be feasible");
  return outcome.point;
}

}  // namespace detail

/**
 * The complete solver. Phase one settles feasibility and boundedness and
 * extracts a pre-solution; phase two drives every entry to minimality in
 * index order. With the skip rule on, an entry whose witness vertex already
 * lies in a finished value's closure is skipped entirely and excluded from
 * the output. Coincident output points are merged.
 */
inline SetOptReport setopt_solve(const ProblemInstance& instance,
                                 const SolveOptions& options = {}) {
  instance.validate();
  ProblemInstance inst = instance;
  if (options.gc_values) inst.options.gc_values = true;

  SetOptReport report;
  if (!is_feasible(inst)) {
    report.status = SolveStatus::Infeasible;
    report.certificate = detail::farkas_certificate(inst);
    return report;
  }

  const UpperImage ui = upper_image(inst);
  const auto bounded = check_bounded(ui, inst.cone);
  if (!bounded.bounded) {
    report.status = SolveStatus::Unbounded;
    report.certificate = bounded.violating_direction;
    return report;
  }

  report.presolution = extract_presolution(inst, ui);
  const auto& entries = report.presolution.entries;
  std::vector<bool> skip(entries.size(), false);

  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (skip[i]) {
      report.stats.skipped.push_back(static_cast<int>(i));
      continue;
    }
    PointRun run = minimize_point(inst, entries[i].x, options.lp_observer);
    report.stats.lp_count += run.lp_count;
    report.stats.while_restarts.push_back(run.while_restarts);
    report.stats.normals_seen.push_back(run.normals_seen);
    report.descent.insert(report.descent.end(), run.descent.begin(), run.descent.end());

    if (options.skip_rule) {
      for (std::size_t j = i + 1; j < entries.size(); ++j)
        if (!skip[j] && contains(run.value.h_plus, entries[j].y)) skip[j] = true;
    }

    bool duplicate = false;
    for (const auto& existing : report.solution)
      if (existing.x == run.x) duplicate = true;
    if (!duplicate)
      report.solution.push_back({std::move(run.x), std::move(run.certificates)});
  }

  report.status = SolveStatus::Solved;
  report.infimum = ui.v;

  if (options.verify) {
    std::vector<SetValue> values;
    for (const auto& pt : report.solution) {
      if (!is_minimizer(inst, pt.x).minimal)
        throw VerificationError("setopt_solve: output point fails re-certification");
      values.push_back(*value_of(inst, pt.x));
    }
    if (!describes_same_set(infimum(values, inst.q()), ui.v))
      throw VerificationError("setopt_solve: output does not attain the infimum");
  }
  return report;
}

/** Per-point failure detail for check_solution. */
struct CandidateIssue {
  RVector x;
  ScalarCertificate certificate;
};

struct SolutionVerdict {
  bool is_infimizer = false;
  bool is_solution = false;
  std::vector<CandidateIssue> non_minimizers;
  std::vector<RVector> outside_domain;
};

/**
 * Decide whether a finite candidate set is a solution: attains the infimum
 * (mutual inclusion against the upper image) and consists of minimizers
 * only. Points outside dom F are flagged per point.
 */
inline SolutionVerdict check_solution(const ProblemInstance& inst,
                                      std::span<const RVector> candidate) {
  SolutionVerdict verdict;
  std::vector<SetValue> values;
  for (const auto& x : candidate) {
    auto val = value_of(inst, x);
    if (!val) {
      verdict.outside_domain.push_back(x);
      continue;
    }
    const auto mv = is_minimizer(inst, x);
    if (!mv.minimal)
      verdict.non_minimizers.push_back({x, mv.certificates.back()});
    values.push_back(std::move(*val));
  }
  const UpperImage ui = upper_image(inst);
  const VRep inf_candidate = infimum(values, inst.q());
  verdict.is_infimizer = describes_same_set(inf_candidate, ui.v);
  verdict.is_solution = verdict.is_infimizer && verdict.non_minimizers.empty() &&
                        verdict.outside_domain.empty();
  return verdict;
}

}  // namespace setopt
