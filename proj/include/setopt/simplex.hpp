#pragma once

#include <utility>
#include <vector>

#include "setopt/rational_linalg.hpp"

/**
 * Exact two-phase primal simplex over the rationals.
 *
 * The public problem shape is
 *
 *     maximize  c' v   subject to   G v >= g,   v free,
 *
 * which matches the uniform ">=" constraint blocks used throughout the
 * library. Internally variables are split into differences of nonnegatives
 * and surplus variables turn the rows into equalities; phase one minimizes
 * artificial variables to find a basic feasible solution. Pivot selection
 * follows Bland's least-index rule in both phases, so the method terminates
 * on degenerate instances and a fixed input always produces the same
 * outcome, including the same optimal point among alternative optima.
 */

namespace setopt {

struct LinearProgram {
  RVector objective;   // maximize objective . v
  RMatrix constraints; // constraints * v >= rhs
  RVector rhs;

  Index var_count() const { return objective.size(); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

/**
 * Verdict of a solve. An Optimal outcome carries the exact value and an
 * attaining point; an Unbounded outcome carries a feasible point plus a
 * recession ray r with G r >= 0 and c'r > 0, which certifies the verdict.
 */
struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational value = 0;  // Optimal only
  RVector point;       // Optimal and Unbounded
  RVector ray;         // Unbounded only
};

namespace detail {

/** Dense exact tableau; rows are equalities over nonnegative variables. */
class SimplexTableau {
 public:
  SimplexTableau(RMatrix body, RVector rhs, std::vector<Index> basis)
      : body_(std::move(body)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  Index rows() const { return body_.rows(); }
  Index cols() const { return body_.cols(); }
  const std::vector<Index>& basis() const { return basis_; }

  /** Current value of variable j in the basic solution. */
  Rational value_of(Index j) const {
    for (Index i = 0; i < rows(); ++i)
      if (basis_[static_cast<std::size_t>(i)] == j) return rhs_(i);
    return 0;
  }

  void pivot(Index row, Index col) {
    const Rational piv = body_(row, col);
    body_.row(row) /= piv;
    rhs_(row) /= piv;
    for (Index i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const Rational f = body_(i, col);
      if (f == 0) continue;
      body_.row(i) -= f * body_.row(row).eval();
      rhs_(i) -= f * rhs_(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  /**
   * Run Bland's rule to optimality for `minimize cost . x` starting from the
   * current basic feasible solution. `usable(j)` masks columns that may
   * enter. Returns the entering column when the problem is unbounded in
   * that direction, or -1 at optimality.
   */
  Index minimize(const RVector& cost, const std::vector<bool>& usable) {
    while (true) {
      RVector reduced = cost;
      for (Index i = 0; i < rows(); ++i) {
        const Rational cb = cost(basis_[static_cast<std::size_t>(i)]);
        if (cb != 0) reduced -= cb * body_.row(i).transpose().eval();
      }
      Index entering = -1;
      for (Index j = 0; j < cols(); ++j) {
        if (usable[static_cast<std::size_t>(j)] && reduced(j) < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return -1;
      Index leaving = -1;
      Rational best_ratio = 0;
      for (Index i = 0; i < rows(); ++i) {
        if (body_(i, entering) <= 0) continue;
        const Rational ratio = rhs_(i) / body_(i, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] <
                                        basis_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return entering;
      pivot(leaving, entering);
    }
  }

  const RMatrix& body() const { return body_; }
  const RVector& rhs() const { return rhs_; }

  void drop_row(Index row) {
    const Index last = rows() - 1;
    if (row != last) {
      body_.row(row).swap(body_.row(last));
      rhs_.row(row).swap(rhs_.row(last));
      std::swap(basis_[static_cast<std::size_t>(row)],
                basis_[static_cast<std::size_t>(last)]);
    }
    body_.conservativeResize(last, Eigen::NoChange);
    rhs_.conservativeResize(last);
    basis_.pop_back();
  }

 private:
  RMatrix body_;
  RVector rhs_;
  std::vector<Index> basis_;
};

}  // namespace detail

inline LPOutcome lp_solve(const LinearProgram& lp) {
  const Index n = lp.var_count();
  const Index m = lp.constraints.rows();
  if (lp.constraints.cols() != n)
    throw InputError("lp_solve: constraint columns do not match variable count");
  if (lp.rhs.size() != m)
    throw InputError("lp_solve: rhs length does not match constraint rows");

  // Standard form: v = p - q with p, q >= 0 and a surplus per row.
  const Index cols = 2 * n + m;
  RMatrix body(m, cols + m);  // artificial identity appended
  RVector rhs = lp.rhs;
  body.setZero();
  body.block(0, 0, m, n) = lp.constraints;
  body.block(0, n, m, n) = -lp.constraints;
  for (Index i = 0; i < m; ++i) body(i, 2 * n + i) = -1;
  for (Index i = 0; i < m; ++i) {
    if (rhs(i) < 0) {
      body.row(i) = -body.row(i);
      rhs(i) = -rhs(i);
    }
    body(i, cols + i) = 1;
  }

  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = cols + i;
  detail::SimplexTableau tab(std::move(body), std::move(rhs), std::move(basis));

  // Phase one: minimize the sum of artificials.
  {
    RVector cost = RVector::Zero(cols + m);
    for (Index j = cols; j < cols + m; ++j) cost(j) = 1;
    std::vector<bool> usable(static_cast<std::size_t>(cols + m), true);
    const Index unbounded_col = tab.minimize(cost, usable);
    if (unbounded_col >= 0)
      throw InternalError("lp_solve: phase one cannot be unbounded");
    Rational art_sum = 0;
    for (Index j = cols; j < cols + m; ++j) art_sum += tab.value_of(j);
    if (art_sum > 0) return LPOutcome{LPStatus::Infeasible, 0, {}, {}};
  }

  // Pivot remaining zero-valued artificials out of the basis; a row with no
  // structural entry left is a redundant constraint and is dropped.
  for (Index i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < cols) continue;
    Index col = -1;
    for (Index j = 0; j < cols; ++j) {
      if (tab.body()(i, j) != 0) {
        col = j;
        break;
      }
    }
    if (col >= 0)
      tab.pivot(i, col);
    else
      tab.drop_row(i);
  }

  // Phase two: maximize c'v as minimize (-c, c, 0) over the split variables.
  RVector cost = RVector::Zero(cols + m);
  std::vector<bool> usable(static_cast<std::size_t>(cols + m), false);
  for (Index j = 0; j < n; ++j) {
    cost(j) = -lp.objective(j);
    cost(n + j) = lp.objective(j);
  }
  for (Index j = 0; j < cols; ++j) usable[static_cast<std::size_t>(j)] = true;
  const Index unbounded_col = tab.minimize(cost, usable);

  auto point_from_basis = [&]() {
    RVector v = RVector::Zero(n);
    for (Index i = 0; i < tab.rows(); ++i) {
      const Index j = tab.basis()[static_cast<std::size_t>(i)];
      if (j < n)
        v(j) += tab.rhs()(i);
      else if (j < 2 * n)
        v(j - n) -= tab.rhs()(i);
    }
    return v;
  };

  if (unbounded_col >= 0) {
    RVector dir = RVector::Zero(cols + m);
    dir(unbounded_col) = 1;
    for (Index i = 0; i < tab.rows(); ++i)
      dir(tab.basis()[static_cast<std::size_t>(i)]) = -tab.body()(i, unbounded_col);
    RVector ray = RVector::Zero(n);
    for (Index j = 0; j < n; ++j) ray(j) = dir(j) - dir(n + j);
    return LPOutcome{LPStatus::Unbounded, 0, point_from_basis(), std::move(ray)};
  }

  LPOutcome out;
  out.status = LPStatus::Optimal;
  out.point = point_from_basis();
  out.value = lp.objective.dot(out.point);
  return out;
}

}  // namespace setopt
