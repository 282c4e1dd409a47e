#include "avq/simplex.hpp"

#include <cmath>

#include "avq/error.hpp"

namespace avq {

namespace {

constexpr double kPivotEps = 1e-10;
constexpr double kReducedEps = 1e-10;
constexpr double kPhase1Feasible = 1e-8;

struct Tableau {
  // rows 0..m-1: constraints, row m: reduced costs; col ncols: rhs.
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int m, ncols;

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= m; ++i) {
      if (i == r) continue;
      const double f = t(i, c);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    basis[static_cast<size_t>(r)] = c;
  }

  // Bland's rule iteration over columns [0, limit). Returns true when the
  // reduced-cost row is nonnegative (optimal), false on iteration cap.
  bool iterate(int limit, long max_iters, long& iters, bool& unbounded) {
    unbounded = false;
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (t(m, j) < -kReducedEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) > kPivotEps) {
          const double ratio = t(i, ncols) / t(i, enter);
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 &&
               basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) {
        unbounded = true;
        return true;
      }
      pivot(leave, enter);
      if (++iters > max_iters) return false;
    }
  }
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& eq, const Eigen::VectorXd& eq_b,
                  const Eigen::MatrixXd& le, const Eigen::VectorXd& le_b,
                  const Eigen::VectorXd& c, long max_iterations) {
  const int n = static_cast<int>(c.size());
  const int me = static_cast<int>(eq.rows());
  const int ml = static_cast<int>(le.rows());
  const int m = me + ml;
  if ((me > 0 && eq.cols() != n) || (ml > 0 && le.cols() != n)) {
    throw_invariant("solve_lp: constraint matrices do not match objective size");
  }

  const int nslack = ml;
  const int nart = m;
  const int nstruct = n + nslack;  // structural + slack; artificials follow
  const int ncols = nstruct + nart;
  if (max_iterations <= 0) max_iterations = 200L * (m + ncols) + 10000L;

  Tableau tab;
  tab.m = m;
  tab.ncols = ncols;
  tab.t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
  tab.basis.assign(static_cast<size_t>(m), -1);

  for (int i = 0; i < me; ++i) {
    tab.t.block(i, 0, 1, n) = eq.row(i);
    tab.t(i, ncols) = eq_b(i);
  }
  for (int i = 0; i < ml; ++i) {
    tab.t.block(me + i, 0, 1, n) = le.row(i);
    tab.t(me + i, n + i) = 1.0;  // slack
    tab.t(me + i, ncols) = le_b(i);
  }
  // Normalize rhs signs, then install the artificial basis.
  for (int i = 0; i < m; ++i) {
    if (tab.t(i, ncols) < 0.0) tab.t.row(i) = -tab.t.row(i);
    tab.t(i, nstruct + i) = 1.0;
    tab.basis[static_cast<size_t>(i)] = nstruct + i;
  }

  LpResult res;

  // Phase 1: minimize the sum of artificials.
  for (int j = 0; j <= ncols; ++j) {
    double z = 0.0;
    for (int i = 0; i < m; ++i) z += tab.t(i, j);
    const double cost = (j >= nstruct && j < ncols) ? 1.0 : 0.0;
    tab.t(m, j) = cost - z;
  }
  tab.t(m, ncols) = -tab.t.block(0, ncols, m, 1).sum();

  bool unbounded = false;
  if (!tab.iterate(ncols, max_iterations, res.iterations, unbounded)) {
    res.status = LpResult::Status::iteration_limit;
  } else if (-tab.t(m, ncols) > kPhase1Feasible) {
    res.status = LpResult::Status::infeasible;
  }

  if (res.status == LpResult::Status::optimal) {
    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[static_cast<size_t>(i)] < nstruct) continue;
      int col = -1;
      for (int j = 0; j < nstruct; ++j) {
        if (std::abs(tab.t(i, j)) > kPivotEps) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.pivot(i, col);
      // Otherwise the row is redundant; the artificial stays basic at zero
      // and is simply never allowed to re-enter below.
    }

    // Phase 2: true costs (zero on slacks, artificials blocked).
    for (int j = 0; j <= ncols; ++j) {
      double z = 0.0;
      for (int i = 0; i < m; ++i) {
        const int b = tab.basis[static_cast<size_t>(i)];
        if (b < n) z += c(b) * tab.t(i, j);
      }
      const double cost = (j < n) ? c(j) : 0.0;
      tab.t(m, j) = cost - z;
    }
    {
      double z = 0.0;
      for (int i = 0; i < m; ++i) {
        const int b = tab.basis[static_cast<size_t>(i)];
        if (b < n) z += c(b) * tab.t(i, ncols);
      }
      tab.t(m, ncols) = -z;
    }

    if (!tab.iterate(nstruct, max_iterations, res.iterations, unbounded)) {
      res.status = LpResult::Status::iteration_limit;
    } else if (unbounded) {
      res.status = LpResult::Status::unbounded;
    }
  }

  res.x.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[static_cast<size_t>(i)];
    if (b < n) res.x[static_cast<size_t>(b)] = tab.t(i, ncols);
  }
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += c(j) * res.x[static_cast<size_t>(j)];
  return res;
}

}  // namespace avq
