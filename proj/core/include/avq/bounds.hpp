#pragma once

#include <string>
#include <utility>
#include <vector>

#include "avq/channel.hpp"
#include "avq/sym.hpp"

namespace avq {

struct BoundOpts {
  int p_grid = 0;            // points per simplex dimension; 0 = auto by dimension
  int q_grid = 0;
  double refine_tol = 1e-6;  // coordinate-refinement step floor
  int leakage_order = 1;     // finite-n surrogate for the leakage limit
  double base = 2.0;
  double sym_tol = kDefaultSymTol;
  int alphabet_cap = 4;      // exhaustive P-grid limit
  int dim_cap = kDefaultDimCap;
  long long sweep_cap = 4096;
};

/// Grid resolution used when the caller does not pin one: 64 points per
/// dimension on a 1-dim simplex, coarser in higher dimension (refinement
/// recovers the lost resolution locally).
int auto_grid(int support_size);

struct BoundReport {
  double value = 0.0;  // legal_term - leakage_term; may be negative
  SimplexDist argmax_P;
  SimplexDist argmin_Q;
  double legal_term = 0.0;
  double leakage_term = 0.0;
  int leakage_order = 1;
  std::string grid_spec;

  double clamped() const { return value > 0.0 ? value : 0.0; }
};

struct DichotomyReport {
  bool symmetrizable = false;
  double sym_residual = 0.0;
  BoundReport random_lb;
  double deterministic_secrecy_lb = 0.0;  // 0 if symmetrizable, else max(value, 0)
};

/// chi(p, {sum_t q(t) W_t(a)}_a) in the opts log base.
double chi_under_jammer(const std::vector<CQChannel>& legal, const SimplexDist& p,
                        const SimplexDist& q, double base = 2.0);

/// Inner minimization over the jammer mixture: exhaustive simplex grid plus
/// local coordinate refinement. The returned value never exceeds the value
/// at any grid point; it upper-bounds the true minimum (exact whenever a
/// stationarity check certifies the minimizer, as in the bundled channels).
std::pair<SimplexDist, double> min_chi_over_jammer(const std::vector<CQChannel>& legal,
                                                   const SimplexDist& p,
                                                   const BoundOpts& opts = {});

/// Finite-order surrogate of the leakage limit:
///   max over t^n of (1/n) chi(P^{(x)n}, {V_{t^n}(a^n)}), exhaustively in t^n.
double leakage_term(const std::vector<CQChannel>& wiretap, const SimplexDist& p, int order,
                    const BoundOpts& opts = {});

/// Randomness-assisted secrecy lower bound:
///   max_P [ min_Q chi(P, U^Q) - leakage_term(P) ]
/// by P-grid search with coordinate-ascent refinement. Ties in the grid
/// break to the lexicographically first point.
BoundReport secrecy_lower_bound(const AVWC& channel, const BoundOpts& opts = {});

/// Symmetrizability decision combined with the bound: the deterministic
/// secrecy lower bound is 0 for a symmetrizable legal family and
/// max(value, 0) otherwise.
DichotomyReport dichotomy_report(const AVWC& channel, const BoundOpts& opts = {});

/// Analytic d/dq of chi(p, U^{(q,1-q)}) for a two-state family, via
/// d/dq S(rho(q)) = -tr(rho'(q) log rho(q)) on each term.
double chi_q_derivative(const std::vector<CQChannel>& legal, const SimplexDist& p, double q,
                        double base = 2.0);

/// |analytic derivative - central finite difference| at q with step h.
/// Errors when q is within h of the simplex boundary.
double chi_gradient_check(const std::vector<CQChannel>& legal, const SimplexDist& p, double q,
                          double h);

}  // namespace avq
