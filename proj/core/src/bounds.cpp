#include "avq/bounds.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "avq/enumeration.hpp"

namespace avq {

namespace {

std::vector<double> to_probs(const std::vector<int>& counts, int grid) {
  std::vector<double> p(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) p[i] = static_cast<double>(counts[i]) / grid;
  return p;
}

// Move `step` mass between coordinate pairs while it strictly improves,
// halving the step down to tol_step. Deterministic sweep order.
std::pair<std::vector<double>, double> refine_simplex(
    const std::function<double(const std::vector<double>&)>& obj, std::vector<double> x,
    double best, double step0, double tol_step, bool maximize) {
  const double sgn = maximize ? 1.0 : -1.0;
  double step = step0;
  const int k = static_cast<int>(x.size());
  while (step >= tol_step) {
    bool improved = false;
    for (int i = 0; i < k; ++i) {
      if (x[static_cast<size_t>(i)] < step) continue;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        std::vector<double> y = x;
        y[static_cast<size_t>(i)] -= step;
        y[static_cast<size_t>(j)] += step;
        const double v = obj(y);
        if (sgn * (v - best) > 1e-15) {
          x = std::move(y);
          best = v;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
  }
  return {std::move(x), best};
}

double tr_x_log(const CMatrix& m, const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const CMatrix xr = es.eigenvectors().adjoint() * x * es.eigenvectors();
  double acc = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = std::max(es.eigenvalues()[k], 1e-18);
    acc += std::log2(lam) * xr(k, k).real();
  }
  return acc;
}

}  // namespace

int auto_grid(int support_size) {
  if (support_size <= 2) return 64;
  if (support_size == 3) return 24;
  return 12;
}

double chi_under_jammer(const std::vector<CQChannel>& legal, const SimplexDist& p,
                        const SimplexDist& q, double base) {
  CQChannel mixed = mixture_channel(legal, q);
  return holevo_chi(Ensemble(p, std::move(mixed.states)), base);
}

std::pair<SimplexDist, double> min_chi_over_jammer(const std::vector<CQChannel>& legal,
                                                   const SimplexDist& p, const BoundOpts& opts) {
  const int nt = static_cast<int>(legal.size());
  if (nt == 0) throw_invariant("min_chi_over_jammer: empty family");
  if (p.support_size() != legal.front().arity()) {
    throw_invariant("min_chi_over_jammer: input distribution support " +
                    std::to_string(p.support_size()) + " does not match alphabet size " +
                    std::to_string(legal.front().arity()));
  }
  if (nt == 1) {
    return {SimplexDist::point_mass(1, 0), chi_under_jammer(legal, p, SimplexDist::point_mass(1, 0), opts.base)};
  }

  auto obj = [&](const std::vector<double>& qv) {
    return chi_under_jammer(legal, p, SimplexDist(qv), opts.base);
  };

  const int grid = opts.q_grid > 0 ? opts.q_grid : auto_grid(nt);
  std::vector<double> best_q;
  double best = 0.0;
  bool first = true;
  for (const auto& counts : compositions(grid, nt)) {
    std::vector<double> qv = to_probs(counts, grid);
    const double v = obj(qv);
    if (first || v < best - 1e-15) {
      best = v;
      best_q = std::move(qv);
      first = false;
    }
  }
  auto [qstar, vstar] = refine_simplex(obj, std::move(best_q), best, 1.0 / grid, opts.refine_tol,
                                       /*maximize=*/false);
  return {SimplexDist(std::move(qstar)), vstar};
}

double leakage_term(const std::vector<CQChannel>& wiretap, const SimplexDist& p, int order,
                    const BoundOpts& opts) {
  if (wiretap.empty()) throw_invariant("leakage_term: empty family");
  if (order < 1) throw_invariant("leakage_term: order must be >= 1");
  const int nt = static_cast<int>(wiretap.size());
  const int na = wiretap.front().arity();
  const int d = wiretap.front().out_dim;

  long long block_dim = 1;
  for (int i = 0; i < order; ++i) {
    block_dim *= d;
    if (block_dim > opts.dim_cap) {
      throw_cap("leakage_term: output dimension " + std::to_string(d) + "^" +
                std::to_string(order) + " exceeds cap " + std::to_string(opts.dim_cap));
    }
  }
  const long long nt_seqs = pow_ll(nt, order);
  if (nt_seqs > opts.sweep_cap) {
    throw_cap("leakage_term: jammer space " + std::to_string(nt_seqs) + " exceeds sweep cap " +
              std::to_string(opts.sweep_cap));
  }
  const long long na_seqs = pow_ll(na, order);

  std::vector<double> pn(static_cast<size_t>(na_seqs));
  for (long long ai = 0; ai < na_seqs; ++ai) {
    double prob = 1.0;
    for (int s : nth_sequence(ai, na, order)) prob *= p[s];
    pn[static_cast<size_t>(ai)] = prob;
  }
  SimplexDist pdist(pn);

  double worst = 0.0;
  for (long long ti = 0; ti < nt_seqs; ++ti) {
    const std::vector<int> t_seq = nth_sequence(ti, nt, order);
    std::vector<DensityOp> states;
    states.reserve(static_cast<size_t>(na_seqs));
    for (long long ai = 0; ai < na_seqs; ++ai) {
      states.push_back(n_fold_output(wiretap, t_seq, nth_sequence(ai, na, order), opts.dim_cap));
    }
    const double chi = holevo_chi(Ensemble(pdist, std::move(states)), opts.base) / order;
    if (chi > worst) worst = chi;
  }
  return worst;
}

BoundReport secrecy_lower_bound(const AVWC& channel, const BoundOpts& opts) {
  const int na = static_cast<int>(channel.alphabet.size());
  if (na > opts.alphabet_cap) {
    throw_cap("secrecy_lower_bound: alphabet size " + std::to_string(na) +
              " exceeds exhaustive-grid cap " + std::to_string(opts.alphabet_cap));
  }

  auto objective = [&](const std::vector<double>& pv) {
    SimplexDist p(pv);
    const double legal = min_chi_over_jammer(channel.legal, p, opts).second;
    const double leak = leakage_term(channel.wiretap, p, opts.leakage_order, opts);
    return legal - leak;
  };

  const int grid = opts.p_grid > 0 ? opts.p_grid : auto_grid(na);
  std::vector<double> best_p;
  double best = 0.0;
  bool first = true;
  for (const auto& counts : compositions(grid, na)) {
    std::vector<double> pv = to_probs(counts, grid);
    const double v = objective(pv);
    if (first || v > best + 1e-15) {
      best = v;
      best_p = std::move(pv);
      first = false;
    }
  }
  const auto refined = refine_simplex(objective, std::move(best_p), best, 1.0 / grid,
                                      opts.refine_tol, /*maximize=*/true);

  // Recompute both terms at the maximizer so value = legal - leakage holds
  // exactly in the report.
  BoundReport report{
      .value = 0.0,
      .argmax_P = SimplexDist(refined.first),
      .argmin_Q = SimplexDist::uniform(channel.num_states()),
      .legal_term = 0.0,
      .leakage_term = 0.0,
      .leakage_order = opts.leakage_order,
      .grid_spec = {},
  };
  auto [qstar, legal] = min_chi_over_jammer(channel.legal, report.argmax_P, opts);
  report.argmin_Q = std::move(qstar);
  report.legal_term = legal;
  report.leakage_term = leakage_term(channel.wiretap, report.argmax_P, opts.leakage_order, opts);
  report.value = report.legal_term - report.leakage_term;

  const int qgrid = opts.q_grid > 0 ? opts.q_grid : auto_grid(channel.num_states());
  std::ostringstream spec;
  spec << "P grid " << grid << "/dim, Q grid " << qgrid << "/dim, coordinate refinement to "
       << opts.refine_tol << "; leakage order " << opts.leakage_order
       << "; lower bound, search-resolution limited";
  report.grid_spec = spec.str();
  return report;
}

DichotomyReport dichotomy_report(const AVWC& channel, const BoundOpts& opts) {
  DichotomyReport rep{
      .symmetrizable = false,
      .sym_residual = 0.0,
      .random_lb = secrecy_lower_bound(channel, opts),
      .deterministic_secrecy_lb = 0.0,
  };
  const SymResult sym = check_symmetrizable(channel.legal, opts.sym_tol);
  rep.symmetrizable = sym.symmetrizable;
  rep.sym_residual = sym.residual;
  rep.deterministic_secrecy_lb = rep.symmetrizable ? 0.0 : rep.random_lb.clamped();
  return rep;
}

double chi_q_derivative(const std::vector<CQChannel>& legal, const SimplexDist& p, double q,
                        double base) {
  if (legal.size() != 2) {
    throw_invariant("chi_q_derivative: needs exactly two jammer states, got " +
                    std::to_string(legal.size()));
  }
  if (q < 0.0 || q > 1.0) throw_invariant("chi_q_derivative: q outside [0, 1]");
  const int na = legal.front().arity();
  const int d = legal.front().out_dim;

  CMatrix avg = CMatrix::Zero(d, d);
  CMatrix avg_dot = CMatrix::Zero(d, d);
  double deriv = 0.0;
  for (int a = 0; a < na; ++a) {
    const CMatrix ua = q * legal[0].at(a).mat() + (1.0 - q) * legal[1].at(a).mat();
    const CMatrix delta = legal[0].at(a).mat() - legal[1].at(a).mat();
    avg += p[a] * ua;
    avg_dot += p[a] * delta;
    if (p[a] > 0.0) deriv += p[a] * tr_x_log(ua, delta);
  }
  deriv -= tr_x_log(avg, avg_dot);
  return deriv / std::log2(base);
}

double chi_gradient_check(const std::vector<CQChannel>& legal, const SimplexDist& p, double q,
                          double h) {
  if (h <= 0.0 || h > 1e-3) throw_invariant("chi_gradient_check: step must lie in (0, 1e-3]");
  if (q - h < 0.0 || q + h > 1.0) {
    throw_invariant("chi_gradient_check: q too close to the simplex boundary for step h");
  }
  auto chi_at = [&](double qq) {
    return chi_under_jammer(legal, p, SimplexDist({qq, 1.0 - qq}), 2.0);
  };
  const double fd = (chi_at(q + h) - chi_at(q - h)) / (2.0 * h);
  return std::abs(chi_q_derivative(legal, p, q) - fd);
}

}  // namespace avq
