#include "avq/sym.hpp"

#include <cmath>
#include <sstream>

#include "avq/simplex.hpp"

namespace avq {

SymWitness::SymWitness(Eigen::MatrixXd t) : tau(std::move(t)) {
  for (Eigen::Index a = 0; a < tau.rows(); ++a) {
    double sum = 0.0;
    for (Eigen::Index s = 0; s < tau.cols(); ++s) {
      double& v = tau(a, s);
      if (v < 0.0) {
        if (v < -tol::simplex_neg) {
          std::ostringstream os;
          os << "witness row " << a << " has negative entry " << v;
          throw_invariant(os.str());
        }
        v = 0.0;
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol::simplex_sum) {
      std::ostringstream os;
      os << "witness row " << a << " sums to " << sum << ", expected 1";
      throw_invariant(os.str());
    }
    tau.row(a) /= sum;
  }
}

double residual(const std::vector<CQChannel>& family, const SymWitness& tau) {
  if (family.empty()) throw_invariant("residual: empty family");
  const int na = family.front().arity();
  const int nt = static_cast<int>(family.size());
  if (tau.tau.rows() != na || tau.tau.cols() != nt) {
    throw_invariant("residual: witness is " + std::to_string(tau.tau.rows()) + "x" +
                    std::to_string(tau.tau.cols()) + ", family needs " + std::to_string(na) + "x" +
                    std::to_string(nt));
  }
  const int d = family.front().out_dim;
  double worst = 0.0;
  for (int a = 0; a < na; ++a) {
    for (int b = a + 1; b < na; ++b) {
      CMatrix diff = CMatrix::Zero(d, d);
      for (int t = 0; t < nt; ++t) {
        diff += tau.tau(a, t) * family[static_cast<size_t>(t)].at(b).mat();
        diff -= tau.tau(b, t) * family[static_cast<size_t>(t)].at(a).mat();
      }
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

SymResult check_symmetrizable(const std::vector<CQChannel>& family, double tol) {
  if (family.empty()) throw_invariant("check_symmetrizable: empty family");
  if (tol <= 0.0) throw_invariant("check_symmetrizable: tolerance must be positive");
  const int na = family.front().arity();
  const int nt = static_cast<int>(family.size());
  const int d = family.front().out_dim;

  // Variables: tau(a,t) at index a*nt + t, then the bound variable s.
  const int nvar = na * nt + 1;
  const int s_col = na * nt;

  Eigen::MatrixXd eq = Eigen::MatrixXd::Zero(na, nvar);
  Eigen::VectorXd eq_b = Eigen::VectorXd::Ones(na);
  for (int a = 0; a < na; ++a) {
    for (int t = 0; t < nt; ++t) eq(a, a * nt + t) = 1.0;
  }

  // One row pair (g - s <= 0, -g - s <= 0) per unordered symbol pair and
  // upper-triangle matrix entry, real and imaginary parts separately.
  std::vector<Eigen::VectorXd> rows;
  for (int a = 0; a < na; ++a) {
    for (int b = a + 1; b < na; ++b) {
      for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
          for (int part = 0; part < (i == j ? 1 : 2); ++part) {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(nvar);
            for (int t = 0; t < nt; ++t) {
              const Complex wb = family[static_cast<size_t>(t)].at(b).mat()(i, j);
              const Complex wa = family[static_cast<size_t>(t)].at(a).mat()(i, j);
              g(a * nt + t) += part == 0 ? wb.real() : wb.imag();
              g(b * nt + t) -= part == 0 ? wa.real() : wa.imag();
            }
            rows.push_back(std::move(g));
          }
        }
      }
    }
  }

  Eigen::MatrixXd le = Eigen::MatrixXd::Zero(2 * static_cast<int>(rows.size()), nvar);
  Eigen::VectorXd le_b = Eigen::VectorXd::Zero(le.rows());
  for (size_t r = 0; r < rows.size(); ++r) {
    le.row(2 * static_cast<Eigen::Index>(r)) = rows[r];
    le(2 * static_cast<Eigen::Index>(r), s_col) = -1.0;
    le.row(2 * static_cast<Eigen::Index>(r) + 1) = -rows[r];
    le(2 * static_cast<Eigen::Index>(r) + 1, s_col) = -1.0;
  }

  Eigen::VectorXd c = Eigen::VectorXd::Zero(nvar);
  c(s_col) = 1.0;

  const LpResult lp = solve_lp(eq, eq_b, le, le_b, c);

  Eigen::MatrixXd tau(na, nt);
  for (int a = 0; a < na; ++a) {
    for (int t = 0; t < nt; ++t) tau(a, t) = lp.x[static_cast<size_t>(a * nt + t)];
  }
  SymWitness best(std::move(tau));
  const double res = residual(family, best);

  if (lp.status == LpResult::Status::iteration_limit) {
    std::ostringstream os;
    os << "symmetrizability solve hit the iteration cap; best residual " << res;
    throw_indeterminate(os.str());
  }
  if (lp.status != LpResult::Status::optimal) {
    std::ostringstream os;
    os << "symmetrizability solve failed (status " << static_cast<int>(lp.status)
       << "); best residual " << res;
    throw_indeterminate(os.str());
  }

  SymResult out;
  out.tolerance = tol;
  out.residual = res;
  out.symmetrizable = res <= tol;
  if (out.symmetrizable) out.witness = std::move(best);
  return out;
}

}  // namespace avq
