#pragma once

#include <Eigen/Dense>
#include <vector>

namespace avq {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded, iteration_limit };
  Status status = Status::optimal;
  double objective = 0.0;
  std::vector<double> x;  // structural variables only
  long iterations = 0;
};

/// Minimize c^T x subject to eq*x = eq_b, le*x <= le_b, x >= 0.
///
/// Dense two-phase primal simplex on the full tableau with Bland's rule
/// (entering: lowest-index negative reduced cost; leaving: lowest basis
/// index among the ratio-test ties), so degenerate pivots cannot cycle.
/// Intended for the small programs this project generates, not as a
/// general-purpose LP code. max_iterations <= 0 picks a size-based cap.
LpResult solve_lp(const Eigen::MatrixXd& eq, const Eigen::VectorXd& eq_b,
                  const Eigen::MatrixXd& le, const Eigen::VectorXd& le_b,
                  const Eigen::VectorXd& c, long max_iterations = 0);

}  // namespace avq
