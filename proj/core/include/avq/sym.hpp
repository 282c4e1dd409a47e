#pragma once

#include <optional>
#include <vector>

#include "avq/channel.hpp"

namespace avq {

inline constexpr double kDefaultSymTol = 1e-8;

/// Input-conditioned jammer distributions tau(t|a): row a is a distribution
/// over the jammer states. Entries in [-1e-12, 0] are clamped and rows
/// renormalized at construction.
struct SymWitness {
  Eigen::MatrixXd tau;  // rows = alphabet order, cols = jammer-state order

  explicit SymWitness(Eigen::MatrixXd t);
};

struct SymResult {
  bool symmetrizable = false;
  std::optional<SymWitness> witness;  // present iff symmetrizable
  double residual = 0.0;              // violation at the best tau found
  double tolerance = kDefaultSymTol;
};

/// Largest violation of the symmetrization identity at tau:
///   max over pairs a != a' and matrix entries of
///   | sum_t tau(t|a) W_t(a')[i][j] - sum_t tau(t|a') W_t(a)[i][j] |.
double residual(const std::vector<CQChannel>& family, const SymWitness& tau);

/// Decide symmetrizability of the family by minimizing the residual as a
/// linear program (auxiliary bound variable over the constraint rows, real
/// and imaginary parts split, upper triangle only). The decision and the
/// reported residual come from residual() re-evaluated at the LP optimum;
/// an iteration-capped solve raises an indeterminate error carrying the
/// best residual seen rather than guessing.
SymResult check_symmetrizable(const std::vector<CQChannel>& family, double tol = kDefaultSymTol);

}  // namespace avq
