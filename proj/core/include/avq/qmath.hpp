#pragma once

#include <utility>
#include <vector>

#include "avq/types.hpp"

namespace avq {

enum class Subsystem { first, second };

/// S(rho) = -tr(rho log rho) in the given log base. Spectrum entries below
/// tol::eig_clamp contribute 0 (0 log 0 := 0), so the result is always finite.
double von_neumann_entropy(const DensityOp& rho, double base = 2.0);

/// Entropy of a classical spectrum; shared backend for the quantum entropies.
double entropy_of_spectrum(const std::vector<double>& probs, double base = 2.0);

/// chi(ens) = S(sum_x p_x rho_x) - sum_x p_x S(rho_x).
double holevo_chi(const Ensemble& ens, double base = 2.0);

/// F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1].
double fidelity(const DensityOp& rho, const DensityOp& sigma);

/// (1/2) || rho - sigma ||_1, in [0, 1].
double trace_distance(const DensityOp& rho, const DensityOp& sigma);

/// Kronecker product a (x) b; errors if the result dimension exceeds dim_cap.
DensityOp tensor(const DensityOp& a, const DensityOp& b, int dim_cap = kDefaultDimCap);

/// Reduced state of a bipartite rho on C^{d1} (x) C^{d2}.
DensityOp partial_trace(const DensityOp& rho, int d1, int d2, Subsystem keep);

/// For a channel given by Kraus operators {K_i} (sum K_i^dagger K_i = id):
/// returns the receiver output sum_i K_i rho K_i^dagger and the environment
/// output with entries E[i][j] = tr(K_i rho K_j^dagger).
std::pair<DensityOp, DensityOp> complementary_outputs(const std::vector<CMatrix>& kraus,
                                                      const DensityOp& rho);

}  // namespace avq
