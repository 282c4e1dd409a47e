#include "avq/qmath.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace avq {

double entropy_of_spectrum(const std::vector<double>& probs, double base) {
  if (base <= 1.0) throw_invariant("entropy log base must exceed 1");
  double h = 0.0;
  for (double p : probs) {
    if (p > tol::eig_clamp) h -= p * std::log2(p);
  }
  return h / std::log2(base);
}

double von_neumann_entropy(const DensityOp& rho, double base) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat(), Eigen::EigenvaluesOnly);
  std::vector<double> spec(es.eigenvalues().data(), es.eigenvalues().data() + rho.dim());
  return entropy_of_spectrum(spec, base);
}

double holevo_chi(const Ensemble& ens, double base) {
  CMatrix avg = CMatrix::Zero(ens.dim(), ens.dim());
  double mean_entropy = 0.0;
  for (int x = 0; x < ens.dist.support_size(); ++x) {
    const double p = ens.dist[x];
    if (p == 0.0) continue;
    avg += p * ens.states[static_cast<size_t>(x)].mat();
    mean_entropy += p * von_neumann_entropy(ens.states[static_cast<size_t>(x)], base);
  }
  // Concavity makes chi nonnegative; rounding can leave a -1e-16 residue.
  return std::max(0.0, von_neumann_entropy(DensityOp(std::move(avg)), base) - mean_entropy);
}

double fidelity(const DensityOp& rho, const DensityOp& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw_invariant("fidelity arguments have dimensions " + std::to_string(rho.dim()) + " and " +
                    std::to_string(sigma.dim()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat());
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  CMatrix sqrt_rho =
      es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  CMatrix inner = sqrt_rho * sigma.mat() * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<CMatrix> es2((inner + inner.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
  double root_sum = 0.0;
  for (int i = 0; i < es2.eigenvalues().size(); ++i) {
    root_sum += std::sqrt(std::max(0.0, es2.eigenvalues()[i]));
  }
  return std::min(1.0, root_sum * root_sum);
}

double trace_distance(const DensityOp& rho, const DensityOp& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw_invariant("trace_distance arguments have dimensions " + std::to_string(rho.dim()) +
                    " and " + std::to_string(sigma.dim()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat() - sigma.mat(), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityOp tensor(const DensityOp& a, const DensityOp& b, int dim_cap) {
  const long prod = static_cast<long>(a.dim()) * b.dim();
  if (prod > dim_cap) {
    throw_cap("tensor product dimension " + std::to_string(prod) + " exceeds cap " +
              std::to_string(dim_cap));
  }
  return DensityOp(Eigen::kroneckerProduct(a.mat(), b.mat()).eval());
}

DensityOp partial_trace(const DensityOp& rho, int d1, int d2, Subsystem keep) {
  if (d1 <= 0 || d2 <= 0 || rho.dim() != d1 * d2) {
    throw_invariant("partial_trace: dimension " + std::to_string(rho.dim()) +
                    " does not factor as " + std::to_string(d1) + "*" + std::to_string(d2));
  }
  const int dk = keep == Subsystem::first ? d1 : d2;
  const int dt = keep == Subsystem::first ? d2 : d1;
  CMatrix out = CMatrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i) {
    for (int j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < dt; ++k) {
        if (keep == Subsystem::first) {
          acc += rho.mat()(i * d2 + k, j * d2 + k);
        } else {
          acc += rho.mat()(k * d2 + i, k * d2 + j);
        }
      }
      out(i, j) = acc;
    }
  }
  return DensityOp(std::move(out));
}

std::pair<DensityOp, DensityOp> complementary_outputs(const std::vector<CMatrix>& kraus,
                                                      const DensityOp& rho) {
  if (kraus.empty()) throw_invariant("complementary_outputs: empty Kraus set");
  const int d = rho.dim();
  CMatrix completeness = CMatrix::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.cols() != d) {
      throw_invariant("Kraus operator has " + std::to_string(k.cols()) + " columns, state has dimension " +
                      std::to_string(d));
    }
    completeness += k.adjoint() * k;
  }
  const double dev = (completeness - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol::trace_one) {
    std::ostringstream os;
    os << "Kraus set is not trace preserving (sum K^dagger K deviates from identity by " << dev << ")";
    throw_invariant(os.str());
  }

  const int dout = static_cast<int>(kraus.front().rows());
  CMatrix receiver = CMatrix::Zero(dout, dout);
  const int ne = static_cast<int>(kraus.size());
  CMatrix environment = CMatrix::Zero(ne, ne);
  for (int i = 0; i < ne; ++i) {
    receiver += kraus[static_cast<size_t>(i)] * rho.mat() * kraus[static_cast<size_t>(i)].adjoint();
    for (int j = 0; j < ne; ++j) {
      environment(i, j) =
          (kraus[static_cast<size_t>(i)] * rho.mat() * kraus[static_cast<size_t>(j)].adjoint()).trace();
    }
  }
  return {DensityOp(std::move(receiver)), DensityOp(std::move(environment))};
}

}  // namespace avq
