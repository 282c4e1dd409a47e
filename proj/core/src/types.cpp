#include "avq/types.hpp"

#include <cmath>
#include <sstream>

namespace avq {

namespace {

std::string where(const std::string& context) {
  return context.empty() ? std::string{} : context + ": ";
}

}  // namespace

DensityOp::DensityOp(CMatrix m, const std::string& context) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw_invariant(where(context) + "density operator must be a nonempty square matrix, got " +
                    std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
  }
  const double asym = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::hermitian) {
    std::ostringstream os;
    os << where(context) << "matrix is not Hermitian (asymmetry " << asym << ")";
    throw_invariant(os.str());
  }
  mat_ = ((mat_ + mat_.adjoint()) / 2.0).eval();

  const double tr_dev = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (tr_dev > tol::trace_one) {
    std::ostringstream os;
    os << where(context) << "trace deviates from 1 by " << tr_dev;
    throw_invariant(os.str());
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::psd) {
    std::ostringstream os;
    os << where(context) << "matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw_invariant(os.str());
  }
}

DensityOp DensityOp::pure(const Eigen::VectorXcd& ket) {
  Eigen::VectorXcd v = ket / ket.norm();
  return DensityOp(v * v.adjoint());
}

DensityOp DensityOp::diagonal(const std::vector<double>& probs) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(probs.size()),
                            static_cast<Eigen::Index>(probs.size()));
  for (size_t i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
  return DensityOp(std::move(m));
}

DensityOp DensityOp::maximally_mixed(int dim) {
  return DensityOp(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOp DensityOp::basis_projector(int dim, int k) {
  CMatrix m = CMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityOp(std::move(m));
}

SimplexDist::SimplexDist(std::vector<double> probs, const std::string& context)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw_invariant(where(context) + "distribution has empty support");
  double sum = 0.0;
  for (size_t i = 0; i < probs_.size(); ++i) {
    double& p = probs_[i];
    if (p < 0.0) {
      if (p >= -tol::simplex_neg) {
        p = 0.0;
      } else {
        std::ostringstream os;
        os << where(context) << "entry " << i << " is negative (" << p << ")";
        throw_invariant(os.str());
      }
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::simplex_sum) {
    std::ostringstream os;
    os << where(context) << "entries sum to " << sum << ", expected 1";
    throw_invariant(os.str());
  }
}

SimplexDist SimplexDist::uniform(int k) {
  return SimplexDist(std::vector<double>(static_cast<size_t>(k), 1.0 / k));
}

SimplexDist SimplexDist::point_mass(int k, int at) {
  std::vector<double> p(static_cast<size_t>(k), 0.0);
  p[static_cast<size_t>(at)] = 1.0;
  return SimplexDist(std::move(p));
}

Ensemble::Ensemble(SimplexDist d, std::vector<DensityOp> s)
    : dist(std::move(d)), states(std::move(s)) {
  if (static_cast<int>(states.size()) != dist.support_size()) {
    throw_invariant("ensemble has " + std::to_string(states.size()) + " states but distribution has support " +
                    std::to_string(dist.support_size()));
  }
  for (const auto& st : states) {
    if (st.dim() != states.front().dim()) {
      throw_invariant("ensemble states have mixed dimensions " + std::to_string(states.front().dim()) +
                      " and " + std::to_string(st.dim()));
    }
  }
}

}  // namespace avq
