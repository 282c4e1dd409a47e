#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "avq/error.hpp"

namespace avq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double hermitian = 1e-10;   // elementwise |M - M^dagger|
inline constexpr double trace_one = 1e-9;    // |tr - 1|
inline constexpr double psd = 1e-9;          // smallest eigenvalue >= -psd
inline constexpr double simplex_sum = 1e-9;  // |sum - 1|
inline constexpr double simplex_neg = 1e-12; // entries in [-simplex_neg, 0] clamp to 0
inline constexpr double eig_clamp = 1e-12;   // spectrum entries below this are treated as 0
inline constexpr double povm_complete = 1e-8;
}  // namespace tol

inline constexpr int kDefaultDimCap = 1024;

/// Density operator on a finite-dimensional Hilbert space.
///
/// Construction validates Hermiticity (asymmetry below tol::hermitian is
/// absorbed by symmetrizing (M + M^dagger)/2, anything larger is rejected),
/// unit trace and positive semidefiniteness. Instances are immutable.
class DensityOp {
 public:
  explicit DensityOp(CMatrix m, const std::string& context = {});

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix& mat() const { return mat_; }

  static DensityOp pure(const Eigen::VectorXcd& ket);
  static DensityOp diagonal(const std::vector<double>& probs);
  static DensityOp maximally_mixed(int dim);
  /// Computational basis projector |k><k| in dimension dim.
  static DensityOp basis_projector(int dim, int k);

 private:
  CMatrix mat_;
};

/// Finite probability vector. Entries in [-1e-12, 0] are clamped to 0 at
/// construction; genuinely negative entries or a bad total are rejected.
class SimplexDist {
 public:
  explicit SimplexDist(std::vector<double> probs, const std::string& context = {});

  int support_size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<size_t>(i)]; }
  const std::vector<double>& probs() const { return probs_; }

  static SimplexDist uniform(int k);
  static SimplexDist point_mass(int k, int at);

 private:
  std::vector<double> probs_;
};

/// Weighted family of equal-dimension density operators.
struct Ensemble {
  SimplexDist dist;
  std::vector<DensityOp> states;

  Ensemble(SimplexDist d, std::vector<DensityOp> s);
  int dim() const { return states.empty() ? 0 : states.front().dim(); }
};

}  // namespace avq
