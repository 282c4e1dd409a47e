#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "avq/channel.hpp"
#include "avq/code.hpp"
#include "avq/enumeration.hpp"
#include "avq/types.hpp"

namespace test_support {

using avq::CMatrix;
using avq::Complex;

inline std::mt19937_64 seeded_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline double rand_std_normal(std::mt19937_64& rng) {
  // Box-Muller on the 53-bit uniform, so the stream is compiler-independent.
  const double u1 = std::max(avq::uniform01(rng), 1e-300);
  const double u2 = avq::uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline CMatrix random_complex_matrix(std::mt19937_64& rng, int dim) {
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(rand_std_normal(rng), rand_std_normal(rng));
    }
  }
  return g;
}

inline avq::DensityOp random_density(std::mt19937_64& rng, int dim) {
  CMatrix g = random_complex_matrix(rng, dim);
  CMatrix m = g * g.adjoint();
  m /= m.trace();
  return avq::DensityOp(std::move(m));
}

/// Real-entried random state (real symmetric PSD, unit trace).
inline avq::DensityOp random_real_density(std::mt19937_64& rng, int dim) {
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rand_std_normal(rng);
  }
  Eigen::MatrixXd m = g * g.transpose();
  m /= m.trace();
  return avq::DensityOp(m.cast<Complex>());
}

inline avq::SimplexDist random_simplex(std::mt19937_64& rng, int k) {
  std::vector<double> p(static_cast<size_t>(k));
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(std::max(avq::uniform01(rng), 1e-300));
    sum += v;
  }
  for (double& v : p) v /= sum;
  return avq::SimplexDist(std::move(p));
}

/// Random POVM with J outcomes in dimension dim: normalize random PSD
/// blocks by the inverse square root of their sum.
inline std::vector<CMatrix> random_povm(std::mt19937_64& rng, int dim, int J) {
  std::vector<CMatrix> blocks;
  CMatrix total = CMatrix::Zero(dim, dim);
  for (int j = 0; j < J; ++j) {
    CMatrix g = random_complex_matrix(rng, dim);
    CMatrix m = g * g.adjoint() + 1e-6 * CMatrix::Identity(dim, dim);
    total += m;
    blocks.push_back(std::move(m));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
  CMatrix inv_sqrt = es.eigenvectors() *
                     es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix() *
                     es.eigenvectors().adjoint();
  for (auto& m : blocks) m = inv_sqrt * m * inv_sqrt;
  return blocks;
}

/// Deterministic-encoder code with J distinct codewords of length n over
/// `num_symbols` letters, and a random POVM decoder in dimension dim^n.
/// Requires J <= num_symbols^n (distinctness).
inline avq::Code random_deterministic_code(std::mt19937_64& rng, int n, int J, int num_symbols,
                                           int letter_dim) {
  const long long cols = avq::pow_ll(num_symbols, n);
  if (J > cols) {
    avq::throw_invariant("random_deterministic_code: cannot pick " + std::to_string(J) +
                         " distinct codewords from " + std::to_string(cols) + " sequences");
  }
  std::vector<long long> words(static_cast<size_t>(cols));
  for (long long i = 0; i < cols; ++i) words[static_cast<size_t>(i)] = i;
  for (size_t i = words.size(); i > 1; --i) {
    std::swap(words[i - 1], words[static_cast<size_t>(avq::uniform_int(rng, static_cast<int>(i)))]);
  }
  Eigen::MatrixXd enc = Eigen::MatrixXd::Zero(J, cols);
  for (int j = 0; j < J; ++j) enc(j, words[static_cast<size_t>(j)]) = 1.0;
  int dim = 1;
  for (int i = 0; i < n; ++i) dim *= letter_dim;
  return avq::Code(n, num_symbols, std::move(enc), random_povm(rng, dim, J));
}

/// Fully stochastic code: random encoder rows, random POVM decoders.
inline avq::Code random_stochastic_code(std::mt19937_64& rng, int n, int J, int num_symbols,
                                        int letter_dim) {
  const long long cols = avq::pow_ll(num_symbols, n);
  Eigen::MatrixXd enc(J, cols);
  for (int j = 0; j < J; ++j) {
    double sum = 0.0;
    for (long long a = 0; a < cols; ++a) {
      enc(j, a) = -std::log(std::max(avq::uniform01(rng), 1e-300));
      sum += enc(j, a);
    }
    enc.row(j) /= sum;
  }
  int dim = 1;
  for (int i = 0; i < n; ++i) dim *= letter_dim;
  return avq::Code(n, num_symbols, std::move(enc), random_povm(rng, dim, J));
}

/// Random classical-quantum channel family over a binary alphabet.
inline std::vector<avq::CQChannel> random_family(std::mt19937_64& rng, int num_states, int arity,
                                                 int dim, bool real_entries = false) {
  std::vector<avq::CQChannel> family;
  std::vector<std::string> alphabet;
  for (int a = 0; a < arity; ++a) alphabet.push_back(std::to_string(a));
  for (int t = 0; t < num_states; ++t) {
    std::vector<avq::DensityOp> states;
    for (int a = 0; a < arity; ++a) {
      states.push_back(real_entries ? random_real_density(rng, dim) : random_density(rng, dim));
    }
    family.emplace_back(alphabet, std::move(states));
  }
  return family;
}

// Scalar oracles used to freeze expected values independently of the
// implementation path under test.

inline double oracle_h2(double p) {
  double h = 0.0;
  if (p > 0) h -= p * std::log2(p);
  if (1 - p > 0) h -= (1 - p) * std::log2(1 - p);
  return h;
}

inline double oracle_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace test_support
