#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avq/types.hpp"

namespace avq {

/// Blocklength-n code with a stochastic encoder and a POVM decoder.
/// Encoder rows are indexed by message, columns enumerate A^n
/// lexicographically (first letter most significant). n = 0 is the legal
/// empty prefix: one column, 1x1 decoders.
struct Code {
  int n = 0;
  int J = 0;
  int num_symbols = 0;
  Eigen::MatrixXd encoder;        // J x num_symbols^n, rows sum to 1
  std::vector<CMatrix> decoders;  // J PSD matrices partitioning the identity

  Code(int n, int num_symbols, Eigen::MatrixXd encoder, std::vector<CMatrix> decoders,
       const std::string& context = {});

  int block_dim() const { return static_cast<int>(decoders.front().rows()); }
  long long encoder_cols() const { return encoder.cols(); }

  /// True when every row places probability 1 on a single sequence.
  bool has_deterministic_encoder() const;
  /// Column index of message j's codeword (deterministic rows only).
  long long codeword_index(int j) const;
};

/// Correlation-assisted code: one encoder per observed x^n, one POVM per
/// observed y^n (both enumerated lexicographically).
struct CorrCode {
  int n = 0;
  int J = 0;
  int num_symbols = 0;
  int x_arity = 0;
  int y_arity = 0;
  std::vector<Eigen::MatrixXd> encoders;        // |X|^n entries
  std::vector<std::vector<CMatrix>> decoders;   // |Y|^n POVMs

  CorrCode(int n, int num_symbols, int x_arity, int y_arity,
           std::vector<Eigen::MatrixXd> encoders, std::vector<std::vector<CMatrix>> decoders,
           const std::string& context = {});
};

/// How to realize "max over jammer sequences" operationally.
struct JammerSweep {
  enum class Mode { exhaustive, sampled };
  Mode mode = Mode::exhaustive;
  long long cap = 4096;  // exhaustive: |theta|^n limit; sampled: draw count
  uint64_t seed = 0;     // sampled mode only
};

/// Sum-to-identity check shared by every evaluation entry point.
void verify_povm(const std::vector<CMatrix>& decoders, const std::string& context = {});

}  // namespace avq
