#pragma once

#include <utility>
#include <vector>

#include "avq/channel.hpp"
#include "avq/code.hpp"

namespace avq {

/// Average decoding error 1 - (1/J) sum_j sum_{a^n} E(a^n|j) tr(W_{t^n}(a^n) D_j).
double error_prob(const Code& code, const AVWC& channel, const std::vector<int>& t_seq,
                  int dim_cap = kDefaultDimCap);

/// Same, against an explicit per-state channel family (used internally and
/// by the jammer-mixture identities).
double error_prob_family(const Code& code, const std::vector<CQChannel>& family,
                         const std::vector<int>& t_seq, int dim_cap = kDefaultDimCap);

/// Strong-criterion leakage: chi of the wiretapper ensemble
/// { uniform j ; sum_{a^n} E(a^n|j) V_{t^n}(a^n) } in bits (unnormalized).
double leakage(const Code& code, const AVWC& channel, const std::vector<int>& t_seq,
               double base = 2.0, int dim_cap = kDefaultDimCap);

struct WorstCaseReport {
  std::vector<int> argmax_error_seq;  // lexicographically first on ties
  double max_error = 0.0;
  std::vector<int> argmax_leakage_seq;
  double max_leakage = 0.0;
  bool exact = true;  // false for sampled sweeps (lower bounds on the maxima)
  long long evaluated = 0;
};

/// Maximum error and leakage over jammer sequences; exhaustive sweeps are
/// exact, sampled sweeps draw `cap` sequences from the given seed.
WorstCaseReport worst_case(const Code& code, const AVWC& channel, const JammerSweep& sweep,
                           int dim_cap = kDefaultDimCap);

/// Prefix composition: a deterministic-encoder outer code with one codeword
/// per inner code, followed by the matching inner code. The composed encoder
/// puts weight 1/|inners| on (outer codeword i, inner encoder i); composed
/// decoders are sum_i D_i^outer (x) D_{i,j}^inner.
Code compose_prefix(const Code& outer, const std::vector<Code>& inners,
                    int dim_cap = kDefaultDimCap);

struct ComposedLeakageRow {
  std::vector<int> t_seq;
  double composed_leakage = 0.0;
  double mean_inner_leakage = 0.0;
  double prefix_chi = 0.0;  // chi of the prefix wiretap ensemble at t-prefix
  double bound = 0.0;       // mean inner + log2(#inners) - prefix_chi
  double slack = 0.0;       // bound - composed_leakage
};

struct ComposedLeakageReport {
  std::vector<ComposedLeakageRow> rows;
  double min_slack = 0.0;
  std::vector<int> argmin_seq;
};

/// Evaluates the composed-code leakage against its decomposition bound for
/// every jammer sequence in the sweep; slack must come out >= -1e-9.
ComposedLeakageReport composed_leakage_check(const Code& outer, const std::vector<Code>& inners,
                                             const AVWC& channel, const JammerSweep& sweep,
                                             int dim_cap = kDefaultDimCap);

struct MixedErrorResult {
  bool input_independent = false;
  double value = 0.0;     // sum over t^n of sigma^n(t^n) P_e(code, t^n)
  double residual = 0.0;  // max input-dependence of the sigma-mixture
};

/// Expected error under per-letter i.i.d. jammer mixing. Requires the
/// sigma-mixture sum_t sigma(t) W_t(a) to be input-independent (to 1e-9);
/// otherwise reports the dependence residual instead of a value. The
/// expectation is computed exactly through the mixed channel, with no
/// enumeration of jammer sequences.
MixedErrorResult expected_error_under_tau(const Code& code, const std::vector<CQChannel>& legal,
                                          const SimplexDist& sigma, int dim_cap = kDefaultDimCap);

/// Correlation-assisted evaluation at a fixed jammer sequence: expected
/// error over i.i.d. (x^n, y^n), and leakage averaged over the joint.
std::pair<double, double> corr_code_eval(const CorrCode& code, const AVWC& channel,
                                         const Correlation& corr, const std::vector<int>& t_seq,
                                         long long pair_cap = 4096, int dim_cap = kDefaultDimCap);

struct DerandomizeRow {
  std::vector<int> t_seq;
  double mean_error = 0.0;
  double mean_leakage = 0.0;
};

struct DerandomizeReport {
  std::vector<int> draw_counts;  // how often each family member was drawn
  std::vector<DerandomizeRow> rows;
  double max_mean_error = 0.0;
  std::vector<int> argmax_error_seq;
  double max_mean_leakage = 0.0;
  std::vector<int> argmax_leakage_seq;
};

/// Draw k codes i.i.d. from the weighted family (deterministic given seed)
/// and report the empirical mean error/leakage per jammer sequence in the
/// sweep, plus the maxima over the sweep.
DerandomizeReport derandomize_experiment(const std::vector<Code>& family,
                                         const SimplexDist& weights, const AVWC& channel, int k,
                                         uint64_t seed, const JammerSweep& sweep,
                                         int dim_cap = kDefaultDimCap);

}  // namespace avq
