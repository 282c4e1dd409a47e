#pragma once

#include <string>
#include <vector>

#include "avq/qmath.hpp"
#include "avq/types.hpp"

namespace avq {

/// Classical-quantum channel: one output state per input symbol.
struct CQChannel {
  std::vector<std::string> alphabet;
  int out_dim = 0;
  std::vector<DensityOp> states;  // aligned with alphabet order

  CQChannel(std::vector<std::string> alpha, std::vector<DensityOp> outs,
            const std::string& context = {});

  int arity() const { return static_cast<int>(alphabet.size()); }
  const DensityOp& at(int a) const { return states[static_cast<size_t>(a)]; }
};

/// Arbitrarily varying wiretap channel: per jammer state t, a pair of
/// channels (legal receiver, wiretapper) over a common input alphabet.
struct AVWC {
  std::string name;
  std::vector<std::string> alphabet;
  std::vector<std::string> state_labels;  // jammer states, file order
  std::vector<CQChannel> legal;           // indexed by state_labels
  std::vector<CQChannel> wiretap;
  int legal_dim = 0;
  int wiretap_dim = 0;

  AVWC(std::string name, std::vector<std::string> alpha, std::vector<std::string> labels,
       std::vector<CQChannel> legal_family, std::vector<CQChannel> wiretap_family);

  int num_states() const { return static_cast<int>(state_labels.size()); }
};

/// Joint distribution of a bipartite source (X, Y).
struct Correlation {
  std::vector<std::string> x_alphabet;
  std::vector<std::string> y_alphabet;
  Eigen::MatrixXd joint;  // rows = X, cols = Y; nonnegative, sums to 1

  Correlation(std::vector<std::string> xs, std::vector<std::string> ys, Eigen::MatrixXd p,
              const std::string& context = {});

  double px(int x) const { return joint.row(x).sum(); }
  double py(int y) const { return joint.col(y).sum(); }
};

/// Channel family over the function alphabet F = {f: X -> A} obtained by
/// embedding a correlation into the inputs: each output carries an index
/// state for y on a |Y|-dimensional register in front of the base output.
struct LiftedAVC {
  std::vector<std::vector<int>> function_alphabet;  // f as value tuple, lexicographic
  std::vector<CQChannel> base;                      // the source legal family
  Correlation correlation;
  std::vector<CQChannel> channels;                  // per jammer state, over F

  LiftedAVC(std::vector<std::vector<int>> funcs, std::vector<CQChannel> base_family,
            Correlation corr, std::vector<CQChannel> lifted)
      : function_alphabet(std::move(funcs)),
        base(std::move(base_family)),
        correlation(std::move(corr)),
        channels(std::move(lifted)) {}
};

/// Per-symbol convex combination sum_t q(t) W_t(a).
CQChannel mixture_channel(const std::vector<CQChannel>& family, const SimplexDist& q);

/// Tensor product of per-letter outputs W_{t_1}(a_1) (x) ... (x) W_{t_n}(a_n).
DensityOp n_fold_output(const std::vector<CQChannel>& family, const std::vector<int>& t_seq,
                        const std::vector<int>& a_seq, int dim_cap = kDefaultDimCap);

/// Product channel: alphabet = pairs, jammer states = pairs, outputs tensor.
AVWC product_avwc(const AVWC& c1, const AVWC& c2, int dim_cap = kDefaultDimCap);

inline constexpr int kDefaultFunctionCap = 256;

/// Single-letter lift: for each t and each f in F,
///   U~_t(f) = sum_{x,y} p(x,y) kappa_y (x) W_t(f(x)),
/// with kappa_y the computational-basis projectors of a |Y|-dim register.
LiftedAVC lift_correlation(const std::vector<CQChannel>& legal, const Correlation& corr,
                           int function_cap = kDefaultFunctionCap);

/// Classical mutual information of the joint table, in the given log base.
double mutual_information(const Correlation& corr, double base = 2.0);

}  // namespace avq
