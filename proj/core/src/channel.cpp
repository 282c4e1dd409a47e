#include "avq/channel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

#include "avq/enumeration.hpp"

namespace avq {

CQChannel::CQChannel(std::vector<std::string> alpha, std::vector<DensityOp> outs,
                     const std::string& context)
    : alphabet(std::move(alpha)), states(std::move(outs)) {
  if (alphabet.empty()) throw_invariant(context + ": channel alphabet is empty");
  if (states.size() != alphabet.size()) {
    throw_invariant(context + ": " + std::to_string(alphabet.size()) + " symbols but " +
                    std::to_string(states.size()) + " output states");
  }
  out_dim = states.front().dim();
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != out_dim) {
      throw_invariant(context + ": output for symbol '" + alphabet[i] + "' has dimension " +
                      std::to_string(states[i].dim()) + ", expected " + std::to_string(out_dim));
    }
  }
}

AVWC::AVWC(std::string nm, std::vector<std::string> alpha, std::vector<std::string> labels,
           std::vector<CQChannel> legal_family, std::vector<CQChannel> wiretap_family)
    : name(std::move(nm)),
      alphabet(std::move(alpha)),
      state_labels(std::move(labels)),
      legal(std::move(legal_family)),
      wiretap(std::move(wiretap_family)) {
  if (state_labels.empty()) throw_invariant(name + ": jammer state set is empty");
  if (legal.size() != state_labels.size() || wiretap.size() != state_labels.size()) {
    throw_invariant(name + ": need one legal and one wiretap channel per jammer state");
  }
  legal_dim = legal.front().out_dim;
  wiretap_dim = wiretap.front().out_dim;
  for (size_t t = 0; t < state_labels.size(); ++t) {
    if (legal[t].alphabet != alphabet || wiretap[t].alphabet != alphabet) {
      throw_invariant(name + ": channel for state '" + state_labels[t] +
                      "' does not share the declared alphabet");
    }
    if (legal[t].out_dim != legal_dim || wiretap[t].out_dim != wiretap_dim) {
      throw_invariant(name + ": output dimensions differ across jammer states");
    }
  }
}

Correlation::Correlation(std::vector<std::string> xs, std::vector<std::string> ys,
                         Eigen::MatrixXd p, const std::string& context)
    : x_alphabet(std::move(xs)), y_alphabet(std::move(ys)), joint(std::move(p)) {
  if (x_alphabet.empty() || y_alphabet.empty()) {
    throw_invariant(context + ": correlation alphabets must be nonempty");
  }
  if (joint.rows() != static_cast<Eigen::Index>(x_alphabet.size()) ||
      joint.cols() != static_cast<Eigen::Index>(y_alphabet.size())) {
    throw_invariant(context + ": joint table is " + std::to_string(joint.rows()) + "x" +
                    std::to_string(joint.cols()) + ", expected " +
                    std::to_string(x_alphabet.size()) + "x" + std::to_string(y_alphabet.size()));
  }
  if (joint.minCoeff() < -tol::simplex_neg) {
    throw_invariant(context + ": joint table has a negative entry");
  }
  joint = joint.cwiseMax(0.0);
  const double sum = joint.sum();
  if (std::abs(sum - 1.0) > tol::simplex_sum) {
    std::ostringstream os;
    os << context << ": joint table sums to " << sum << ", expected 1";
    throw_invariant(os.str());
  }
}

CQChannel mixture_channel(const std::vector<CQChannel>& family, const SimplexDist& q) {
  if (family.empty()) throw_invariant("mixture_channel: empty family");
  if (q.support_size() != static_cast<int>(family.size())) {
    throw_invariant("mixture_channel: distribution support " + std::to_string(q.support_size()) +
                    " does not match family size " + std::to_string(family.size()));
  }
  const CQChannel& first = family.front();
  std::vector<DensityOp> mixed;
  mixed.reserve(static_cast<size_t>(first.arity()));
  for (int a = 0; a < first.arity(); ++a) {
    CMatrix acc = CMatrix::Zero(first.out_dim, first.out_dim);
    for (size_t t = 0; t < family.size(); ++t) {
      acc += q[static_cast<int>(t)] * family[t].at(a).mat();
    }
    mixed.emplace_back(std::move(acc));
  }
  return CQChannel(first.alphabet, std::move(mixed));
}

DensityOp n_fold_output(const std::vector<CQChannel>& family, const std::vector<int>& t_seq,
                        const std::vector<int>& a_seq, int dim_cap) {
  if (t_seq.size() != a_seq.size()) {
    throw_invariant("n_fold_output: jammer sequence length " + std::to_string(t_seq.size()) +
                    " differs from input length " + std::to_string(a_seq.size()));
  }
  CMatrix out = CMatrix::Identity(1, 1);
  long dim = 1;
  for (size_t i = 0; i < t_seq.size(); ++i) {
    const auto& letter = family[static_cast<size_t>(t_seq[i])].at(a_seq[i]);
    dim *= letter.dim();
    if (dim > dim_cap) {
      throw_cap("n_fold_output dimension " + std::to_string(dim) + " exceeds cap " +
                std::to_string(dim_cap));
    }
    out = Eigen::kroneckerProduct(out, letter.mat()).eval();
  }
  return DensityOp(std::move(out));
}

AVWC product_avwc(const AVWC& c1, const AVWC& c2, int dim_cap) {
  std::vector<std::string> alphabet;
  for (const auto& a : c1.alphabet) {
    for (const auto& b : c2.alphabet) alphabet.push_back(a + "," + b);
  }
  std::vector<std::string> labels;
  for (const auto& s : c1.state_labels) {
    for (const auto& u : c2.state_labels) labels.push_back(s + "," + u);
  }

  auto tensor_family = [&](const std::vector<CQChannel>& f1, const std::vector<CQChannel>& f2) {
    std::vector<CQChannel> out;
    for (const auto& w1 : f1) {
      for (const auto& w2 : f2) {
        std::vector<DensityOp> states;
        states.reserve(alphabet.size());
        for (int a = 0; a < w1.arity(); ++a) {
          for (int b = 0; b < w2.arity(); ++b) {
            states.push_back(tensor(w1.at(a), w2.at(b), dim_cap));
          }
        }
        out.emplace_back(alphabet, std::move(states));
      }
    }
    return out;
  };

  return AVWC(c1.name + " x " + c2.name, alphabet, labels, tensor_family(c1.legal, c2.legal),
              tensor_family(c1.wiretap, c2.wiretap));
}

LiftedAVC lift_correlation(const std::vector<CQChannel>& legal, const Correlation& corr,
                           int function_cap) {
  if (legal.empty()) throw_invariant("lift_correlation: empty family");
  const CQChannel& w0 = legal.front();
  const int na = w0.arity();
  const int nx = static_cast<int>(corr.x_alphabet.size());
  const int ny = static_cast<int>(corr.y_alphabet.size());

  const long long nfun = pow_ll(na, nx);
  if (nfun > function_cap) {
    throw_cap("lift_correlation: |A|^|X| = " + std::to_string(nfun) + " exceeds function cap " +
              std::to_string(function_cap));
  }

  std::vector<std::vector<int>> funcs;
  std::vector<std::string> fun_labels;
  funcs.reserve(static_cast<size_t>(nfun));
  for (long long i = 0; i < nfun; ++i) {
    funcs.push_back(nth_sequence(i, na, nx));
    std::string label = "f";
    for (int v : funcs.back()) label += w0.alphabet[static_cast<size_t>(v)];
    fun_labels.push_back(std::move(label));
  }

  const int out_dim = ny * w0.out_dim;
  std::vector<CQChannel> lifted;
  lifted.reserve(legal.size());
  for (const auto& wt : legal) {
    std::vector<DensityOp> states;
    states.reserve(funcs.size());
    for (const auto& f : funcs) {
      CMatrix acc = CMatrix::Zero(out_dim, out_dim);
      for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) {
          const double p = corr.joint(x, y);
          if (p == 0.0) continue;
          // kappa_y (x) W_t(f(x)) occupies the y-th diagonal block.
          acc.block(y * w0.out_dim, y * w0.out_dim, w0.out_dim, w0.out_dim) +=
              p * wt.at(f[static_cast<size_t>(x)]).mat();
        }
      }
      states.emplace_back(std::move(acc));
    }
    lifted.emplace_back(fun_labels, std::move(states));
  }
  return LiftedAVC(std::move(funcs), legal, corr, std::move(lifted));
}

double mutual_information(const Correlation& corr, double base) {
  double mi = 0.0;
  for (Eigen::Index x = 0; x < corr.joint.rows(); ++x) {
    for (Eigen::Index y = 0; y < corr.joint.cols(); ++y) {
      const double p = corr.joint(x, y);
      if (p <= tol::eig_clamp) continue;
      mi += p * std::log2(p / (corr.px(static_cast<int>(x)) * corr.py(static_cast<int>(y))));
    }
  }
  return std::max(0.0, mi / std::log2(base));
}

}  // namespace avq
