#include "avq/sim.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "avq/enumeration.hpp"
#include "avq/qmath.hpp"

namespace avq {

namespace {

double real_trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

void check_eval_compat(const Code& code, const std::vector<CQChannel>& family,
                       const std::vector<int>& t_seq, int dim_cap) {
  if (family.empty()) throw_invariant("simulation: empty channel family");
  if (static_cast<int>(t_seq.size()) != code.n) {
    throw_invariant("simulation: jammer sequence length " + std::to_string(t_seq.size()) +
                    " does not match blocklength " + std::to_string(code.n));
  }
  if (code.n > 0 && family.front().arity() != code.num_symbols) {
    throw_invariant("simulation: code alphabet size " + std::to_string(code.num_symbols) +
                    " does not match channel alphabet " +
                    std::to_string(family.front().arity()));
  }
  long long dim = 1;
  for (int i = 0; i < code.n; ++i) {
    dim *= family.front().out_dim;
    if (dim > dim_cap) {
      throw_cap("simulation: block dimension exceeds cap " + std::to_string(dim_cap));
    }
  }
}

// Wiretapper ensemble states sum_{a^n} E(a^n|j) V_{t^n}(a^n) for all j.
std::vector<DensityOp> encoder_images(const Code& code, const std::vector<CQChannel>& family,
                                      const std::vector<int>& t_seq, int dim_cap) {
  const int d = family.front().out_dim;
  long long block = 1;
  for (int i = 0; i < code.n; ++i) block *= d;
  std::vector<CMatrix> acc(static_cast<size_t>(code.J), CMatrix::Zero(block, block));
  const int na = code.num_symbols;
  for (long long ai = 0; ai < code.encoder_cols(); ++ai) {
    bool used = false;
    for (int j = 0; j < code.J; ++j) {
      if (code.encoder(j, ai) > 0.0) {
        used = true;
        break;
      }
    }
    if (!used) continue;
    const DensityOp out = n_fold_output(family, t_seq, nth_sequence(ai, na, code.n), dim_cap);
    for (int j = 0; j < code.J; ++j) {
      const double w = code.encoder(j, ai);
      if (w > 0.0) acc[static_cast<size_t>(j)] += w * out.mat();
    }
  }
  std::vector<DensityOp> states;
  states.reserve(acc.size());
  for (auto& m : acc) states.emplace_back(std::move(m));
  return states;
}

template <typename PerSeq>
void sweep_sequences(int num_states, int n, const JammerSweep& sweep, PerSeq&& per_seq) {
  if (sweep.mode == JammerSweep::Mode::exhaustive) {
    const long long total = pow_ll(num_states, n);
    if (total > sweep.cap) {
      throw_cap("exhaustive sweep over " + std::to_string(total) +
                " jammer sequences exceeds cap " + std::to_string(sweep.cap));
    }
    for (long long ti = 0; ti < total; ++ti) per_seq(nth_sequence(ti, num_states, n));
  } else {
    std::mt19937_64 rng(sweep.seed);
    for (long long s = 0; s < sweep.cap; ++s) {
      std::vector<int> t_seq(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) t_seq[static_cast<size_t>(i)] = uniform_int(rng, num_states);
      per_seq(std::move(t_seq));
    }
  }
}

}  // namespace

double error_prob_family(const Code& code, const std::vector<CQChannel>& family,
                         const std::vector<int>& t_seq, int dim_cap) {
  check_eval_compat(code, family, t_seq, dim_cap);
  long long block = 1;
  for (int i = 0; i < code.n; ++i) block *= family.front().out_dim;
  if (block != code.block_dim()) {
    throw_invariant("error_prob: decoder dimension " + std::to_string(code.block_dim()) +
                    " does not match the n-letter output dimension " + std::to_string(block));
  }
  verify_povm(code.decoders);
  double success = 0.0;
  const int na = code.num_symbols;
  for (long long ai = 0; ai < code.encoder_cols(); ++ai) {
    bool used = false;
    for (int j = 0; j < code.J; ++j) {
      if (code.encoder(j, ai) > 0.0) {
        used = true;
        break;
      }
    }
    if (!used) continue;
    const DensityOp out = n_fold_output(family, t_seq, nth_sequence(ai, na, code.n), dim_cap);
    for (int j = 0; j < code.J; ++j) {
      const double w = code.encoder(j, ai);
      if (w > 0.0) success += w * real_trace_product(out.mat(), code.decoders[static_cast<size_t>(j)]);
    }
  }
  const double pe = 1.0 - success / code.J;
  return std::min(1.0, std::max(0.0, pe));
}

double error_prob(const Code& code, const AVWC& channel, const std::vector<int>& t_seq,
                  int dim_cap) {
  return error_prob_family(code, channel.legal, t_seq, dim_cap);
}

double leakage(const Code& code, const AVWC& channel, const std::vector<int>& t_seq, double base,
               int dim_cap) {
  check_eval_compat(code, channel.wiretap, t_seq, dim_cap);
  verify_povm(code.decoders);
  Ensemble ens(SimplexDist::uniform(code.J), encoder_images(code, channel.wiretap, t_seq, dim_cap));
  return holevo_chi(ens, base);
}

WorstCaseReport worst_case(const Code& code, const AVWC& channel, const JammerSweep& sweep,
                           int dim_cap) {
  WorstCaseReport rep;
  rep.exact = sweep.mode == JammerSweep::Mode::exhaustive;
  bool first = true;
  sweep_sequences(channel.num_states(), code.n, sweep, [&](std::vector<int> t_seq) {
    const double err = error_prob(code, channel, t_seq, dim_cap);
    const double leak = leakage(code, channel, t_seq, 2.0, dim_cap);
    if (first || err > rep.max_error + 1e-15) {
      rep.max_error = err;
      rep.argmax_error_seq = t_seq;
    }
    if (first || leak > rep.max_leakage + 1e-15) {
      rep.max_leakage = leak;
      rep.argmax_leakage_seq = t_seq;
    }
    first = false;
    ++rep.evaluated;
  });
  return rep;
}

Code compose_prefix(const Code& outer, const std::vector<Code>& inners, int dim_cap) {
  if (inners.empty()) throw_invariant("compose_prefix: no inner codes");
  if (outer.J != static_cast<int>(inners.size())) {
    throw_invariant("compose_prefix: outer code has " + std::to_string(outer.J) +
                    " messages but there are " + std::to_string(inners.size()) + " inner codes");
  }
  if (!outer.has_deterministic_encoder()) {
    throw_invariant("compose_prefix: outer encoder must be deterministic (one codeword per index)");
  }
  const Code& proto = inners.front();
  for (const Code& c : inners) {
    if (c.n != proto.n || c.J != proto.J || c.num_symbols != proto.num_symbols ||
        c.block_dim() != proto.block_dim()) {
      throw_invariant("compose_prefix: inner codes must share blocklength, message count, "
                      "alphabet and decoder dimension");
    }
  }
  if (outer.n > 0 && proto.n > 0 && outer.num_symbols != proto.num_symbols) {
    throw_invariant("compose_prefix: outer and inner codes use different alphabets");
  }
  const int num_symbols = outer.n > 0 ? outer.num_symbols : proto.num_symbols;
  const long long dim = static_cast<long long>(outer.block_dim()) * proto.block_dim();
  if (dim > dim_cap) {
    throw_cap("compose_prefix: composed dimension " + std::to_string(dim) + " exceeds cap " +
              std::to_string(dim_cap));
  }

  const long long inner_cols = proto.encoder_cols();
  const long long total_cols = outer.encoder_cols() * inner_cols;
  const double w = 1.0 / static_cast<double>(inners.size());

  Eigen::MatrixXd encoder = Eigen::MatrixXd::Zero(proto.J, total_cols);
  for (size_t i = 0; i < inners.size(); ++i) {
    const long long ci = outer.codeword_index(static_cast<int>(i));
    for (int j = 0; j < proto.J; ++j) {
      for (long long a = 0; a < inner_cols; ++a) {
        encoder(j, ci * inner_cols + a) += w * inners[i].encoder(j, a);
      }
    }
  }

  std::vector<CMatrix> decoders;
  decoders.reserve(static_cast<size_t>(proto.J));
  for (int j = 0; j < proto.J; ++j) {
    CMatrix dj = CMatrix::Zero(dim, dim);
    for (size_t i = 0; i < inners.size(); ++i) {
      dj += Eigen::kroneckerProduct(outer.decoders[i], inners[i].decoders[static_cast<size_t>(j)]);
    }
    decoders.push_back(std::move(dj));
  }

  return Code(outer.n + proto.n, num_symbols, std::move(encoder), std::move(decoders),
              "composed code");
}

ComposedLeakageReport composed_leakage_check(const Code& outer, const std::vector<Code>& inners,
                                             const AVWC& channel, const JammerSweep& sweep,
                                             int dim_cap) {
  const Code composed = compose_prefix(outer, inners, dim_cap);
  const int ni = static_cast<int>(inners.size());
  const double h_uni = std::log2(static_cast<double>(ni));

  ComposedLeakageReport rep;
  bool first = true;
  sweep_sequences(channel.num_states(), composed.n, sweep, [&](std::vector<int> t_seq) {
    const std::vector<int> t_out(t_seq.begin(), t_seq.begin() + outer.n);
    const std::vector<int> t_in(t_seq.begin() + outer.n, t_seq.end());

    ComposedLeakageRow row;
    row.t_seq = t_seq;
    row.composed_leakage = leakage(composed, channel, t_seq, 2.0, dim_cap);
    for (const Code& inner : inners) {
      row.mean_inner_leakage += leakage(inner, channel, t_in, 2.0, dim_cap);
    }
    row.mean_inner_leakage /= ni;

    std::vector<DensityOp> prefix_states;
    prefix_states.reserve(static_cast<size_t>(ni));
    for (int i = 0; i < ni; ++i) {
      const std::vector<int> cw = nth_sequence(outer.codeword_index(i), outer.num_symbols, outer.n);
      prefix_states.push_back(n_fold_output(channel.wiretap, t_out, cw, dim_cap));
    }
    row.prefix_chi = holevo_chi(Ensemble(SimplexDist::uniform(ni), std::move(prefix_states)));
    row.bound = row.mean_inner_leakage + h_uni - row.prefix_chi;
    row.slack = row.bound - row.composed_leakage;

    if (first || row.slack < rep.min_slack - 1e-15) {
      rep.min_slack = row.slack;
      rep.argmin_seq = t_seq;
    }
    first = false;
    rep.rows.push_back(std::move(row));
  });
  return rep;
}

MixedErrorResult expected_error_under_tau(const Code& code, const std::vector<CQChannel>& legal,
                                          const SimplexDist& sigma, int dim_cap) {
  if (legal.empty()) throw_invariant("expected_error_under_tau: empty family");
  if (sigma.support_size() != static_cast<int>(legal.size())) {
    throw_invariant("expected_error_under_tau: mixture support does not match family size");
  }
  const CQChannel mixed = mixture_channel(legal, sigma);

  MixedErrorResult res;
  for (int a = 0; a < mixed.arity(); ++a) {
    for (int b = a + 1; b < mixed.arity(); ++b) {
      res.residual = std::max(
          res.residual, (mixed.at(a).mat() - mixed.at(b).mat()).cwiseAbs().maxCoeff());
    }
  }
  res.input_independent = res.residual <= tol::trace_one;
  if (!res.input_independent) return res;

  // The expectation factorizes letterwise, so it equals the error through
  // the single mixed channel.
  const std::vector<CQChannel> family{mixed};
  res.value = error_prob_family(code, family, std::vector<int>(static_cast<size_t>(code.n), 0),
                                dim_cap);
  return res;
}

std::pair<double, double> corr_code_eval(const CorrCode& code, const AVWC& channel,
                                         const Correlation& corr, const std::vector<int>& t_seq,
                                         long long pair_cap, int dim_cap) {
  if (static_cast<int>(corr.x_alphabet.size()) != code.x_arity ||
      static_cast<int>(corr.y_alphabet.size()) != code.y_arity) {
    throw_invariant("corr_code_eval: correlation alphabets do not match the code's key arities");
  }
  if (static_cast<int>(t_seq.size()) != code.n) {
    throw_invariant("corr_code_eval: jammer sequence length mismatch");
  }
  const long long nx = pow_ll(code.x_arity, code.n);
  const long long ny = pow_ll(code.y_arity, code.n);
  if (nx * ny > pair_cap) {
    throw_cap("corr_code_eval: " + std::to_string(nx * ny) +
              " (x^n, y^n) pairs exceed cap " + std::to_string(pair_cap));
  }

  const long long na_seqs = pow_ll(code.num_symbols, code.n);

  // tr(W_{t^n}(a^n) D_j^{(y^n)}) for all (a^n, y^n, j).
  std::vector<std::vector<std::vector<double>>> gain(
      static_cast<size_t>(na_seqs),
      std::vector<std::vector<double>>(static_cast<size_t>(ny),
                                       std::vector<double>(static_cast<size_t>(code.J), 0.0)));
  for (long long ai = 0; ai < na_seqs; ++ai) {
    const DensityOp out =
        n_fold_output(channel.legal, t_seq, nth_sequence(ai, code.num_symbols, code.n), dim_cap);
    for (long long yi = 0; yi < ny; ++yi) {
      for (int j = 0; j < code.J; ++j) {
        gain[static_cast<size_t>(ai)][static_cast<size_t>(yi)][static_cast<size_t>(j)] =
            real_trace_product(out.mat(), code.decoders[static_cast<size_t>(yi)][static_cast<size_t>(j)]);
      }
    }
  }

  auto seq_prob = [&](const std::vector<int>& xs, const std::vector<int>& ys) {
    double p = 1.0;
    for (int i = 0; i < code.n; ++i) {
      p *= corr.joint(xs[static_cast<size_t>(i)], ys[static_cast<size_t>(i)]);
    }
    return p;
  };

  double avg_error = 0.0;
  for (long long xi = 0; xi < nx; ++xi) {
    const std::vector<int> xs = nth_sequence(xi, code.x_arity, code.n);
    const Eigen::MatrixXd& enc = code.encoders[static_cast<size_t>(xi)];
    for (long long yi = 0; yi < ny; ++yi) {
      const double p = seq_prob(xs, nth_sequence(yi, code.y_arity, code.n));
      if (p == 0.0) continue;
      double success = 0.0;
      for (int j = 0; j < code.J; ++j) {
        for (long long ai = 0; ai < na_seqs; ++ai) {
          const double w = enc(j, ai);
          if (w > 0.0) {
            success += w * gain[static_cast<size_t>(ai)][static_cast<size_t>(yi)][static_cast<size_t>(j)];
          }
        }
      }
      avg_error += p * (1.0 - success / code.J);
    }
  }

  // The wiretapper's ensemble depends on x^n only; averaging the leakage
  // over the full joint reduces to the X-marginal.
  double avg_leakage = 0.0;
  for (long long xi = 0; xi < nx; ++xi) {
    const std::vector<int> xs = nth_sequence(xi, code.x_arity, code.n);
    double px = 1.0;
    for (int i = 0; i < code.n; ++i) px *= corr.px(xs[static_cast<size_t>(i)]);
    if (px == 0.0) continue;
    Code view(code.n, code.num_symbols, code.encoders[static_cast<size_t>(xi)],
              code.decoders.front(), "corr-code view");
    avg_leakage += px * leakage(view, channel, t_seq, 2.0, dim_cap);
  }

  return {std::min(1.0, std::max(0.0, avg_error)), avg_leakage};
}

DerandomizeReport derandomize_experiment(const std::vector<Code>& family,
                                         const SimplexDist& weights, const AVWC& channel, int k,
                                         uint64_t seed, const JammerSweep& sweep, int dim_cap) {
  if (family.empty()) throw_invariant("derandomize_experiment: empty code family");
  if (weights.support_size() != static_cast<int>(family.size())) {
    throw_invariant("derandomize_experiment: weight support does not match family size");
  }
  if (k < 1) throw_invariant("derandomize_experiment: need at least one draw");
  const int n = family.front().n;
  for (const Code& c : family) {
    if (c.n != n) throw_invariant("derandomize_experiment: mixed blocklengths in family");
  }

  DerandomizeReport rep;
  rep.draw_counts.assign(family.size(), 0);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < k; ++s) {
    ++rep.draw_counts[static_cast<size_t>(sample_index(rng, weights.probs()))];
  }

  bool first = true;
  sweep_sequences(channel.num_states(), n, sweep, [&](std::vector<int> t_seq) {
    DerandomizeRow row;
    row.t_seq = t_seq;
    for (size_t i = 0; i < family.size(); ++i) {
      if (rep.draw_counts[i] == 0) continue;
      const double frac = static_cast<double>(rep.draw_counts[i]) / k;
      row.mean_error += frac * error_prob(family[i], channel, t_seq, dim_cap);
      row.mean_leakage += frac * leakage(family[i], channel, t_seq, 2.0, dim_cap);
    }
    if (first || row.mean_error > rep.max_mean_error + 1e-15) {
      rep.max_mean_error = row.mean_error;
      rep.argmax_error_seq = t_seq;
    }
    if (first || row.mean_leakage > rep.max_mean_leakage + 1e-15) {
      rep.max_mean_leakage = row.mean_leakage;
      rep.argmax_leakage_seq = t_seq;
    }
    first = false;
    rep.rows.push_back(std::move(row));
  });
  return rep;
}

}  // namespace avq
