#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avq/enumeration.hpp"
#include "avq/examples.hpp"
#include "avq/sim.hpp"
#include "support/helpers.hpp"

using namespace avq;

namespace {

// Noiseless binary classical channel (single jammer state): useful when a
// test needs codes with error exactly 0 or 1.
AVWC noiseless() {
  const CQChannel w({"0", "1"},
                    {DensityOp::basis_projector(2, 0), DensityOp::basis_projector(2, 1)});
  return AVWC("noiseless", {"0", "1"}, {"1"}, {w}, {w});
}

Code swapped_basis_code() {
  Eigen::MatrixXd enc = Eigen::MatrixXd::Zero(2, 2);
  enc(0, 1) = 1.0;
  enc(1, 0) = 1.0;
  return Code(1, 2, std::move(enc),
              {DensityOp::basis_projector(2, 0).mat(), DensityOp::basis_projector(2, 1).mat()});
}

// Direct evaluation of the error formula for a deterministic-codeword code,
// used as the cross-check oracle for the stochastic-encoder path.
double det_code_error_oracle(const Code& code, const AVWC& channel,
                             const std::vector<int>& t_seq) {
  double success = 0.0;
  for (int j = 0; j < code.J; ++j) {
    const auto cw = nth_sequence(code.codeword_index(j), code.num_symbols, code.n);
    const DensityOp out = n_fold_output(channel.legal, t_seq, cw);
    success += (out.mat().array() * code.decoders[static_cast<size_t>(j)].transpose().array())
                   .sum()
                   .real();
  }
  return 1.0 - success / code.J;
}

}  // namespace

TEST_CASE("error probability basics") {
  const AVWC copy = examples::robust_copy();

  // One message decoded by the identity never errs.
  Code sure(1, 2, Eigen::MatrixXd::Constant(1, 2, 0.5), {CMatrix::Identity(2, 2)});
  CHECK(error_prob(sure, copy, {0}) == doctest::Approx(0.0).epsilon(1e-12));

  // Basis codewords against the biased pair of outputs: each message is
  // read correctly with probability 3/4.
  const Code basis = examples::basis_code();
  for (int t = 0; t < 2; ++t) {
    CHECK(error_prob(basis, copy, {t}) == doctest::Approx(0.25).epsilon(1e-12));
  }

  // Uniform decoders D_j = I/J are blind: error 1 - 1/J.
  for (int J : {2, 3, 4}) {
    Eigen::MatrixXd enc = Eigen::MatrixXd::Zero(J, 2);
    for (int j = 0; j < J; ++j) enc(j, j % 2) = 1.0;
    std::vector<CMatrix> dec(static_cast<size_t>(J), CMatrix::Identity(2, 2) / J);
    Code blindfold(1, 2, std::move(enc), std::move(dec));
    CHECK(error_prob(blindfold, copy, {1}) ==
          doctest::Approx(1.0 - 1.0 / J).epsilon(1e-12));
  }
}

TEST_CASE("deterministic encoders reproduce the codeword formula") {
  const AVWC blind = examples::sym_blind();
  auto rng = test_support::seeded_rng(11000);
  for (int it = 0; it < 20; ++it) {
    const int n = 1 + avq::uniform_int(rng, 2);
    const int J =
        static_cast<int>(std::min<long long>(2 + avq::uniform_int(rng, 2), pow_ll(2, n)));
    const Code code = test_support::random_deterministic_code(rng, n, J, 2, 2);
    std::vector<int> t_seq(static_cast<size_t>(n));
    for (auto& t : t_seq) t = avq::uniform_int(rng, 2);
    CHECK(error_prob(code, blind, t_seq) ==
          doctest::Approx(det_code_error_oracle(code, blind, t_seq)).epsilon(1e-12));
  }
}

TEST_CASE("leakage against the bundled wiretap families") {
  const AVWC blind = examples::sym_blind();
  const AVWC copy = examples::robust_copy();
  auto rng = test_support::seeded_rng(11100);

  for (int it = 0; it < 10; ++it) {
    const int n = 1 + avq::uniform_int(rng, 2);
    const int J = 2 + avq::uniform_int(rng, 2);
    const Code code = test_support::random_stochastic_code(rng, n, J, 2, 2);
    std::vector<int> t_seq(static_cast<size_t>(n));
    for (auto& t : t_seq) t = avq::uniform_int(rng, 2);

    // Constant wiretap outputs carry nothing.
    CHECK(leakage(code, blind, t_seq) == doctest::Approx(0.0).epsilon(1e-12));
  }

  for (int it = 0; it < 10; ++it) {
    const int n = 1 + avq::uniform_int(rng, 2);
    const int max_J = n == 1 ? 2 : 4;
    const int J = 2 + avq::uniform_int(rng, max_J - 1);
    const Code code = test_support::random_deterministic_code(rng, n, J, 2, 2);
    std::vector<int> t_seq(static_cast<size_t>(n));
    for (auto& t : t_seq) t = avq::uniform_int(rng, 2);

    // A perfect classical copy resolves distinct codewords completely.
    CHECK(leakage(code, copy, t_seq) ==
          doctest::Approx(std::log2(static_cast<double>(J))).epsilon(1e-10));
  }

  // Messages encoded identically leak nothing, even against the copier.
  Eigen::MatrixXd enc = Eigen::MatrixXd::Zero(2, 2);
  enc(0, 0) = enc(1, 0) = 1.0;
  Code constant(1, 2, std::move(enc),
                {CMatrix::Identity(2, 2) / 2, CMatrix::Identity(2, 2) / 2});
  CHECK(leakage(constant, copy, {0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("worst case sweeps") {
  const AVWC blind = examples::sym_blind();
  const Code rep = examples::repetition_code();

  JammerSweep sweep;
  const WorstCaseReport report = worst_case(rep, blind, sweep);
  CHECK(report.exact);
  CHECK(report.evaluated == 4);

  // Brute-force enumeration of the four jammer sequences.
  double max_err = 0.0, max_leak = 0.0;
  for (long long ti = 0; ti < 4; ++ti) {
    const auto t_seq = nth_sequence(ti, 2, 2);
    max_err = std::max(max_err, error_prob(rep, blind, t_seq));
    max_leak = std::max(max_leak, leakage(rep, blind, t_seq));
  }
  CHECK(report.max_error == doctest::Approx(max_err).epsilon(1e-12));
  CHECK(report.max_leakage == doctest::Approx(max_leak).epsilon(1e-12));
  CHECK(report.max_leakage == doctest::Approx(0.0).epsilon(1e-12));

  // Single-state channel: the unique sequence is the argmax.
  const AVWC plain = noiseless();
  const WorstCaseReport single = worst_case(examples::basis_code(), plain, sweep);
  CHECK(single.evaluated == 1);
  CHECK(single.argmax_error_seq == std::vector<int>{0});
  CHECK(single.max_error ==
        doctest::Approx(error_prob(examples::basis_code(), plain, {0})).epsilon(1e-12));

  // Sampled sweeps are deterministic in the seed and never exceed the
  // exhaustive maxima.
  JammerSweep sampled{JammerSweep::Mode::sampled, 64, 1234};
  const WorstCaseReport s1 = worst_case(rep, blind, sampled);
  const WorstCaseReport s2 = worst_case(rep, blind, sampled);
  CHECK(s1.max_error == s2.max_error);
  CHECK_FALSE(s1.exact);
  CHECK(s1.max_error <= report.max_error + 1e-12);

  JammerSweep tiny;
  tiny.cap = 2;
  CHECK_THROWS_AS(worst_case(rep, blind, tiny), Error);
}

TEST_CASE("prefix composition: structure") {
  const Code basis = examples::basis_code();
  const Code trivial = examples::trivial_code();

  // Empty prefix with a single inner code: unchanged.
  const Code same = compose_prefix(trivial, {basis});
  CHECK(same.n == basis.n);
  CHECK(same.J == basis.J);
  CHECK((same.encoder - basis.encoder).cwiseAbs().maxCoeff() < 1e-15);
  for (int j = 0; j < basis.J; ++j) {
    CHECK((same.decoders[static_cast<size_t>(j)] - basis.decoders[static_cast<size_t>(j)])
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }

  // Composed decoders partition the identity (checked by the constructor,
  // re-checked explicitly here).
  const Code composed = compose_prefix(basis, {examples::repetition_code(),
                                               examples::repetition_code()});
  CHECK(composed.n == 3);
  CHECK(composed.J == 2);
  CMatrix sum = CMatrix::Zero(composed.block_dim(), composed.block_dim());
  for (const auto& d : composed.decoders) sum += d;
  CHECK((sum - CMatrix::Identity(composed.block_dim(), composed.block_dim()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  CHECK_THROWS_AS(compose_prefix(basis, {basis}), Error);  // J mismatch

  Eigen::MatrixXd stochastic = Eigen::MatrixXd::Constant(2, 2, 0.5);
  Code soft(1, 2, std::move(stochastic),
            {DensityOp::basis_projector(2, 0).mat(), DensityOp::basis_projector(2, 1).mat()});
  CHECK_THROWS_AS(compose_prefix(soft, {basis, basis}), Error);  // needs codewords
}

TEST_CASE("prefix composition: error chain inequality at every jammer sequence") {
  auto rng = test_support::seeded_rng(11200);
  const std::vector<Code> inners{examples::repetition_code(),
                                 test_support::random_deterministic_code(rng, 2, 2, 2, 2)};
  const Code outer = examples::basis_code();
  const Code composed = compose_prefix(outer, inners);

  for (const AVWC& channel : {examples::sym_blind(), examples::robust_copy()}) {
    for (long long ti = 0; ti < pow_ll(2, 3); ++ti) {
      const auto t_seq = nth_sequence(ti, 2, 3);
      const std::vector<int> t_out(t_seq.begin(), t_seq.begin() + 1);
      const std::vector<int> t_in(t_seq.begin() + 1, t_seq.end());

      const double composed_err = error_prob(composed, channel, t_seq);
      const double outer_err = error_prob(outer, channel, t_out);
      double mean_inner = 0.0;
      for (const Code& c : inners) mean_inner += error_prob(c, channel, t_in);
      mean_inner /= static_cast<double>(inners.size());

      CHECK(composed_err <= outer_err + mean_inner + 1e-9);
    }
  }
}

TEST_CASE("composed leakage: identities and slack") {
  const Code outer = examples::basis_code();
  const Code inner = examples::repetition_code();
  JammerSweep sweep;

  // Identical inner codes: the composed leakage equals the inner leakage
  // (the j-indexed prefix mixture is constant, so its chi term vanishes).
  for (const AVWC& channel : {examples::sym_blind(), examples::robust_copy()}) {
    const Code composed = compose_prefix(outer, {inner, inner});
    for (long long ti = 0; ti < pow_ll(2, 3); ++ti) {
      const auto t_seq = nth_sequence(ti, 2, 3);
      const std::vector<int> t_in(t_seq.begin() + 1, t_seq.end());
      CHECK(std::abs(leakage(composed, channel, t_seq) - leakage(inner, channel, t_in)) < 1e-9);
    }
  }

  // Prefix codewords with identical wiretap images: composing adds nothing.
  {
    Eigen::MatrixXd enc = Eigen::MatrixXd::Zero(2, 2);
    enc(0, 0) = enc(1, 0) = 1.0;  // both prefix codewords are "0"
    Code repeated(1, 2, std::move(enc),
                  {CMatrix::Identity(2, 2) / 2, CMatrix::Identity(2, 2) / 2});
    const AVWC copy = examples::robust_copy();
    const Code composed = compose_prefix(repeated, {inner, inner});
    for (long long ti = 0; ti < pow_ll(2, 3); ++ti) {
      const auto t_seq = nth_sequence(ti, 2, 3);
      const std::vector<int> t_in(t_seq.begin() + 1, t_seq.end());
      CHECK(std::abs(leakage(composed, copy, t_seq) - leakage(inner, copy, t_in)) < 1e-9);
    }
  }

  // Decomposition bound: slack is never meaningfully negative.
  auto rng = test_support::seeded_rng(11300);
  const std::vector<Code> mixed{inner, test_support::random_deterministic_code(rng, 2, 2, 2, 2)};
  for (const AVWC& channel : {examples::sym_blind(), examples::robust_copy()}) {
    const ComposedLeakageReport rep = composed_leakage_check(outer, mixed, channel, sweep);
    CHECK(rep.rows.size() == 8);
    CHECK(rep.min_slack >= -1e-9);
  }
}

TEST_CASE("expected error under an input-independent jammer mixture") {
  const AVWC mixable = examples::mixable_pair();
  const SimplexDist half = SimplexDist::uniform(2);
  auto rng = test_support::seeded_rng(11400);

  for (int it = 0; it < 20; ++it) {
    const int n = 1 + avq::uniform_int(rng, 3);
    int J = 1 + avq::uniform_int(rng, 4);
    const bool stochastic = it % 2 == 0;
    if (!stochastic) J = static_cast<int>(std::min<long long>(J, pow_ll(2, n)));
    const Code code = stochastic ? test_support::random_stochastic_code(rng, n, J, 2, 2)
                                 : test_support::random_deterministic_code(rng, n, J, 2, 2);
    const MixedErrorResult res = expected_error_under_tau(code, mixable.legal, half);
    REQUIRE(res.input_independent);
    CHECK(res.value == doctest::Approx(1.0 - 1.0 / J).epsilon(1e-10));

    // Brute-force cross-check: average the error over all jammer sequences.
    double brute = 0.0;
    for (long long ti = 0; ti < pow_ll(2, n); ++ti) {
      brute += error_prob(code, mixable, nth_sequence(ti, 2, n)) / std::pow(2.0, n);
    }
    CHECK(res.value == doctest::Approx(brute).epsilon(1e-10));
  }

  // J = 1 decodes vacuously.
  Code sure(1, 2, Eigen::MatrixXd::Constant(1, 2, 0.5), {CMatrix::Identity(2, 2)});
  CHECK(expected_error_under_tau(sure, mixable.legal, half).value ==
        doctest::Approx(0.0).epsilon(1e-12));

  // The bundled symmetrizable channel's mixture is input-dependent.
  const AVWC blind = examples::sym_blind();
  const MixedErrorResult dep =
      expected_error_under_tau(examples::basis_code(), blind.legal, half);
  CHECK_FALSE(dep.input_independent);
  CHECK(dep.residual == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("correlation-assisted evaluation") {
  const AVWC copy = examples::robust_copy();
  const Code c0 = examples::basis_code();
  const Code c1 = swapped_basis_code();

  // Degenerate correlation: single (x, y) pair reduces to the plain values.
  {
    CorrCode cc(1, 2, 1, 1, {c0.encoder}, {c0.decoders});
    const Correlation corr({"x"}, {"y"}, Eigen::MatrixXd::Ones(1, 1));
    auto [err, leak] = corr_code_eval(cc, copy, corr, {0});
    CHECK(err == doctest::Approx(error_prob(c0, copy, {0})).epsilon(1e-12));
    CHECK(leak == doctest::Approx(leakage(c0, copy, {0})).epsilon(1e-12));
  }

  // Perfectly correlated binary source indexing two codes: the average of
  // the two codes' stand-alone figures.
  {
    CorrCode cc(1, 2, 2, 2, {c0.encoder, c1.encoder}, {c0.decoders, c1.decoders});
    Eigen::MatrixXd perfect(2, 2);
    perfect << 0.5, 0.0, 0.0, 0.5;
    const Correlation corr({"0", "1"}, {"0", "1"}, perfect);
    auto [err, leak] = corr_code_eval(cc, copy, corr, {1});
    const double err_oracle =
        0.5 * error_prob(c0, copy, {1}) + 0.5 * error_prob(c1, copy, {1});
    const double leak_oracle = 0.5 * leakage(c0, copy, {1}) + 0.5 * leakage(c1, copy, {1});
    CHECK(err == doctest::Approx(err_oracle).epsilon(1e-12));
    CHECK(leak == doctest::Approx(leak_oracle).epsilon(1e-12));
  }

  // Independent source, code ignoring both coordinates: plain values again.
  {
    CorrCode cc(1, 2, 2, 2, {c0.encoder, c0.encoder}, {c0.decoders, c0.decoders});
    Eigen::MatrixXd indep = Eigen::MatrixXd::Constant(2, 2, 0.25);
    const Correlation corr({"0", "1"}, {"0", "1"}, indep);
    auto [err, leak] = corr_code_eval(cc, copy, corr, {0});
    CHECK(err == doctest::Approx(error_prob(c0, copy, {0})).epsilon(1e-12));
    CHECK(leak == doctest::Approx(leakage(c0, copy, {0})).epsilon(1e-12));
  }

  // Cap guard.
  {
    CorrCode cc(1, 2, 2, 2, {c0.encoder, c0.encoder}, {c0.decoders, c0.decoders});
    Eigen::MatrixXd indep = Eigen::MatrixXd::Constant(2, 2, 0.25);
    const Correlation corr({"0", "1"}, {"0", "1"}, indep);
    CHECK_THROWS_AS(corr_code_eval(cc, copy, corr, {0}, 2), Error);
  }
}

TEST_CASE("derandomization experiment") {
  const AVWC plain = noiseless();
  const Code good = examples::basis_code();
  const Code bad = swapped_basis_code();
  JammerSweep sweep;

  // Single-code family: the empirical means are that code's values.
  {
    const DerandomizeReport rep =
        derandomize_experiment({good}, SimplexDist::uniform(1), plain, 1, 99, sweep);
    CHECK(rep.rows.size() == 1);
    CHECK(rep.max_mean_error == doctest::Approx(error_prob(good, plain, {0})).epsilon(1e-12));
  }

  // Two codes with errors {0, 1} at equal weight: binomial concentration
  // of the empirical mean (tolerance 3 sigma for k = 1000).
  {
    const DerandomizeReport rep = derandomize_experiment(
        {good, bad}, SimplexDist::uniform(2), plain, 1000, 2024, sweep);
    CHECK(error_prob(good, plain, {0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(error_prob(bad, plain, {0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rep.max_mean_error - 0.5) <= 0.05);
    CHECK(rep.draw_counts[0] + rep.draw_counts[1] == 1000);

    // Deterministic in the seed.
    const DerandomizeReport again = derandomize_experiment(
        {good, bad}, SimplexDist::uniform(2), plain, 1000, 2024, sweep);
    CHECK(again.draw_counts == rep.draw_counts);
  }

  // The mean leakage never exceeds the largest individual leakage, and
  // every evaluation stays in range: error in [0,1], leakage in [0, log2 J].
  {
    const AVWC copy = examples::robust_copy();
    auto rng = test_support::seeded_rng(11500);
    std::vector<Code> family;
    for (int i = 0; i < 3; ++i) {
      family.push_back(test_support::random_stochastic_code(rng, 1, 2, 2, 2));
    }
    double max_individual = 0.0;
    for (const Code& c : family) {
      for (int t = 0; t < 2; ++t) {
        const double err = error_prob(c, copy, {t});
        const double leak = leakage(c, copy, {t});
        CHECK(err >= 0.0);
        CHECK(err <= 1.0);
        CHECK(leak >= -1e-12);
        CHECK(leak <= std::log2(static_cast<double>(c.J)) + 1e-9);
        max_individual = std::max(max_individual, leak);
      }
    }
    const DerandomizeReport rep = derandomize_experiment(
        family, test_support::random_simplex(rng, 3), copy, 200, 7, sweep);
    CHECK(rep.max_mean_leakage <= max_individual + 1e-12);
  }
}
