#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avq/bounds.hpp"
#include "avq/examples.hpp"
#include "support/helpers.hpp"

using namespace avq;
using test_support::oracle_entropy;

namespace {

// Scalar oracle for the bundled symmetrizable channel at uniform input:
// all states are diagonal, so chi(q) reduces to classical entropies.
double oracle_chi_of_q(double q) {
  const std::vector<double> avg = {0.25 + 0.5 * q, 0.75 - 0.5 * q};
  const std::vector<double> u0 = {(1.0 + q) / 2.0, (1.0 - q) / 2.0};
  const std::vector<double> u1 = {q / 2.0, 1.0 - q / 2.0};
  return oracle_entropy(avg) - 0.5 * oracle_entropy(u0) - 0.5 * oracle_entropy(u1);
}

}  // namespace

TEST_CASE("jammer minimization on the bundled symmetrizable channel") {
  const AVWC blind = examples::sym_blind();
  const SimplexDist p = SimplexDist::uniform(2);

  const double frozen = oracle_chi_of_q(0.5);
  CHECK(frozen == doctest::Approx(0.188722).epsilon(1e-5));

  auto [qstar, value] = min_chi_over_jammer(blind.legal, p);
  CHECK(value == doctest::Approx(frozen).epsilon(1e-9));
  CHECK(qstar[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(qstar[1] == doctest::Approx(0.5).epsilon(1e-9));

  // Guarantee: the reported minimum does not exceed any grid value.
  for (int k = 0; k <= 16; ++k) {
    const double q = static_cast<double>(k) / 16.0;
    CHECK(value <= chi_under_jammer(blind.legal, p, SimplexDist({q, 1.0 - q})) + 1e-12);
  }
}

TEST_CASE("jammer-mixed chi matches the scalar oracle across the whole range") {
  // All states involved are diagonal, so the quantum path must reproduce
  // the classical entropy expression exactly.
  const AVWC blind = examples::sym_blind();
  const SimplexDist p = SimplexDist::uniform(2);
  for (int k = 0; k <= 20; ++k) {
    const double q = static_cast<double>(k) / 20.0;
    CHECK(chi_under_jammer(blind.legal, p, SimplexDist({q, 1.0 - q})) ==
          doctest::Approx(oracle_chi_of_q(q)).epsilon(1e-12));
  }
}

TEST_CASE("reported quantities scale with the log base") {
  const AVWC blind = examples::sym_blind();
  BoundOpts bits;
  BoundOpts quats;
  quats.base = 4.0;
  const double v2 = secrecy_lower_bound(blind, bits).value;
  const double v4 = secrecy_lower_bound(blind, quats).value;
  CHECK(v4 == doctest::Approx(v2 / 2.0).epsilon(1e-9));
}

TEST_CASE("single-state and constant families") {
  const AVWC copy = examples::robust_copy();
  const SimplexDist p = SimplexDist::uniform(2);

  std::vector<CQChannel> single{copy.legal[0]};
  auto [qstar, value] = min_chi_over_jammer(single, p);
  CHECK(qstar.support_size() == 1);
  CHECK(value ==
        doctest::Approx(chi_under_jammer(single, p, SimplexDist::point_mass(1, 0))).epsilon(1e-12));

  // Both jammer states share the same channel: chi is constant in Q.
  const double at_uniform = chi_under_jammer(copy.legal, p, SimplexDist::uniform(2));
  for (int k = 0; k <= 10; ++k) {
    const double q = static_cast<double>(k) / 10.0;
    CHECK(chi_under_jammer(copy.legal, p, SimplexDist({q, 1.0 - q})) ==
          doctest::Approx(at_uniform).epsilon(1e-12));
  }
}

TEST_CASE("leakage term on the bundled wiretap families") {
  const AVWC blind = examples::sym_blind();
  const AVWC copy = examples::robust_copy();
  const SimplexDist uniform = SimplexDist::uniform(2);

  for (int order = 1; order <= 4; ++order) {
    CHECK(leakage_term(blind.wiretap, uniform, order) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(leakage_term(copy.wiretap, uniform, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(leakage_term(copy.wiretap, SimplexDist({0.3, 0.7}), 1) ==
        doctest::Approx(test_support::oracle_h2(0.3)).epsilon(1e-9));
  CHECK(leakage_term(copy.wiretap, SimplexDist::point_mass(2, 0), 3) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // Constant in the surrogate order for both bundled families.
  for (int order = 2; order <= 4; ++order) {
    CHECK(std::abs(leakage_term(copy.wiretap, uniform, order) -
                   leakage_term(copy.wiretap, uniform, 1)) < 1e-9);
  }

  BoundOpts tight;
  tight.sweep_cap = 4;
  CHECK_THROWS_AS(leakage_term(copy.wiretap, uniform, 3, tight), Error);
}

TEST_CASE("secrecy lower bound on the bundled symmetrizable channel") {
  const AVWC blind = examples::sym_blind();
  const BoundReport rep = secrecy_lower_bound(blind);
  CHECK(rep.value == doctest::Approx(oracle_chi_of_q(0.5)).epsilon(1e-6));
  CHECK(rep.argmax_P[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.argmin_Q[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.leakage_term == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.value == rep.legal_term - rep.leakage_term);  // exact identity
  CHECK(rep.clamped() == rep.value);
  CHECK(rep.grid_spec.find("lower bound") != std::string::npos);
}

TEST_CASE("secrecy lower bound vanishes when the wiretapper sees a copy") {
  const AVWC copy = examples::robust_copy();

  // Pointwise: the legal term never exceeds the leakage term.
  for (int k = 0; k <= 32; ++k) {
    const SimplexDist p({static_cast<double>(k) / 32.0, 1.0 - static_cast<double>(k) / 32.0});
    const double legal = min_chi_over_jammer(copy.legal, p).second;
    const double leak = leakage_term(copy.wiretap, p, 1);
    CHECK(legal <= leak + 1e-12);
  }

  const BoundReport rep = secrecy_lower_bound(copy);
  CHECK(rep.value <= 1e-12);
  CHECK(rep.clamped() == 0.0);
}

TEST_CASE("secrecy lower bound survives on the product channel") {
  const AVWC prod = examples::product_channel();
  const BoundReport rep = secrecy_lower_bound(prod);
  CHECK(rep.value >= 0.1877);
  CHECK(rep.leakage_term == doctest::Approx(0.0).epsilon(1e-12));
  // The maximizer splits its mass across two inputs sharing the second letter.
  int support = 0;
  for (int a = 0; a < 4; ++a) {
    if (rep.argmax_P[a] > 1e-9) ++support;
  }
  CHECK(support == 2);
}

TEST_CASE("dichotomy reports across the bundled channels") {
  const DichotomyReport blind = dichotomy_report(examples::sym_blind());
  CHECK(blind.symmetrizable);
  CHECK(blind.deterministic_secrecy_lb == 0.0);
  CHECK(blind.random_lb.value == doctest::Approx(0.188722).epsilon(1e-3));

  const DichotomyReport copy = dichotomy_report(examples::robust_copy());
  CHECK_FALSE(copy.symmetrizable);
  CHECK(copy.random_lb.value <= 1e-12);
  CHECK(copy.deterministic_secrecy_lb == 0.0);

  const DichotomyReport prod = dichotomy_report(examples::product_channel());
  CHECK_FALSE(prod.symmetrizable);
  CHECK(prod.deterministic_secrecy_lb >= 0.1877);
}

TEST_CASE("analytic jammer derivative matches finite differences") {
  const AVWC blind = examples::sym_blind();
  const SimplexDist p = SimplexDist::uniform(2);

  CHECK(std::abs(chi_q_derivative(blind.legal, p, 0.5)) <= 1e-8);
  for (double q : {0.1, 0.3, 0.7, 0.9}) {
    CHECK(chi_gradient_check(blind.legal, p, q, 1e-4) <= 1e-6);
  }

  // Constant family: derivative vanishes everywhere.
  const AVWC copy = examples::robust_copy();
  for (double q : {0.2, 0.5, 0.8}) {
    CHECK(std::abs(chi_q_derivative(copy.legal, p, q)) <= 1e-10);
  }

  CHECK_THROWS_AS(chi_gradient_check(blind.legal, p, 1e-9, 1e-4), Error);
  CHECK_THROWS_AS(chi_gradient_check(blind.legal, p, 0.5, 0.1), Error);
}

TEST_CASE("property: minimax sandwich at random inputs") {
  const AVWC blind = examples::sym_blind();
  auto rng = test_support::seeded_rng(10100);
  for (int it = 0; it < 25; ++it) {
    const SimplexDist p = test_support::random_simplex(rng, 2);
    const double inner = min_chi_over_jammer(blind.legal, p).second;
    for (int k = 0; k < 8; ++k) {
      const SimplexDist q = test_support::random_simplex(rng, 2);
      CHECK(inner <= chi_under_jammer(blind.legal, p, q) + 1e-12);
    }
  }
}

TEST_CASE("grid refinement consistency") {
  const AVWC blind = examples::sym_blind();
  BoundOpts coarse;
  coarse.p_grid = 32;
  coarse.q_grid = 32;
  BoundOpts fine;
  fine.p_grid = 64;
  fine.q_grid = 64;
  const double v32 = secrecy_lower_bound(blind, coarse).value;
  const double v64 = secrecy_lower_bound(blind, fine).value;
  CHECK(v64 >= v32 - 1e-6);
}

TEST_CASE("jammer relabeling permutes the argmin and keeps the value") {
  const AVWC blind = examples::sym_blind();
  const SimplexDist p = SimplexDist::uniform(2);
  std::vector<CQChannel> swapped{blind.legal[1], blind.legal[0]};

  auto [q1, v1] = min_chi_over_jammer(blind.legal, p);
  auto [q2, v2] = min_chi_over_jammer(swapped, p);
  CHECK(std::abs(v1 - v2) < 1e-10);
  CHECK(q1[0] == doctest::Approx(q2[1]).epsilon(1e-6));
  CHECK(q1[1] == doctest::Approx(q2[0]).epsilon(1e-6));
}

TEST_CASE("alphabet cap guards the exhaustive grid") {
  auto rng = test_support::seeded_rng(10200);
  const auto family = test_support::random_family(rng, 2, 5, 2);
  std::vector<std::string> alphabet = family[0].alphabet;
  AVWC wide("wide", alphabet, {"1", "2"}, family, family);
  CHECK_THROWS_AS(secrecy_lower_bound(wide), Error);
}
