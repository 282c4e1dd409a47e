#include <benchmark/benchmark.h>

#include "avq/bounds.hpp"
#include "avq/examples.hpp"
#include "avq/qmath.hpp"
#include "avq/sim.hpp"
#include "avq/sym.hpp"

namespace {

avq::DensityOp mixed_state(int dim) {
  std::vector<double> probs(static_cast<size_t>(dim));
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    probs[static_cast<size_t>(i)] = 1.0 + i;
    sum += probs[static_cast<size_t>(i)];
  }
  for (double& p : probs) p /= sum;
  return avq::DensityOp::diagonal(probs);
}

void BM_Entropy(benchmark::State& state) {
  const avq::DensityOp rho = mixed_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(avq::von_neumann_entropy(rho));
  }
}
BENCHMARK(BM_Entropy)->Arg(2)->Arg(8)->Arg(32);

void BM_HolevoChi(benchmark::State& state) {
  const avq::AVWC copy = avq::examples::robust_copy();
  const avq::Ensemble ens(avq::SimplexDist::uniform(2), copy.legal[0].states);
  for (auto _ : state) {
    benchmark::DoNotOptimize(avq::holevo_chi(ens));
  }
}
BENCHMARK(BM_HolevoChi);

void BM_CheckSymmetrizable(benchmark::State& state) {
  const avq::AVWC channel =
      state.range(0) == 0 ? avq::examples::sym_blind() : avq::examples::product_channel();
  for (auto _ : state) {
    benchmark::DoNotOptimize(avq::check_symmetrizable(channel.legal));
  }
}
BENCHMARK(BM_CheckSymmetrizable)->Arg(0)->Arg(1);

void BM_MinChiOverJammer(benchmark::State& state) {
  const avq::AVWC blind = avq::examples::sym_blind();
  const avq::SimplexDist p = avq::SimplexDist::uniform(2);
  avq::BoundOpts opts;
  opts.q_grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(avq::min_chi_over_jammer(blind.legal, p, opts));
  }
}
BENCHMARK(BM_MinChiOverJammer)->Arg(16)->Arg(64);

void BM_WorstCaseSweep(benchmark::State& state) {
  const avq::AVWC blind = avq::examples::sym_blind();
  const avq::Code rep = avq::examples::repetition_code();
  const avq::JammerSweep sweep;
  for (auto _ : state) {
    benchmark::DoNotOptimize(avq::worst_case(rep, blind, sweep));
  }
}
BENCHMARK(BM_WorstCaseSweep);

}  // namespace

BENCHMARK_MAIN();
