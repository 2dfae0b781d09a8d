#include <benchmark/benchmark.h>

#include <random>

#include "trigbound/bounds.hpp"
#include "trigbound/design.hpp"
#include "trigbound/filter_bank.hpp"
#include "trigbound/synthesis.hpp"
#include "trigbound/tiling.hpp"
#include "trigbound/trig_poly.hpp"

namespace {

using trigbound::TrigPoly;

TrigPoly dirichlet(int d, int n) {
  TrigPoly p(d, n);
  double side = 1.0;
  for (int i = 0; i < d; ++i) side *= 2 * n + 1;
  for (auto& c : p.coeffs()) c = 1.0 / side;
  return p;
}

void BM_CndSharp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trigbound::bounds::cnd_sharp(4 * n + 3, n, 1));
}
BENCHMARK(BM_CndSharp)->Arg(8)->Arg(64)->Arg(512);

// The trivariate Dirichlet experiment: N = 8n samples per axis.
void BM_Dirichlet3Extrema(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TrigPoly p = dirichlet(3, n);
  for (auto _ : state) {
    const auto g = trigbound::sample_extrema(p, 16 * n);
    benchmark::DoNotOptimize(trigbound::bounds::lower_bound_real(g, n, trigbound::bounds::Constant::kSharp));
  }
}
BENCHMARK(BM_Dirichlet3Extrema)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SampleUniform2D(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const TrigPoly p = dirichlet(2, N / 4);
  for (auto _ : state) benchmark::DoNotOptimize(trigbound::sample_uniform(p, N));
  state.SetItemsProcessed(state.iterations() * N * N);
}
BENCHMARK(BM_SampleUniform2D)->Arg(64)->Arg(256)->Arg(1024);

trigbound::fb::DesignSpec curvelet(int channels, int size) {
  trigbound::fb::DesignSpec spec;
  spec.channels = channels;
  spec.size = size;
  spec.s = 2;
  spec.grid_size = 64;
  spec.alpha = 1.0;
  spec.beta = 10.0;
  spec.gamma = 1.0;
  spec.desired = trigbound::fb::wedge_tiling(channels, 64, trigbound::fb::barrier_matched_total(2, 10, 1));
  spec.weights.assign(spec.desired.size(), 1.0);
  return spec;
}

// One objective + gradient evaluation, the unit cost of an Adam step.
void BM_DesignObjective(benchmark::State& state) {
  const int channels = static_cast<int>(state.range(0));
  const int size = static_cast<int>(state.range(1));
  const auto spec = curvelet(channels, size);
  const auto bank = trigbound::fb::initial_bank(spec, trigbound::fb::InitStrategy::kRandom, 1.0 / size, 1);
  for (auto _ : state) benchmark::DoNotOptimize(trigbound::fb::objective(bank, spec).value);
}
BENCHMARK(BM_DesignObjective)->Args({5, 6})->Args({17, 8})->Args({17, 11})->Unit(benchmark::kMillisecond);

void BM_CertifyPr(benchmark::State& state) {
  const auto spec = curvelet(17, 11);
  const auto bank = trigbound::fb::initial_bank(spec, trigbound::fb::InitStrategy::kRandom, 0.1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trigbound::fb::certify_pr(bank, 64).kappa);
}
BENCHMARK(BM_CertifyPr)->Unit(benchmark::kMillisecond);

void BM_MinNormSynthesis(benchmark::State& state) {
  const auto spec = curvelet(17, 11);
  const auto bank = trigbound::fb::initial_bank(spec, trigbound::fb::InitStrategy::kRandom, 0.1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(trigbound::fb::min_norm_synthesis(bank, 64).taps().data());
}
BENCHMARK(BM_MinNormSynthesis)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
