#include <benchmark/benchmark.h>

#include "sbvecm/compare.hpp"
#include "sbvecm/dgp.hpp"
#include "sbvecm/gibbs.hpp"
#include "sbvecm/linalg.hpp"
#include "sbvecm/subspace.hpp"

using namespace sbvecm;

namespace {

const QuarterlySeries& reference_data() {
  static const QuarterlySeries y = simulate(DgpConfig::reference()).series;
  return y;
}

const ModelSpec kSpec{2, 5, 4, 0, 1, 1, 1};

void BM_ConditionalLogMdd(benchmark::State& state) {
  const CrossProducts xp = cross_products(build_design(reference_data(), kSpec));
  const PriorHyper hyper = make_hyper(kSpec);
  const MarginalLikelihood ml(xp, kSpec, hyper);
  Rng rng(1);
  for (auto _ : state) {
    state.PauseTiming();
    const LoadingsDraw b = sample_prior_loadings(kSpec, hyper, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(ml(b));
  }
}
BENCHMARK(BM_ConditionalLogMdd);

void BM_EstimateLogMdd(benchmark::State& state) {
  const CrossProducts xp = cross_products(build_design(reference_data(), kSpec));
  const PriorHyper hyper = make_hyper(kSpec);
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_log_mdd(xp, kSpec, hyper, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateLogMdd)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GibbsSweep(benchmark::State& state) {
  const CrossProducts xp = cross_products(build_design(reference_data(), kSpec));
  const PriorHyper hyper = make_hyper(kSpec);
  Rng rng(3);
  ParamState s = initial_state(xp, kSpec, hyper);
  for (auto _ : state) {
    s = gibbs_sweep(s, xp, kSpec, hyper, rng);
    benchmark::DoNotOptimize(s.sigma.data());
  }
}
BENCHMARK(BM_GibbsSweep);

void BM_StabilityCheck(benchmark::State& state) {
  const ParamState s = DgpConfig::reference().state();
  const ModelSpec spec = DgpConfig::reference().spec();
  for (auto _ : state) benchmark::DoNotOptimize(stability_check(build_companion(s, spec), spec));
}
BENCHMARK(BM_StabilityCheck);

void BM_TruncationFraction(benchmark::State& state) {
  const PriorHyper hyper = make_hyper(kSpec);
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(truncation_fraction(kSpec, hyper, state.range(0), rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TruncationFraction)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HermitianSqrt(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(5);
  const CMatrix x = standard_normal(m, m, rng).cast<Complex>() +
                    Complex(0, 1) * standard_normal(m, m, rng).cast<Complex>();
  const CMatrix h = x * x.adjoint() + CMatrix::Identity(m, m);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_sqrt(h));
}
BENCHMARK(BM_HermitianSqrt)->Arg(2)->Arg(4)->Arg(8);

void BM_SummarizeSpace(benchmark::State& state) {
  Rng rng(6);
  ProjectorAccumulator acc(4, 1);
  for (int i = 0; i < 100; ++i) {
    const Matrix v = standard_normal(4, 1, rng);
    acc.add(Matrix(v / v.norm()));
  }
  for (auto _ : state) benchmark::DoNotOptimize(summarize_space(acc));
}
BENCHMARK(BM_SummarizeSpace);

}  // namespace

BENCHMARK_MAIN();
