#include <benchmark/benchmark.h>

#include "potts/bounds.hpp"
#include "potts/exact.hpp"
#include "potts/mc.hpp"
#include "potts/model.hpp"

using namespace potts;

static void BM_Energy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ModelParams params{n, 3, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(n, 1);
    const auto sigma = SpinConfiguration::uniform(n, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy(params, disorder, sigma));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Energy)->RangeMultiplier(2)->Range(16, 512)->Complexity();

static void BM_RecolorDelta(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto disorder = DisorderSample::generate(n, 2);
    auto sigma = SpinConfiguration::uniform(n, 4);
    int site = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            recolor_delta(disorder, sigma, site, (sigma.color(site) + 1) % 4));
        site = (site + 1) % n;
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_RecolorDelta)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_GibbsSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ModelParams params{n, 3, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(n, 3);
    ChainState chain(params, disorder, 1.0, 7);
    chain.randomize(params, disorder);
    SweepWorkspace workspace(disorder, 3);
    for (auto _ : state) {
        gibbs_sweep(chain, params, disorder, workspace);
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GibbsSweep)->RangeMultiplier(2)->Range(32, 512);

static void BM_LogPartition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ModelParams params{n, 2, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(n, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_partition(params, disorder));
    }
    state.SetItemsProcessed(state.iterations() * (1ll << n));
}
BENCHMARK(BM_LogPartition)->DenseRange(10, 18, 4);

static void BM_RegionScanRow(benchmark::State& state) {
    std::vector<double> betas;
    for (double beta = 0.0; beta <= 50.0; beta += 0.01) betas.push_back(beta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bounds::region_scan(58, 58, betas, bounds::kRsLowerSlope));
    }
    state.SetItemsProcessed(state.iterations() * betas.size());
}
BENCHMARK(BM_RegionScanRow);

static void BM_RsGaussianValue(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bounds::rs_gaussian_value(8, 5.0, state.range(0), 11));
    }
}
BENCHMARK(BM_RsGaussianValue)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
