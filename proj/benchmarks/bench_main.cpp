#include <benchmark/benchmark.h>

#include <vector>

#include "circreg/datasets.hpp"
#include "circreg/gof.hpp"
#include "circreg/regression.hpp"
#include "circreg/wrapped_cauchy.hpp"

namespace {

using namespace circreg;

PairedSample simulated(std::size_t n) {
    RngStream rng(1, 1);
    std::vector<Angle> x;
    for (std::size_t i = 0; i < n; ++i) {
        x.emplace_back(rng.uniform(0.0, kTwoPi));
    }
    const ModelParams truth(kPi / 4, kPi / 6, 0.9, 0.5);
    const ErrorSampler errors = [](std::size_t m, RngStream& r) { return wc_sample(WCParams(0.5), m, r); };
    auto y = simulate_model(truth, x, errors, rng);
    return PairedSample(std::move(x), std::move(y));
}

void BM_FitMle(benchmark::State& state) {
    const PairedSample data = simulated(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_mle(data));
    }
}
BENCHMARK(BM_FitMle)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_FitMleEmbedded(benchmark::State& state) {
    const PairedSample data = embedded_dataset("gene-peaks").sample();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_mle(data));
    }
}
BENCHMARK(BM_FitMleEmbedded)->Unit(benchmark::kMillisecond);

void BM_LogLikelihood(benchmark::State& state) {
    const PairedSample data = simulated(static_cast<std::size_t>(state.range(0)));
    const ModelParams p(0.7, 0.4, 0.8, 0.45);
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_likelihood(p, data));
    }
}
BENCHMARK(BM_LogLikelihood)->Arg(100)->Arg(1000);

void BM_TnStatistic(benchmark::State& state) {
    RngStream rng(2, 1);
    const auto res = wc_sample(WCParams(0.5), static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tn_statistic(res, 0.5, WeightSpec{1.0}));
    }
}
BENCHMARK(BM_TnStatistic)->Arg(50)->Arg(463);

void BM_AllStatistics(benchmark::State& state) {
    RngStream rng(3, 1);
    const auto res = wc_sample(WCParams(0.5), 100, rng);
    const auto specs = default_statistics();
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_statistics(res, 0.5, specs));
    }
}
BENCHMARK(BM_AllStatistics);

void BM_WcSample(benchmark::State& state) {
    RngStream rng(4, 1);
    const WCParams law(0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wc_sample(law, 1000, rng));
    }
}
BENCHMARK(BM_WcSample);

}  // namespace

BENCHMARK_MAIN();
