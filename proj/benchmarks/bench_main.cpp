#include <benchmark/benchmark.h>

#include <vector>

#include "fclt/functionals.hpp"
#include "fclt/norming.hpp"
#include "fclt/paths.hpp"
#include "fclt/rng.hpp"
#include "fclt/stable.hpp"
#include "fclt/stats.hpp"

namespace {

void BM_Sample(benchmark::State& state)
{
    const double alpha = static_cast<double>(state.range(0)) / 100.0;
    const auto params = fclt::StableParams::standard(alpha, 0.5);
    fclt::Philox4x32 rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fclt::draw(params, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Sample)->Arg(50)->Arg(100)->Arg(150)->Arg(200);

void BM_Cdf(benchmark::State& state)
{
    const auto params = fclt::StableParams::standard(1.5, 1.0);
    const double x = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fclt::cdf(params, x));
    }
}
BENCHMARK(BM_Cdf)->Arg(-30)->Arg(0)->Arg(5)->Arg(100);

void BM_CdfInversion(benchmark::State& state)
{
    const auto params = fclt::StableParams::standard(1.5, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fclt::cdf_inversion(params, 0.5));
    }
}
BENCHMARK(BM_CdfInversion);

void BM_KsOneSample(benchmark::State& state)
{
    const auto params = fclt::StableParams::standard(2.0, 0.0);
    fclt::Philox4x32 rng(2, 0);
    const auto x = fclt::sample(params, rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            fclt::ks_one_sample(x, [&](double v) { return fclt::cdf(params, v); }));
    }
}
BENCHMARK(BM_KsOneSample)->Arg(1000)->Arg(5000);

void BM_FunctionalStatistic(benchmark::State& state)
{
    const fclt::DoaSpec spec(fclt::family::Exponential{1.0});
    const auto n = static_cast<std::size_t>(state.range(0));
    fclt::Philox4x32 rng(3, 0);
    const auto x = fclt::sample_doa(spec, rng, n);
    const double a_n = fclt::norming_sequence(spec, n).a_n;
    const auto fn = fclt::FunctionSpec::qi_log(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fclt::functional_statistic(x, fn, 1.0, a_n, 4096));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FunctionalStatistic)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
