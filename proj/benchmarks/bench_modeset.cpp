#include "modeset/edelman.hpp"
#include "modeset/mest.hpp"
#include "modeset/numerics.hpp"
#include "modeset/sim.hpp"
#include "modeset/spacings.hpp"

#include <benchmark/benchmark.h>

using namespace modeset;

static void BM_RegIncBeta(benchmark::State& state)
{
    const double a = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(numerics::reg_inc_beta(0.3 * a / (a + 100), a, 100.0));
}
BENCHMARK(BM_RegIncBeta)->Arg(2)->Arg(64)->Arg(4096);

static void BM_QBeta(benchmark::State& state)
{
    const double a = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(numerics::qbeta(1e-6, a, 4097.0 - a));
}
BENCHMARK(BM_QBeta)->Arg(8)->Arg(256)->Arg(2048);

static void BM_BuildPlan(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spacings::build_plan(n, Probability(0.05)));
}
BENCHMARK(BM_BuildPlan)->Arg(1000)->Arg(100000);

static void BM_M1(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const SortedSample x(sim::fbeta_sample(1.0, {1, 0}, n));
    const auto plan = spacings::build_plan(n, Probability(0.05));
    for (auto _ : state) benchmark::DoNotOptimize(spacings::m1_confidence_interval(x, plan));
}
BENCHMARK(BM_M1)->Arg(1000)->Arg(100000);

static void BM_M2(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = sim::fbeta_sample(1.0, {2, 0}, n);
    mest::MEstConfig cfg;
    cfg.h = sim::study_bandwidth(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mest::m2_confidence_set(x, cfg));
}
BENCHMARK(BM_M2)->Arg(1000)->Arg(100000);

static void BM_M2Adaptive(benchmark::State& state)
{
    const auto x = sim::fbeta_sample(1.0, {3, 0}, static_cast<std::size_t>(state.range(0)));
    const mest::MEstConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(mest::m2_adaptive_confidence_set(x, cfg));
}
BENCHMARK(BM_M2Adaptive)->Arg(1000);

static void BM_M3(benchmark::State& state)
{
    const auto x = sim::fbeta_sample(1.0, {4, 0}, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(edelman::m3_confidence_set(x, Probability(0.05)));
}
BENCHMARK(BM_M3)->Arg(1000)->Arg(10000);

static void BM_M3Prime(benchmark::State& state)
{
    const auto x = sim::fbeta_sample(1.0, {5, 0}, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(edelman::m3prime_confidence_set(x, Probability(0.05), 2.0));
}
BENCHMARK(BM_M3Prime)->Arg(1000);

BENCHMARK_MAIN();
