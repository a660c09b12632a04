// Serial reference path against the OpenMP kernels.

#include "qgraph/assembler.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace qgraph;

namespace {

const CouplingParams& mathieu()
{
    static const CouplingParams c(
        Potential::sample_function(std::numbers::pi, 1001, [](double t) { return 10 * std::cos(2 * t); }), 2.0, 1.5);
    return c;
}

Exec backend(const benchmark::State& state)
{
    return state.range(0) == 0 ? Exec::serial() : Exec::openmp(static_cast<int>(state.range(0)));
}

void BM_sample_eta(benchmark::State& state)
{
    std::vector<double> zs(256);
    for (std::size_t i = 0; i < zs.size(); ++i)
        zs[i] = -5.0 + 0.25 * static_cast<double>(i);
    const auto exec = backend(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_eta(mathieu(), zs, exec));
}

void BM_butterfly(benchmark::State& state)
{
    const auto exec = backend(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(butterfly_sweep(mathieu(), 8, std::nullopt, 30.0, exec));
}

void BM_harper_kgrid(benchmark::State& state)
{
    const auto exec = backend(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(harper_kgrid_extrema(RationalFlux(3, 7), 1.0, 84, exec));
}

// Arg 0: serial reference; N > 0: OpenMP with N threads.
BENCHMARK(BM_sample_eta)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_butterfly)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_harper_kgrid)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
