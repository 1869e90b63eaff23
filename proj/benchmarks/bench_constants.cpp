#include "artin/constants.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace artin::constants;

void BM_ArtinConstant(benchmark::State& state) {
    const auto digits = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(artin_constant(digits));
}
BENCHMARK(BM_ArtinConstant)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SeriesCoefficients(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(stephens_series(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_SeriesCoefficients)->Arg(64)->Arg(160)->Unit(benchmark::kMillisecond);

} // namespace
