#include "artin/prime_pipeline.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace artin::primes;

void BM_SieveSegment(benchmark::State& state) {
    const auto size = static_cast<std::uint64_t>(state.range(0));
    const auto base = BasePrimes::shared().covering(std::uint64_t{1} << 16);
    const std::uint64_t lo = std::uint64_t{1} << 30;
    for (auto _ : state) benchmark::DoNotOptimize(sieve_segment({lo, lo + size}, *base));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size));
}
BENCHMARK(BM_SieveSegment)->Arg(1 << 16)->Arg(1 << 20);

void BM_FactorShiftedSegment(benchmark::State& state) {
    const auto size = static_cast<std::uint64_t>(state.range(0));
    const auto base = BasePrimes::shared().covering(std::uint64_t{1} << 16);
    const std::uint64_t lo = std::uint64_t{1} << 30;
    for (auto _ : state) benchmark::DoNotOptimize(factor_shifted_segment({lo, lo + size}, *base));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size));
}
BENCHMARK(BM_FactorShiftedSegment)->Arg(1 << 16)->Arg(1 << 20);

void BM_StreamFirstPrimes(benchmark::State& state) {
    StreamOptions opts;
    opts.workers = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        PrimeStream s(StreamStop::count(static_cast<std::uint64_t>(state.range(0))), opts);
        std::uint64_t last = 0;
        s.for_each([&](const PrimeRecord& r) { last = r.p; });
        benchmark::DoNotOptimize(last);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StreamFirstPrimes)->Args({1'000'000, 1})->Args({1'000'000, 4})->Unit(benchmark::kMillisecond);

} // namespace
