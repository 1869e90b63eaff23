#include "artin/estimators.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace artin;

const std::vector<primes::PrimeRecord>& records() {
    static const auto recs = primes::first_records(100'000);
    return recs;
}

void run_kind(benchmark::State& state, est::EstimatorConfig cfg) {
    const auto& recs = records();
    for (auto _ : state) {
        auto e = est::make_estimator(cfg);
        for (const auto& r : recs) e.ingest(r);
        benchmark::DoNotOptimize(e.state().num_acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(recs.size()));
}

void BM_Ratio(benchmark::State& state) {
    est::EstimatorConfig cfg;
    cfg.kind = est::Kind::ratio;
    cfg.k = static_cast<unsigned>(state.range(0));
    run_kind(state, cfg);
}
BENCHMARK(BM_Ratio)->Arg(0)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RankRatio(benchmark::State& state) {
    est::EstimatorConfig cfg;
    cfg.kind = est::Kind::rank_ratio;
    cfg.r = static_cast<unsigned>(state.range(0));
    run_kind(state, cfg);
}
BENCHMARK(BM_RankRatio)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CensusPrimitive(benchmark::State& state) {
    est::EstimatorConfig cfg;
    cfg.kind = est::Kind::census_primitive;
    cfg.gspec = arith::make_gspec(2);
    run_kind(state, cfg);
}
BENCHMARK(BM_CensusPrimitive)->Unit(benchmark::kMillisecond);

} // namespace
