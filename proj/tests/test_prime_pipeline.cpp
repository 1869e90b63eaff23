#include "artin/errors.hpp"
#include "artin/prime_pipeline.hpp"
#include "support/reference.hpp"

#include <gtest/gtest.h>

#include <random>

namespace artin::primes {
namespace {

using testing::factor_td;
using testing::primes_td;

Factorization from_map(const std::map<std::uint64_t, unsigned>& m) {
    Factorization f;
    for (const auto& [q, k] : m) f.push_back(q, k);
    return f;
}

TEST(SieveSegment, FirstPrimes) {
    EXPECT_EQ(sieve_segment({0, 30}), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(SieveSegment, UpperBoundIsExclusive) {
    EXPECT_EQ(sieve_segment({0, 3}), (std::vector<std::uint64_t>{2}));
    EXPECT_EQ(sieve_segment({0, 2}), (std::vector<std::uint64_t>{}));
    EXPECT_EQ(sieve_segment({3, 4}), (std::vector<std::uint64_t>{3}));
}

TEST(SieveSegment, MatchesTrialDivision) {
    EXPECT_EQ(sieve_segment({100, 120}), primes_td(100, 120));
    EXPECT_EQ(sieve_segment({100, 120}), (std::vector<std::uint64_t>{101, 103, 107, 109, 113}));
}

TEST(SieveSegment, RandomWindowsMatchTrialDivision) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t lo = rng() % 5'000'000;
        const std::uint64_t hi = lo + 1 + rng() % 3000;
        ASSERT_EQ(sieve_segment({lo, hi}), primes_td(lo, hi)) << "[" << lo << ", " << hi << ")";
    }
}

TEST(SieveSegment, RejectsEmptySegment) {
    EXPECT_THROW(sieve_segment({10, 10}), DomainError);
}

TEST(FactorShiftedSegment, HandFactorizations) {
    const auto table = factor_shifted_segment({10, 20});
    ASSERT_EQ(table.size(), 4u);
    EXPECT_EQ(table[0].p, 11u);
    EXPECT_EQ(table[0].pm1, (Factorization{{2, 1}, {5, 1}}));
    EXPECT_EQ(table[1].pm1, (Factorization{{2, 2}, {3, 1}}));
    EXPECT_EQ(table[2].pm1, (Factorization{{2, 4}}));
    EXPECT_EQ(table[3].pm1, (Factorization{{2, 1}, {3, 2}}));
}

TEST(FactorShiftedSegment, SmallPrimes) {
    const auto table = factor_shifted_segment({0, 4});
    ASSERT_EQ(table.size(), 2u);
    EXPECT_TRUE(table[0].pm1.empty());
    EXPECT_EQ(table[1].pm1, (Factorization{{2, 1}}));
}

TEST(FactorShiftedSegment, MatchesTrialDivisionOracle) {
    const auto table = factor_shifted_segment({100, 120});
    const std::vector<Factorization> expected{
        {{2, 2}, {5, 2}}, {{2, 1}, {3, 1}, {17, 1}}, {{2, 1}, {53, 1}}, {{2, 2}, {3, 3}}, {{2, 4}, {7, 1}}};
    ASSERT_EQ(table.size(), expected.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        EXPECT_EQ(table[i].pm1, expected[i]);
        EXPECT_EQ(table[i].pm1, from_map(factor_td(table[i].p - 1)));
    }
}

TEST(FactorShiftedSegment, LargeCofactorIsPrime) {
    // p - 1 = 2 * q with q prime larger than sqrt(hi)
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t lo = 1'000'000'000 + rng() % 1'000'000'000;
        for (const auto& fp : factor_shifted_segment({lo, lo + 2000}))
            ASSERT_EQ(fp.pm1, from_map(factor_td(fp.p - 1))) << fp.p;
    }
}

TEST(PrimeStream, CountStop) {
    PrimeStream stream(StreamStop::count(4));
    std::vector<PrimeRecord> got;
    stream.for_each([&](const PrimeRecord& r) { got.push_back(r); });
    ASSERT_EQ(got.size(), 4u);
    EXPECT_EQ(got[0].index, 1u);
    EXPECT_EQ(got[0].p, 2u);
    EXPECT_TRUE(got[0].pm1.empty());
    EXPECT_EQ(got[1].pm1, (Factorization{{2, 1}}));
    EXPECT_EQ(got[2].pm1, (Factorization{{2, 2}}));
    EXPECT_EQ(got[3].p, 7u);
    EXPECT_EQ(got[3].pm1, (Factorization{{2, 1}, {3, 1}}));
}

TEST(PrimeStream, BoundStop) {
    PrimeStream stream(StreamStop::bound(10));
    std::vector<std::uint64_t> ps;
    while (auto r = stream.next()) ps.push_back(r->p);
    EXPECT_EQ(ps, (std::vector<std::uint64_t>{2, 3, 5, 7}));
}

TEST(PrimeStream, BoundIsInclusive) {
    PrimeStream stream(StreamStop::bound(11));
    std::uint64_t last = 0;
    stream.for_each([&](const PrimeRecord& r) { last = r.p; });
    EXPECT_EQ(last, 11u);
}

TEST(PrimeStream, TenThousandthPrime) {
    const auto recs = first_records(10'000);
    EXPECT_EQ(recs.back().index, 10'000u);
    EXPECT_EQ(recs.back().p, 104'729u);
}

TEST(PrimeStream, RestartReplaysFromTheBeginning) {
    PrimeStream stream(StreamStop::count(1000), {4096, 1});
    std::vector<std::uint64_t> first;
    stream.for_each([&](const PrimeRecord& r) { first.push_back(r.p); });
    stream.restart();
    std::vector<std::uint64_t> second;
    stream.for_each([&](const PrimeRecord& r) { second.push_back(r.p); });
    EXPECT_EQ(first, second);
}

TEST(PrimeStream, NextAndBatchesAgree) {
    PrimeStream a(StreamStop::count(5000), {1 << 12, 1});
    PrimeStream b(StreamStop::count(5000), {1 << 12, 1});
    std::vector<std::uint64_t> via_next;
    while (auto r = a.next()) via_next.push_back(r->p);
    std::vector<std::uint64_t> via_batch;
    b.for_each([&](const PrimeRecord& r) { via_batch.push_back(r.p); });
    EXPECT_EQ(via_next, via_batch);
}

TEST(PrimeStream, BoundAboveMaximumIsRefused) {
    EXPECT_THROW(PrimeStream(StreamStop::bound((std::uint64_t{1} << 48) + 1)), ResourceExhausted);
    EXPECT_THROW(PrimeStream(StreamStop::bound(1000), {default_segment_size, 1, 100}), ResourceExhausted);
}

TEST(PrimeStream, CountBeyondMaximumSignals) {
    PrimeStream stream(StreamStop::count(100), {64, 1, 200});
    EXPECT_THROW(stream.for_each([](const PrimeRecord&) {}), ResourceExhausted);
}

TEST(PrimeStream, ReconstructionAndCensusToOneMillion) {
    PrimeStream stream(StreamStop::bound(1'000'000));
    std::uint64_t count = 0;
    std::uint64_t prev = 0;
    stream.for_each([&](const PrimeRecord& r) {
        ++count;
        ASSERT_EQ(r.index, count);
        ASSERT_GT(r.p, prev);
        prev = r.p;
        ASSERT_EQ(r.pm1.value(), r.p - 1);
        for (const auto pp : r.pm1) ASSERT_TRUE(testing::is_prime_td(pp.q)) << pp.q;
    });
    EXPECT_EQ(count, 78'498u);
}

std::vector<PrimeRecord> collect(StreamStop stop, StreamOptions opt) {
    PrimeStream s(stop, opt);
    std::vector<PrimeRecord> out;
    s.for_each([&](const PrimeRecord& r) { out.push_back(r); });
    return out;
}

bool same(const std::vector<PrimeRecord>& a, const std::vector<PrimeRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].index != b[i].index || a[i].p != b[i].p || !(a[i].pm1 == b[i].pm1)) return false;
    return true;
}

TEST(PrimeStream, SegmentSizeIndependence) {
    const auto small = collect(StreamStop::count(200'000), {1 << 12, 1});
    const auto large = collect(StreamStop::count(200'000), {1 << 20, 1});
    EXPECT_TRUE(same(small, large));
}

TEST(PrimeStream, ParallelDeterminism) {
    const auto serial = collect(StreamStop::count(150'000), {1 << 14, 1});
    for (unsigned workers : {2u, 4u, 8u})
        EXPECT_TRUE(same(serial, collect(StreamStop::count(150'000), {1 << 14, workers}))) << workers;
}

} // namespace
} // namespace artin::primes
