#pragma once

#include "artin/factorization.hpp"

#include <cstdint>
#include <deque>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace artin::primes {

inline constexpr std::uint64_t default_segment_size = std::uint64_t{1} << 20;
inline constexpr std::uint64_t default_max_bound = std::uint64_t{1} << 48;

/// Half-open integer window [lo, hi).
struct Segment {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

struct FactoredPrime {
    std::uint64_t p = 0;
    Factorization pm1;  // factorization of p - 1
};

struct PrimeRecord {
    std::uint64_t index = 0;  // p_1 = 2
    std::uint64_t p = 0;
    Factorization pm1;
};

/// Sieving primes up to some limit, grown on demand and shared between
/// segment workers as immutable snapshots.
class BasePrimes {
public:
    using Table = std::vector<std::uint32_t>;

    /// Returns a table holding every prime <= limit (possibly more).
    std::shared_ptr<const Table> covering(std::uint64_t limit);

    /// Process-wide cache used by the free sieve functions.
    static BasePrimes& shared();

private:
    std::mutex mutex_;
    std::shared_ptr<const Table> table_ = std::make_shared<Table>();
    std::uint64_t limit_ = 1;
};

/// Primes in [lo, hi), ascending.
std::vector<std::uint64_t> sieve_segment(Segment seg);
std::vector<std::uint64_t> sieve_segment(Segment seg, std::span<const std::uint32_t> base);

/// Every prime p in [lo, hi) with the complete factorization of p - 1,
/// computed by a factor sieve over [lo - 1, hi - 1).
std::vector<FactoredPrime> factor_shifted_segment(Segment seg);
std::vector<FactoredPrime> factor_shifted_segment(Segment seg, std::span<const std::uint32_t> base);

struct StreamStop {
    enum class Kind { count, bound };
    Kind kind = Kind::count;
    std::uint64_t value = 0;

    static StreamStop count(std::uint64_t n) { return {Kind::count, n}; }
    static StreamStop bound(std::uint64_t x) { return {Kind::bound, x}; }
};

struct StreamOptions {
    std::uint64_t segment_size = default_segment_size;
    unsigned workers = 1;
    std::uint64_t max_bound = default_max_bound;
};

/// Ordered stream of PrimeRecord for p_1, p_2, ... until the stop
/// condition. Segments are sieved and factored by up to `workers` concurrent
/// tasks and delivered strictly in ascending order, so the output does not
/// depend on the worker count or the segment size.
///
/// Requests beyond max_bound throw ResourceExhausted; for count stops this
/// happens lazily when the stream reaches the ceiling.
class PrimeStream {
public:
    explicit PrimeStream(StreamStop stop, StreamOptions options = {});
    ~PrimeStream();

    PrimeStream(const PrimeStream&) = delete;
    PrimeStream& operator=(const PrimeStream&) = delete;

    /// Next batch of consecutive records; empty once the stream is done.
    /// The span stays valid until the next call.
    std::span<const PrimeRecord> next_batch();

    /// Single-record convenience wrapper over next_batch().
    std::optional<PrimeRecord> next();

    /// Rewinds to p_1.
    void restart();

    template <typename Fn>
    void for_each(Fn&& fn) {
        for (auto batch = next_batch(); !batch.empty(); batch = next_batch())
            for (const auto& rec : batch) fn(rec);
    }

private:
    void launch_until_full();
    std::uint64_t effective_end() const;

    StreamStop stop_;
    StreamOptions options_;
    std::uint64_t next_lo_ = 0;
    std::uint64_t emitted_ = 0;
    bool done_ = false;
    std::deque<std::future<std::vector<FactoredPrime>>> pending_;
    std::vector<PrimeRecord> batch_;
    std::size_t cursor_ = 0;
};

/// Convenience: the first n records, materialized.
std::vector<PrimeRecord> first_records(std::uint64_t n, StreamOptions options = {});

} // namespace artin::primes
