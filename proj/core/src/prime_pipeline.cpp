#include "artin/prime_pipeline.hpp"

#include "artin/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace artin::primes {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

BasePrimes::Table simple_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    BasePrimes::Table out;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (composite[n]) continue;
        out.push_back(static_cast<std::uint32_t>(n));
        for (std::uint64_t m = n * n; m <= limit; m += n) composite[m] = true;
    }
    return out;
}

// Odd-only byte sieve of [lo, hi). Slot j stands for first_odd + 2j.
struct OddSieve {
    std::uint64_t first_odd = 0;
    std::vector<std::uint8_t> is_prime;
};

OddSieve sieve_odd(Segment seg, std::span<const std::uint32_t> base) {
    OddSieve s;
    s.first_odd = seg.lo | 1;
    if (s.first_odd >= seg.hi) return s;
    const std::uint64_t slots = (seg.hi - s.first_odd + 1) / 2;
    s.is_prime.assign(slots, 1);
    if (s.first_odd == 1) s.is_prime[0] = 0;
    for (const std::uint32_t q32 : base) {
        const std::uint64_t q = q32;
        if (q == 2) continue;
        if (q * q >= seg.hi) break;
        std::uint64_t m = std::max(q * q, (s.first_odd + q - 1) / q * q);
        if ((m & 1) == 0) m += q;
        for (std::uint64_t j = (m - s.first_odd) / 2; j < slots; j += q) s.is_prime[j] = 0;
    }
    return s;
}

void check_segment(Segment seg) {
    if (seg.lo >= seg.hi) throw DomainError("segment requires lo < hi");
}

} // namespace

std::shared_ptr<const BasePrimes::Table> BasePrimes::covering(std::uint64_t limit) {
    std::lock_guard lock(mutex_);
    if (limit > limit_) {
        const std::uint64_t grown = std::max<std::uint64_t>({limit, 2 * limit_, 1u << 16});
        table_ = std::make_shared<const Table>(simple_sieve(grown));
        limit_ = grown;
    }
    return table_;
}

BasePrimes& BasePrimes::shared() {
    static BasePrimes cache;
    return cache;
}

std::vector<std::uint64_t> sieve_segment(Segment seg, std::span<const std::uint32_t> base) {
    check_segment(seg);
    std::vector<std::uint64_t> out;
    if (seg.lo <= 2 && 2 < seg.hi) out.push_back(2);
    const OddSieve s = sieve_odd(seg, base);
    for (std::size_t j = 0; j < s.is_prime.size(); ++j)
        if (s.is_prime[j]) out.push_back(s.first_odd + 2 * j);
    return out;
}

std::vector<std::uint64_t> sieve_segment(Segment seg) {
    check_segment(seg);
    auto base = BasePrimes::shared().covering(isqrt(seg.hi) + 1);
    return sieve_segment(seg, *base);
}

std::vector<FactoredPrime> factor_shifted_segment(Segment seg, std::span<const std::uint32_t> base) {
    check_segment(seg);
    std::vector<FactoredPrime> out;
    if (seg.lo <= 2 && 2 < seg.hi) out.push_back({2, {}});
    const OddSieve s = sieve_odd(seg, base);
    const std::size_t slots = s.is_prime.size();
    const std::size_t first = out.size();

    // Map each sieve slot to its output position; the 2-part of p - 1 is
    // taken off directly since every odd p - 1 is even.
    std::vector<std::int32_t> position(slots, -1);
    std::vector<std::uint64_t> cofactor;
    for (std::size_t j = 0; j < slots; ++j) {
        if (!s.is_prime[j]) continue;
        const std::uint64_t p = s.first_odd + 2 * j;
        const std::uint64_t n = p - 1;
        const auto twos = static_cast<unsigned>(std::countr_zero(n));
        position[j] = static_cast<std::int32_t>(out.size() - first);
        FactoredPrime fp{p, {}};
        fp.pm1.push_back(2, twos);
        out.push_back(fp);
        cofactor.push_back(n >> twos);
    }
    if (cofactor.empty()) return out;

    // Odd q divides p - 1 (p odd) iff p = 1 mod 2q: stepping p by 2q is a
    // stride of q sieve slots.
    const std::uint64_t top = seg.hi - 2;  // largest p - 1 in range
    for (const std::uint32_t q32 : base) {
        const std::uint64_t q = q32;
        if (q == 2) continue;
        if (q * q > top) break;
        const std::uint64_t step = 2 * q;
        std::uint64_t p = (s.first_odd + step - 2) / step * step + 1;  // least p = 1 mod 2q, p >= first_odd
        for (std::uint64_t j = (p - s.first_odd) / 2; j < slots; j += q) {
            const std::int32_t pos = position[j];
            if (pos < 0) continue;
            std::uint64_t& r = cofactor[static_cast<std::size_t>(pos)];
            unsigned k = 0;
            do {
                r /= q;
                ++k;
            } while (r % q == 0);
            out[first + static_cast<std::size_t>(pos)].pm1.push_back(q, k);
        }
    }
    for (std::size_t i = 0; i < cofactor.size(); ++i)
        if (cofactor[i] > 1) out[first + i].pm1.push_back(cofactor[i], 1);
    return out;
}

std::vector<FactoredPrime> factor_shifted_segment(Segment seg) {
    check_segment(seg);
    auto base = BasePrimes::shared().covering(isqrt(seg.hi) + 1);
    return factor_shifted_segment(seg, *base);
}

PrimeStream::PrimeStream(StreamStop stop, StreamOptions options) : stop_(stop), options_(options) {
    if (stop_.value == 0) throw ConfigError("stream stop must be positive");
    if (options_.segment_size == 0) throw ConfigError("segment size must be positive");
    if (options_.workers == 0) options_.workers = 1;
    if (stop_.kind == StreamStop::Kind::bound && stop_.value > options_.max_bound)
        throw ResourceExhausted("prime bound " + std::to_string(stop_.value) + " exceeds the configured maximum " +
                                std::to_string(options_.max_bound));
}

PrimeStream::~PrimeStream() = default;

std::uint64_t PrimeStream::effective_end() const {
    const std::uint64_t bound = stop_.kind == StreamStop::Kind::bound ? stop_.value : options_.max_bound;
    return bound + 1;
}

void PrimeStream::launch_until_full() {
    const std::uint64_t end = effective_end();
    while (pending_.size() < options_.workers && next_lo_ < end) {
        const std::uint64_t span = std::min(options_.segment_size, end - next_lo_);
        const Segment seg{next_lo_, next_lo_ + span};
        next_lo_ += span;
        auto base = BasePrimes::shared().covering(isqrt(seg.hi) + 1);
        const auto policy = options_.workers > 1 ? std::launch::async : std::launch::deferred;
        pending_.push_back(std::async(policy, [seg, base] { return factor_shifted_segment(seg, *base); }));
    }
}

std::span<const PrimeRecord> PrimeStream::next_batch() {
    if (cursor_ < batch_.size()) {
        auto rest = std::span<const PrimeRecord>(batch_).subspan(cursor_);
        cursor_ = batch_.size();
        return rest;
    }
    batch_.clear();
    cursor_ = 0;
    while (!done_ && batch_.empty()) {
        launch_until_full();
        if (pending_.empty()) {
            done_ = true;
            if (stop_.kind == StreamStop::Kind::count && emitted_ < stop_.value)
                throw ResourceExhausted("prime stream reached the maximum bound " +
                                        std::to_string(options_.max_bound) + " after " + std::to_string(emitted_) +
                                        " primes");
            break;
        }
        std::vector<FactoredPrime> primes = pending_.front().get();
        pending_.pop_front();
        std::size_t take = primes.size();
        if (stop_.kind == StreamStop::Kind::count) take = std::min<std::uint64_t>(take, stop_.value - emitted_);
        batch_.reserve(take);
        for (std::size_t i = 0; i < take; ++i) batch_.push_back({++emitted_, primes[i].p, primes[i].pm1});
        if (stop_.kind == StreamStop::Kind::count && emitted_ == stop_.value) {
            done_ = true;
            pending_.clear();
        }
    }
    cursor_ = batch_.size();
    return batch_;
}

std::optional<PrimeRecord> PrimeStream::next() {
    if (cursor_ >= batch_.size()) {
        auto batch = next_batch();
        if (batch.empty()) return std::nullopt;
        cursor_ = 0;
    }
    return batch_[cursor_++];
}

void PrimeStream::restart() {
    pending_.clear();
    batch_.clear();
    cursor_ = 0;
    next_lo_ = 0;
    emitted_ = 0;
    done_ = false;
}

std::vector<PrimeRecord> first_records(std::uint64_t n, StreamOptions options) {
    PrimeStream stream(StreamStop::count(n), options);
    std::vector<PrimeRecord> out;
    out.reserve(n);
    stream.for_each([&](const PrimeRecord& r) { out.push_back(r); });
    return out;
}

} // namespace artin::primes
