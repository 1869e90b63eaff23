#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>

namespace artin {

struct PrimePower {
    std::uint64_t q = 0;
    unsigned k = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a 64-bit integer as ascending (q, k) pairs.
///
/// Fixed capacity: no 64-bit integer has more than 15 distinct prime
/// factors, so the type never allocates and is cheap to copy through the
/// prime stream. Empty only for n = 1.
class Factorization {
public:
    static constexpr std::size_t capacity = 15;

    Factorization() = default;
    Factorization(std::initializer_list<PrimePower> powers);

    /// Appends q^k. q must exceed every prime already present.
    void push_back(std::uint64_t q, unsigned k);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    PrimePower operator[](std::size_t j) const noexcept { return {primes_[j], exps_[j]}; }
    std::uint64_t prime(std::size_t j) const noexcept { return primes_[j]; }
    unsigned exponent(std::size_t j) const noexcept { return exps_[j]; }

    /// prod q^k. Throws OverflowError if it does not fit in 64 bits.
    std::uint64_t value() const;

    class const_iterator {
    public:
        using value_type = PrimePower;
        using difference_type = std::ptrdiff_t;

        const_iterator() = default;
        const_iterator(const Factorization* f, std::size_t j) : f_(f), j_(j) {}
        PrimePower operator*() const { return (*f_)[j_]; }
        const_iterator& operator++() { ++j_; return *this; }
        const_iterator operator++(int) { auto t = *this; ++j_; return t; }
        friend bool operator==(const const_iterator& a, const const_iterator& b) { return a.j_ == b.j_; }

    private:
        const Factorization* f_ = nullptr;
        std::size_t j_ = 0;
    };

    const_iterator begin() const { return {this, 0}; }
    const_iterator end() const { return {this, size_}; }

    friend bool operator==(const Factorization& a, const Factorization& b);

private:
    std::array<std::uint64_t, capacity> primes_{};
    std::array<std::uint8_t, capacity> exps_{};
    std::uint8_t size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Factorization& f);

/// Trial-division factorization of n >= 1. Intended for small, user-supplied
/// integers; the bulk path is the segment factor sieve.
Factorization trial_factor(std::uint64_t n);

} // namespace artin
