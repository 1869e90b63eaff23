#include "artin/factorization.hpp"

#include "artin/errors.hpp"

#include <ostream>
#include <stdexcept>

namespace artin {

Factorization::Factorization(std::initializer_list<PrimePower> powers) {
    for (const auto& pp : powers) push_back(pp.q, pp.k);
}

void Factorization::push_back(std::uint64_t q, unsigned k) {
    if (size_ == capacity) throw std::length_error("factorization capacity exceeded");
    if (k == 0 || q < 2 || (size_ > 0 && q <= primes_[size_ - 1]))
        throw std::invalid_argument("factorization entries must be ascending primes with k >= 1");
    primes_[size_] = q;
    exps_[size_] = static_cast<std::uint8_t>(k);
    ++size_;
}

std::uint64_t Factorization::value() const {
    std::uint64_t n = 1;
    for (std::size_t j = 0; j < size_; ++j)
        for (unsigned e = 0; e < exps_[j]; ++e)
            if (__builtin_mul_overflow(n, primes_[j], &n))
                throw OverflowError("factorization value exceeds 64 bits");
    return n;
}

bool operator==(const Factorization& a, const Factorization& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t j = 0; j < a.size_; ++j)
        if (a.primes_[j] != b.primes_[j] || a.exps_[j] != b.exps_[j]) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const Factorization& f) {
    os << '{';
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j) os << ", ";
        os << f.prime(j);
        if (f.exponent(j) > 1) os << '^' << f.exponent(j);
    }
    return os << '}';
}

Factorization trial_factor(std::uint64_t n) {
    if (n == 0) throw DomainError("cannot factor 0");
    Factorization f;
    auto strip = [&](std::uint64_t q) {
        unsigned k = 0;
        while (n % q == 0) {
            n /= q;
            ++k;
        }
        if (k) f.push_back(q, k);
    };
    strip(2);
    strip(3);
    for (std::uint64_t q = 5; q <= n / q; q += 6) {
        strip(q);
        strip(q + 2);
    }
    if (n > 1) f.push_back(n, 1);
    return f;
}

} // namespace artin
