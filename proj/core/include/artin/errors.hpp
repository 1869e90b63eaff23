#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace artin {

/// Argument outside the mathematical domain of an operation (even Jacobi
/// modulus, |g| <= 1, p | g for an order computation, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid estimator or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact accumulator or local factor exceeded its fixed width.
class OverflowError : public std::overflow_error {
public:
    OverflowError(const std::string& what, std::uint64_t prime)
        : std::overflow_error(what + " (at p = " + std::to_string(prime) + ")"), prime_(prime) {}
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}

    std::uint64_t prime() const noexcept { return prime_; }

private:
    std::uint64_t prime_ = 0;
};

/// A request beyond the configured resource ceiling, e.g. a prime bound
/// above the stream's maximum.
class ResourceExhausted : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Snapshot requested before any qualifying prime was ingested.
class NotReady : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace artin
