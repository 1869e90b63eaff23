#pragma once

#include "artin/factorization.hpp"
#include "artin/numeric_types.hpp"

#include <cstdint>
#include <span>
#include <utility>

namespace artin::arith {

/// Invariants of an integer g that enter the density A(g):
/// g = g0^h with h maximal, the signed squarefree part of g and the
/// discriminant d of Q(sqrt g).
struct GSpec {
    std::int64_t g = 0;
    std::int64_t g0 = 0;
    unsigned h = 1;
    std::int64_t sqfree = 0;
    std::int64_t d = 0;
    bool is_square = false;
};

/// Rational local quantity at p, e.g. S(p) / (p-1)^2.
struct LocalFactor {
    std::uint64_t p = 0;
    Wide num;
    Wide den;

    Rational value() const { return Rational(num.convert_to<boost::multiprecision::cpp_int>(), den.convert_to<boost::multiprecision::cpp_int>()); }
};

inline constexpr unsigned max_rank = 8;
inline constexpr unsigned max_weight_exponent = 3;

std::uint64_t totient_from_factorization(const Factorization& f);

int moebius(std::uint64_t n);

/// Jacobi symbol (a/n) for odd n >= 1.
int jacobi_symbol(std::int64_t a, std::uint64_t n);

/// (g0, h) with g = g0^h and h maximal; negative g only admits odd h.
std::pair<std::int64_t, unsigned> perfect_power_decompose(std::int64_t g);

GSpec make_gspec(std::int64_t g);

/// S(p) = sum_{d | p-1} d phi(d), via the product over prime powers.
Wide stephens_local(const Factorization& pm1);

/// A_r(p) = prod (q^{r k} - q^{r (k-1)}); A_1(p) = phi(p-1).
Wide artin_rank_local(const Factorization& pm1, unsigned r);

/// S(p) / (p-1)^2 and A_r(p) / (p-1)^r.
LocalFactor stephens_probability(std::uint64_t p, const Factorization& pm1);
LocalFactor artin_rank_probability(std::uint64_t p, const Factorization& pm1, unsigned r);

/// (phi(phi(p^{k+1})), phi(p^{k+1})) = (phi(p^k) phi(p-1), p^k (p-1)).
std::pair<Wide, Wide> alt_totient_tower(const Factorization& pm1, std::uint64_t p, unsigned k);

/// p^k as a wide integer.
Wide wide_pow(std::uint64_t p, unsigned k);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m);

/// g reduced into [0, p).
std::uint64_t reduce_mod(std::int64_t g, std::uint64_t p);

/// Order of g in (Z/p)^*. Throws DomainError if p | g.
std::uint64_t multiplicative_order(std::int64_t g, std::uint64_t p, const Factorization& pm1);

/// Order of the subgroup of (Z/p)^* generated by gs: lcm of their orders.
std::uint64_t subgroup_order(std::span<const std::int64_t> gs, std::uint64_t p, const Factorization& pm1);

} // namespace artin::arith
