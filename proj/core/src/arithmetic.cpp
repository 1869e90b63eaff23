#include "artin/arithmetic.hpp"

#include "artin/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace artin::arith {

namespace {

using boost::multiprecision::cpp_int;

std::uint64_t magnitude(std::int64_t v) {
    return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

// r^h, or nullopt-like max() when it exceeds 64 bits.
std::uint64_t checked_ipow(std::uint64_t r, unsigned h) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < h; ++i)
        if (__builtin_mul_overflow(out, r, &out)) return std::numeric_limits<std::uint64_t>::max();
    return out;
}

// Exact integer h-th root of m, or 0 when m is not a perfect h-th power.
std::uint64_t exact_root(std::uint64_t m, unsigned h) {
    const auto guess = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<long double>(m), 1.0L / h)));
    for (std::uint64_t r = guess > 1 ? guess - 1 : 1; r <= guess + 1; ++r)
        if (checked_ipow(r, h) == m) return r;
    return 0;
}

template <typename Fn>
Wide guarded(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const std::overflow_error&) {
        throw OverflowError(std::string(what) + " exceeds the 512-bit exact width");
    }
}

void check_not_min(std::int64_t g) {
    if (g == std::numeric_limits<std::int64_t>::min()) throw DomainError("integer magnitude exceeds 63 bits");
}

} // namespace

std::uint64_t totient_from_factorization(const Factorization& f) {
    std::uint64_t phi = 1;
    for (const auto [q, k] : f) {
        phi *= q - 1;
        for (unsigned e = 1; e < k; ++e) phi *= q;
    }
    return phi;
}

int moebius(std::uint64_t n) {
    if (n == 0) throw DomainError("moebius requires n >= 1");
    const Factorization f = trial_factor(n);
    for (const auto pp : f)
        if (pp.k > 1) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t reduce_mod(std::int64_t g, std::uint64_t p) {
    const std::uint64_t r = magnitude(g) % p;
    return (g < 0 && r != 0) ? p - r : r;
}

int jacobi_symbol(std::int64_t a, std::uint64_t n) {
    if (n == 0 || n % 2 == 0) throw DomainError("Jacobi symbol requires an odd positive modulus");
    std::uint64_t x = reduce_mod(a, n);
    std::uint64_t m = n;
    int t = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const std::uint64_t r = m % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) t = -t;
        x %= m;
    }
    return m == 1 ? t : 0;
}

std::pair<std::int64_t, unsigned> perfect_power_decompose(std::int64_t g) {
    check_not_min(g);
    const std::uint64_t m = magnitude(g);
    if (m < 2) throw DomainError("perfect power decomposition requires |g| >= 2");
    for (unsigned h = 63; h >= 2; --h) {
        if (g < 0 && h % 2 == 0) continue;
        const std::uint64_t r = exact_root(m, h);
        if (r >= 2) return {g < 0 ? -static_cast<std::int64_t>(r) : static_cast<std::int64_t>(r), h};
    }
    return {g, 1};
}

GSpec make_gspec(std::int64_t g) {
    GSpec s;
    s.g = g;
    std::tie(s.g0, s.h) = perfect_power_decompose(g);

    std::uint64_t core = 1;
    for (const auto [q, k] : trial_factor(magnitude(g)))
        if (k % 2 == 1) core *= q;
    s.sqfree = g < 0 ? -static_cast<std::int64_t>(core) : static_cast<std::int64_t>(core);
    s.is_square = s.sqfree == 1;

    const std::int64_t residue = ((s.sqfree % 4) + 4) % 4;
    if (residue == 1) {
        s.d = s.sqfree;
    } else if (__builtin_mul_overflow(s.sqfree, std::int64_t{4}, &s.d)) {
        throw DomainError("discriminant of Q(sqrt g) exceeds 64 bits");
    }
    return s;
}

Wide wide_pow(std::uint64_t p, unsigned k) {
    return guarded("p^k", [&] {
        Wide out = 1;
        for (unsigned i = 0; i < k; ++i) out *= p;
        return out;
    });
}

Wide stephens_local(const Factorization& pm1) {
    return guarded("S(p)", [&] {
        Wide out = 1;
        for (const auto [q, k] : pm1) out *= (wide_pow(q, 2 * k + 1) + 1) / (q + 1);
        return out;
    });
}

Wide artin_rank_local(const Factorization& pm1, unsigned r) {
    if (r < 1 || r > max_rank) throw DomainError("rank r must lie in 1.." + std::to_string(max_rank));
    return guarded("A_r(p)", [&] {
        Wide out = 1;
        for (const auto [q, k] : pm1) out *= wide_pow(q, r * (k - 1)) * (wide_pow(q, r) - 1);
        return out;
    });
}

LocalFactor stephens_probability(std::uint64_t p, const Factorization& pm1) {
    return {p, stephens_local(pm1), wide_pow(p - 1, 2)};
}

LocalFactor artin_rank_probability(std::uint64_t p, const Factorization& pm1, unsigned r) {
    return {p, artin_rank_local(pm1, r), wide_pow(p - 1, r)};
}

std::pair<Wide, Wide> alt_totient_tower(const Factorization& pm1, std::uint64_t p, unsigned k) {
    const std::uint64_t phi_pm1 = totient_from_factorization(pm1);
    return {guarded("phi(phi(p^{k+1}))",
                    [&] { return k == 0 ? Wide(phi_pm1) : wide_pow(p, k - 1) * (p - 1) * phi_pm1; }),
            guarded("phi(p^{k+1})", [&] { return wide_pow(p, k) * (p - 1); })};
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

std::uint64_t multiplicative_order(std::int64_t g, std::uint64_t p, const Factorization& pm1) {
    const std::uint64_t a = reduce_mod(g, p);
    if (a == 0) throw DomainError("multiplicative order undefined: p = " + std::to_string(p) + " divides g");
    std::uint64_t t = p - 1;
    for (const auto [q, k] : pm1) {
        for (unsigned e = 0; e < k; ++e) {
            if (powmod(a, t / q, p) != 1) break;
            t /= q;
        }
    }
    return t;
}

std::uint64_t subgroup_order(std::span<const std::int64_t> gs, std::uint64_t p, const Factorization& pm1) {
    std::uint64_t order = 1;
    for (const std::int64_t g : gs) order = std::lcm(order, multiplicative_order(g, p, pm1));
    return order;
}

} // namespace artin::arith
