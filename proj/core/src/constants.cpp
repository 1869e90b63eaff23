#include "artin/constants.hpp"

#include "artin/errors.hpp"
#include "artin/prime_pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace artin::constants {

namespace {

using boost::multiprecision::cpp_int;

Real ipow(Real base, unsigned e) {
    Real out = 1;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

Real to_real(const Rational& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

const Real rounding_slack("1e-90");

void check_digits(unsigned digits) {
    if (digits > max_digits) throw DomainError("at most " + std::to_string(max_digits) + " digits are supported");
}

void reject_square(const arith::GSpec& gs) {
    if (gs.is_square)
        throw DomainError("g = " + std::to_string(gs.g) + " is a perfect square; its Artin density is not defined");
}

std::uint64_t magnitude(std::int64_t v) {
    return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

Rational discriminant_factor(const arith::GSpec& gs) {
    const std::uint64_t abs_d = magnitude(gs.d);
    const int mu = arith::moebius(abs_d);
    if (mu == 0) return Rational(1);
    Rational prod = 1;
    for (const auto [p, k] : trial_factor(abs_d)) {
        if (gs.h % p == 0) {
            if (p == 2) throw DomainError("A_d: factor 1/(p-2) undefined for p = 2 dividing both d and h");
            prod /= Rational(cpp_int(p - 2));
        } else {
            prod /= Rational(cpp_int(p * p - p - 1));
        }
    }
    return 1 - Rational(mu) * prod;
}

} // namespace

std::string HighPrecisionReal::to_string(unsigned decimals) const {
    return value.str(decimals, std::ios_base::fixed);
}

bool HighPrecisionReal::certifies(unsigned decimals) const {
    return err_bound < Real("0.5") * ipow(Real("0.1"), decimals);
}

HighPrecisionReal HighPrecisionReal::scaled(const Rational& factor) const {
    const Real f = to_real(factor);
    return {value * f, err_bound * abs(f) + rounding_slack};
}

LocalFactorSeries::LocalFactorSeries(unsigned lead_exponent, unsigned period, unsigned degree)
    : lead_(lead_exponent), period_(period), coeffs_(degree + 1, Rational(0)) {
    if (lead_ < 2 || period_ < 1) throw DomainError("local factor series requires e >= 2 and c >= 1");
    std::vector<cpp_int> x(degree + 1, 0);
    for (unsigned m = lead_; m <= degree; m += period_) x[m] = 1;

    // -log(1 - x) = sum_n x^n / n, truncated at u^degree.
    std::vector<cpp_int> power = x;
    for (unsigned n = 1; n * lead_ <= degree; ++n) {
        for (unsigned m = n * lead_; m <= degree; ++m)
            if (power[m] != 0) coeffs_[m] += Rational(power[m], cpp_int(n));
        std::vector<cpp_int> next(degree + 1, 0);
        for (unsigned i = n * lead_; i <= degree; ++i) {
            if (power[i] == 0) continue;
            for (unsigned j = lead_; i + j <= degree; j += period_) next[i + j] += power[i];
        }
        power = std::move(next);
    }
}

Real LocalFactorSeries::local_factor(std::uint64_t p) const {
    const Real pc = ipow(Real(p), period_);
    return 1 - pc / (ipow(Real(p), lead_) * (pc - 1));
}

Real LocalFactorSeries::tail_bound(std::uint64_t p0, unsigned truncation) const {
    const unsigned big_m = truncation;
    const Real c = Real(std::max(lead_, period_) + period_);
    const Real p = Real(p0);
    return c * ipow(Real(2), big_m + 1) / (Real(big_m + 1) * big_m * (1 - 2 / p) * ipow(p, big_m));
}

unsigned LocalFactorSeries::truncation_for(std::uint64_t p0, const Real& tol) const {
    for (unsigned m = 2; m <= degree(); ++m)
        if (tail_bound(p0, m) < tol) return m;
    throw DomainError("local factor series degree too small for the requested precision");
}

LocalFactorSeries artin_series(unsigned degree) {
    return {2, 1, degree};
}

LocalFactorSeries stephens_series(unsigned degree) {
    return {2, 3, degree};
}

LocalFactorSeries rank_series(unsigned r, unsigned degree) {
    if (r < 1 || r > arith::max_rank) throw DomainError("rank r must lie in 1.." + std::to_string(arith::max_rank));
    return {r + 1, 1, degree};
}

HighPrecisionReal euler_product(const LocalFactorSeries& series, std::uint64_t p0, unsigned digits) {
    check_digits(digits);
    if (p0 < 3) throw DomainError("small-prime cutoff must be at least 3");
    const unsigned internal = digits + guard_digits;
    const Real tol = 1 / ipow(Real(10), internal);
    const unsigned big_m = series.truncation_for(p0, tol);

    Real log_direct = 0;
    std::vector<Real> power_sums(big_m + 1, Real(0));
    for (const std::uint64_t p : primes::sieve_segment({0, p0 + 1})) {
        const Real f = series.local_factor(p);
        if (f <= 0) throw DomainError("local factor is not positive at p = " + std::to_string(p));
        log_direct += log(f);
        const Real inv_p = 1 / Real(p);
        Real pw = inv_p;
        for (unsigned m = 1; m <= big_m; ++m, pw *= inv_p) power_sums[m] += pw;
    }

    Real tail_log = 0;
    Real err = series.tail_bound(p0, big_m) + rounding_slack;
    for (unsigned m = 2; m <= big_m; ++m) {
        const Rational& a = series.coefficient(m);
        if (a == 0) continue;
        const Real coeff = to_real(a);
        const HighPrecisionReal pz = prime_zeta(m, internal);
        tail_log += coeff * (pz.value - power_sums[m]);
        err += abs(coeff) * pz.err_bound;
    }

    const Real value = exp(log_direct - tail_log);
    // |exp(x + e) - exp(x)| <= exp(x) |e| (1 + |e|) for |e| < 1
    return {value, value * err * (1 + err)};
}

HighPrecisionReal artin_constant(unsigned digits) {
    static const LocalFactorSeries series = artin_series(64);
    return euler_product(series, default_small_prime_cutoff, digits);
}

HighPrecisionReal stephens_constant(unsigned digits) {
    static const LocalFactorSeries series = stephens_series(64);
    return euler_product(series, default_small_prime_cutoff, digits);
}

HighPrecisionReal artin_rank_constant(unsigned r, unsigned digits) {
    return euler_product(rank_series(r, 64), default_small_prime_cutoff, digits);
}

Rational artin_g_correction(const arith::GSpec& gs) {
    reject_square(gs);
    Rational corr = 1;
    for (const auto [p, k] : trial_factor(gs.h))
        corr *= Rational(cpp_int(p * (p - 2)), cpp_int(p * p - p - 1));
    return corr * discriminant_factor(gs);
}

Rational artin_g_tilde_correction(const arith::GSpec& gs) {
    reject_square(gs);
    Rational corr = 1;
    for (const auto [p, k] : trial_factor(gs.h))
        corr *= Rational(cpp_int(p * (p - 1)), cpp_int(p * p - p - 1));
    const bool d_divides_h = gs.h % magnitude(gs.d) == 0;
    return d_divides_h ? corr : corr * discriminant_factor(gs);
}

HighPrecisionReal artin_g_constant(const arith::GSpec& gs, unsigned digits) {
    const Rational corr = artin_g_correction(gs);
    return artin_constant(digits).scaled(corr);
}

HighPrecisionReal artin_g_tilde(const arith::GSpec& gs, unsigned digits) {
    const Rational corr = artin_g_tilde_correction(gs);
    return artin_constant(digits).scaled(corr);
}

} // namespace artin::constants
