#pragma once

#include "artin/arithmetic.hpp"
#include "artin/numeric_types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace artin::constants {

/// Largest number of decimal places any routine here will certify. The
/// working type carries 100 digits; 15 guard digits plus rounding headroom
/// sit on top of the request.
inline constexpr unsigned max_digits = 60;
inline constexpr unsigned guard_digits = 15;

/// A value with a bound on its absolute error.
struct HighPrecisionReal {
    Real value = 0;
    Real err_bound = 0;

    /// Fixed-point rendering with `decimals` places after the point.
    std::string to_string(unsigned decimals) const;

    /// True when err_bound < 0.5 * 10^-decimals.
    bool certifies(unsigned decimals) const;

    HighPrecisionReal scaled(const Rational& factor) const;
};

/// zeta(s) for integer s >= 2 by Euler-Maclaurin summation. The remainder is
/// bounded by the first omitted correction term (valid for real s > 1).
HighPrecisionReal zeta_integer(unsigned s, unsigned digits);

/// Prime zeta P(m) = sum_p p^-m = sum_k mu(k)/k log zeta(k m).
HighPrecisionReal prime_zeta(unsigned m, unsigned digits);

/// Local Euler factor 1 - x(1/p) with x(u) = u^e / (1 - u^c), together with
/// the power series -log(1 - x(u)) = sum_{m>=2} a_m u^m.
///
///   Artin      e = 2,     c = 1:  1 - 1/(p(p-1))
///   Stephens   e = 2,     c = 3:  1 - p/(p^3 - 1)
///   rank r     e = r + 1, c = 1:  1 - 1/(p^r (p-1))
class LocalFactorSeries {
public:
    LocalFactorSeries(unsigned lead_exponent, unsigned period, unsigned degree);

    unsigned lead_exponent() const { return lead_; }
    unsigned period() const { return period_; }
    unsigned degree() const { return static_cast<unsigned>(coeffs_.size()) - 1; }

    /// a_m for 0 <= m <= degree(); a_0 = a_1 = 0.
    const Rational& coefficient(unsigned m) const { return coeffs_.at(m); }

    /// 1 - x(1/p), evaluated directly.
    Real local_factor(std::uint64_t p) const;

    /// Bound on sum_{p > p0} sum_{m > M} |a_m| p^-m. Uses |a_m| <= C 2^m / m,
    /// which holds because 1 - u^c - u^e has no zero in |u| <= 1/2.
    Real tail_bound(std::uint64_t p0, unsigned truncation) const;

    /// Smallest truncation degree whose tail bound is below tol.
    unsigned truncation_for(std::uint64_t p0, const Real& tol) const;

private:
    unsigned lead_;
    unsigned period_;
    std::vector<Rational> coeffs_;
};

LocalFactorSeries artin_series(unsigned degree = 160);
LocalFactorSeries stephens_series(unsigned degree = 160);
LocalFactorSeries rank_series(unsigned r, unsigned degree = 160);

inline constexpr std::uint64_t default_small_prime_cutoff = 100;

/// prod_p (1 - x(1/p)): direct product over p <= p0, and for p > p0 the log
/// series summed against prime zeta tails P(m) - sum_{p<=p0} p^-m.
HighPrecisionReal euler_product(const LocalFactorSeries& series, std::uint64_t p0, unsigned digits);

HighPrecisionReal artin_constant(unsigned digits);
HighPrecisionReal stephens_constant(unsigned digits);
HighPrecisionReal artin_rank_constant(unsigned r, unsigned digits);

/// A(g) / A and A~(g) / A as exact rationals.
Rational artin_g_correction(const arith::GSpec& gs);
Rational artin_g_tilde_correction(const arith::GSpec& gs);

/// A(g) = A_h A_d.
HighPrecisionReal artin_g_constant(const arith::GSpec& gs, unsigned digits);

/// Limit of the restricted ratio estimator: A~_h A~_d.
HighPrecisionReal artin_g_tilde(const arith::GSpec& gs, unsigned digits);

} // namespace artin::constants
