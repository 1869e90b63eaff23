#include "artin/constants.hpp"

#include "artin/errors.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace artin::constants {

namespace {

using boost::multiprecision::cpp_int;

constexpr unsigned max_internal_digits = 90;
constexpr unsigned max_bernoulli_index = 200;

Real ipow(Real base, unsigned e) {
    Real out = 1;
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

Real ten_to_minus(unsigned digits) {
    return 1 / ipow(Real(10), digits);
}

// B_{2j} / (2j)! for j = 0, 1, ..., grown on demand from exact Bernoulli
// numbers.
class BernoulliTable {
public:
    Real scaled(unsigned j) {
        std::lock_guard lock(mutex_);
        if (j >= scaled_.size()) grow(j);
        return scaled_[j];
    }

private:
    void grow(unsigned j) {
        const unsigned n_max = 2 * j;
        if (n_max > max_bernoulli_index) throw DomainError("Euler-Maclaurin needs more Bernoulli numbers than supported");
        if (exact_.empty()) exact_.push_back(Rational(1));
        for (unsigned n = static_cast<unsigned>(exact_.size()); n <= n_max; ++n) {
            if (n >= 3 && n % 2 == 1) {
                exact_.push_back(Rational(0));
                continue;
            }
            // sum_{k=0}^{n} C(n+1, k) B_k = 0
            Rational acc = 0;
            cpp_int binom = 1;  // C(n+1, k)
            for (unsigned k = 0; k < n; ++k) {
                if (exact_[k] != 0) acc += Rational(binom) * exact_[k];
                binom = binom * (n + 1 - k) / (k + 1);
            }
            exact_.push_back(-acc / Rational(cpp_int(n + 1)));
        }
        cpp_int fact = 1;  // (2 jj)!
        for (unsigned jj = 0; jj <= j; ++jj) {
            if (jj > 0) fact *= cpp_int(2 * jj - 1) * (2 * jj);
            if (jj < scaled_.size()) continue;
            const Rational b = exact_[2 * jj];
            scaled_.push_back(Real(numerator(b)) / Real(denominator(b) * fact));
        }
    }

    std::mutex mutex_;
    std::vector<Rational> exact_;
    std::vector<Real> scaled_;
};

BernoulliTable& bernoulli() {
    static BernoulliTable table;
    return table;
}

std::mutex zeta_cache_mutex;
std::map<std::pair<unsigned, unsigned>, HighPrecisionReal> zeta_cache;

HighPrecisionReal zeta_uncached(unsigned s, unsigned digits) {
    const Real tol = ten_to_minus(digits + 2);
    const unsigned n_cut = digits + 10;
    const Real big_n = n_cut;

    Real sum = 0;
    for (unsigned n = n_cut - 1; n >= 1; --n) sum += 1 / ipow(Real(n), s);
    const Real n_pow = 1 / ipow(big_n, s);  // N^-s
    sum += big_n * n_pow / (s - 1) + n_pow / 2;

    Real rising = s;                 // s (s+1) ... (s+2j-2)
    Real n_factor = n_pow / big_n;   // N^{-s-2j+1}
    const Real inv_n2 = 1 / (big_n * big_n);
    Real omitted = -1;
    for (unsigned j = 1; j <= max_bernoulli_index / 2; ++j) {
        const Real term = bernoulli().scaled(j) * rising * n_factor;
        if (abs(term) < tol) {
            omitted = abs(term);
            break;
        }
        sum += term;
        rising *= Real(s + 2 * j - 1) * (s + 2 * j);
        n_factor *= inv_n2;
    }
    if (omitted < 0) throw DomainError("Euler-Maclaurin series for zeta(" + std::to_string(s) + ") did not converge");
    return {sum, omitted + Real("1e-95")};
}

} // namespace

HighPrecisionReal zeta_integer(unsigned s, unsigned digits) {
    if (s < 2) throw DomainError("zeta_integer requires s >= 2");
    if (digits > max_internal_digits) throw DomainError("zeta_integer: at most " + std::to_string(max_internal_digits) + " digits");
    {
        std::lock_guard lock(zeta_cache_mutex);
        if (auto it = zeta_cache.find({s, digits}); it != zeta_cache.end()) return it->second;
    }
    HighPrecisionReal z = zeta_uncached(s, digits);
    std::lock_guard lock(zeta_cache_mutex);
    zeta_cache.emplace(std::pair{s, digits}, z);
    return z;
}

HighPrecisionReal prime_zeta(unsigned m, unsigned digits) {
    if (m < 2) throw DomainError("prime_zeta requires m >= 2");
    if (digits > max_internal_digits) throw DomainError("prime_zeta: at most " + std::to_string(max_internal_digits) + " digits");
    const Real tol = ten_to_minus(digits + 2);
    Real sum = 0;
    Real err = 0;
    for (unsigned k = 1;; ++k) {
        if (const int mu = arith::moebius(k); mu != 0) {
            const HighPrecisionReal z = zeta_integer(k * m, std::min(digits + 2, max_internal_digits));
            sum += Real(mu) * log(z.value) / k;
            err += z.err_bound / k;  // |d log z| <= |dz| since z > 1
        }
        // sum_{j>k} log zeta(j m) / j <= sum_{j>k} 3 * 2^{-j m} <= 6 * 2^{-(k+1) m}
        const Real tail = 6 / ipow(Real(2), (k + 1) * m);
        if (tail < tol) {
            err += tail;
            break;
        }
    }
    return {sum, err + Real("1e-95")};
}

} // namespace artin::constants
