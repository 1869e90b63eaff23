#pragma once

#include "artin/arithmetic.hpp"
#include "artin/compensated_sum.hpp"
#include "artin/numeric_types.hpp"
#include "artin/prime_pipeline.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace artin::est {

enum class Kind {
    classical_sigma,   // (1/N) sum phi(p-1)/(p-1)
    moore_sigma,       // (1/N) sum phi_g(p)
    ratio,             // sum p^k phi(p-1) / sum p^k (p-1)
    alt_ratio,         // sum phi(phi(p^{k+1})) / sum phi(p^{k+1})
    stephens_sigma,    // (1/N) sum S(p)/(p-1)^2
    stephens_ratio,    // sum p^k S(p) / sum p^k (p-1)^2
    rank_sigma,        // (1/N) sum A_r(p)/(p-1)^r
    rank_ratio,        // sum p^k A_r(p) / sum p^k (p-1)^r
    census_primitive,  // share of p with g primitive
    census_stephens,   // share of p with b in <a>
    census_rank,       // share of p with <g_1..g_r> = (Z/p)^*
};

std::string_view to_string(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);

bool is_ratio_kind(Kind kind);
bool is_sigma_kind(Kind kind);
bool is_census_kind(Kind kind);

struct EstimatorConfig {
    Kind kind = Kind::ratio;
    unsigned k = 0;
    unsigned r = 1;
    std::optional<arith::GSpec> gspec;
    std::vector<std::int64_t> gs;
    bool restricted = false;
};

/// Accumulators. Integer sums are exact; sigma sums are compensated.
struct EstimatorState {
    std::uint64_t n_total = 0;
    std::uint64_t n_used = 0;
    Wide num_acc = 0;
    Wide den_acc = 0;
    CompensatedSum<long double> float_acc;
    std::uint64_t last_p = 0;
};

/// Streaming estimator: a validated config plus its state. Copyable value;
/// disjoint prime ranges may be folded into separate copies and merged.
class Estimator {
public:
    const EstimatorConfig& config() const { return config_; }
    const EstimatorState& state() const { return state_; }

    /// Folds one prime in. Records must arrive with increasing p.
    void ingest(const primes::PrimeRecord& rec);

    /// Adds another estimator's accumulators (same config, disjoint range).
    /// Integer parts are order-independent; float parts should be merged in
    /// ascending range order for reproducible rounding.
    void merge(const Estimator& other);

    /// Current estimate; throws NotReady when nothing qualified yet.
    Extended snapshot() const;

    /// Exact num/den for ratio and census kinds.
    Rational exact_ratio() const;

    /// Predicate of the restricted sum: p odd, p does not divide g,
    /// (g/p) = -1 and gcd(p-1, h) = 1.
    static bool restricted_qualifies(const arith::GSpec& gs, const primes::PrimeRecord& rec);

private:
    friend Estimator make_estimator(const EstimatorConfig& cfg);
    explicit Estimator(EstimatorConfig cfg) : config_(std::move(cfg)) {}

    void add_ratio_terms(const Wide& num, const Wide& den, std::uint64_t p);
    bool divides_any_g(std::uint64_t p) const;

    EstimatorConfig config_;
    EstimatorState state_;
};

/// Validates cfg and returns a zeroed estimator. Throws ConfigError.
Estimator make_estimator(const EstimatorConfig& cfg);

/// w_i = p_i^k (p_i - 1) / sum_j p_j^k (p_j - 1) over the given prefix.
std::vector<Rational> weight_profile(const EstimatorConfig& cfg, std::span<const primes::PrimeRecord> prefix);

/// Geometrically spaced N from 10 up to n_max (inclusive), ascending.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t n_max, unsigned points_per_decade = 8);

struct CheckpointRow {
    std::uint64_t n_total = 0;
    std::uint64_t n_used = 0;
    std::uint64_t p_n = 0;
    Extended estimate = 0;
    Extended target = 0;

    Extended deviation() const { return estimate / target - 1; }
};

using CheckpointSeries = std::vector<CheckpointRow>;

} // namespace artin::est
