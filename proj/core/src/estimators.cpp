#include "artin/estimators.hpp"

#include "artin/errors.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace artin::est {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::array<std::pair<Kind, std::string_view>, 11> kind_names{{
    {Kind::classical_sigma, "classical_sigma"},
    {Kind::moore_sigma, "moore_sigma"},
    {Kind::ratio, "ratio"},
    {Kind::alt_ratio, "alt_ratio"},
    {Kind::stephens_sigma, "stephens_sigma"},
    {Kind::stephens_ratio, "stephens_ratio"},
    {Kind::rank_sigma, "rank_sigma"},
    {Kind::rank_ratio, "rank_ratio"},
    {Kind::census_primitive, "census_primitive"},
    {Kind::census_stephens, "census_stephens"},
    {Kind::census_rank, "census_rank"},
}};

bool supports_restriction(Kind kind) {
    return kind == Kind::classical_sigma || kind == Kind::ratio || kind == Kind::alt_ratio;
}

long double as_long_double(const Wide& num, const Wide& den) {
    return static_cast<long double>(Extended(num) / Extended(den));
}

} // namespace

std::string_view to_string(Kind kind) {
    for (const auto& [k, name] : kind_names)
        if (k == kind) return name;
    return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
    for (const auto& [k, n] : kind_names)
        if (n == name) return k;
    return std::nullopt;
}

bool is_ratio_kind(Kind kind) {
    return kind == Kind::ratio || kind == Kind::alt_ratio || kind == Kind::stephens_ratio || kind == Kind::rank_ratio;
}

bool is_sigma_kind(Kind kind) {
    return kind == Kind::classical_sigma || kind == Kind::moore_sigma || kind == Kind::stephens_sigma ||
           kind == Kind::rank_sigma;
}

bool is_census_kind(Kind kind) {
    return kind == Kind::census_primitive || kind == Kind::census_stephens || kind == Kind::census_rank;
}

Estimator make_estimator(const EstimatorConfig& cfg) {
    EstimatorConfig c = cfg;
    if (c.k > arith::max_weight_exponent)
        throw ConfigError("weight exponent k must lie in 0.." + std::to_string(arith::max_weight_exponent));
    if ((c.kind == Kind::rank_sigma || c.kind == Kind::rank_ratio) && (c.r < 1 || c.r > arith::max_rank))
        throw ConfigError("rank r must lie in 1.." + std::to_string(arith::max_rank));

    if (c.restricted && !supports_restriction(c.kind))
        throw ConfigError(std::string("kind ") + std::string(to_string(c.kind)) + " has no restricted form");

    const bool needs_g = c.restricted || c.kind == Kind::moore_sigma || c.kind == Kind::census_primitive;
    if (needs_g && !c.gspec) throw ConfigError(std::string(to_string(c.kind)) + " requires g");
    if ((c.restricted || c.kind == Kind::moore_sigma) && c.gspec->is_square)
        throw ConfigError("g = " + std::to_string(c.gspec->g) + " is a perfect square: restricted sum is empty");

    for (const std::int64_t g : c.gs)
        if (g == 0) throw ConfigError("generators must be nonzero");
    if (c.kind == Kind::census_stephens && c.gs.size() != 2)
        throw ConfigError("census_stephens requires exactly two integers (a, b)");
    if (c.kind == Kind::census_rank) {
        if (c.gs.empty() || c.gs.size() > arith::max_rank)
            throw ConfigError("census_rank requires 1.." + std::to_string(arith::max_rank) + " integers");
        c.r = static_cast<unsigned>(c.gs.size());
    }
    return Estimator(std::move(c));
}

bool Estimator::restricted_qualifies(const arith::GSpec& gs, const primes::PrimeRecord& rec) {
    const std::uint64_t p = rec.p;
    if (p == 2) return false;
    if (arith::reduce_mod(gs.g, p) == 0) return false;
    if (arith::jacobi_symbol(gs.g, p) != -1) return false;
    return std::gcd(p - 1, static_cast<std::uint64_t>(gs.h)) == 1;
}

bool Estimator::divides_any_g(std::uint64_t p) const {
    for (const std::int64_t g : config_.gs)
        if (arith::reduce_mod(g, p) == 0) return true;
    return false;
}

void Estimator::add_ratio_terms(const Wide& num, const Wide& den, std::uint64_t p) {
    if (config_.k == 0) {
        state_.num_acc += num;
        state_.den_acc += den;
        return;
    }
    const Wide pk = arith::wide_pow(p, config_.k);
    state_.num_acc += pk * num;
    state_.den_acc += pk * den;
}

void Estimator::ingest(const primes::PrimeRecord& rec) {
    const std::uint64_t p = rec.p;
    if (p <= state_.last_p) throw DomainError("records must be ingested in increasing order of p");
    const auto& cfg = config_;
    try {
        switch (cfg.kind) {
        case Kind::classical_sigma: {
            if (cfg.restricted && !restricted_qualifies(*cfg.gspec, rec)) break;
            ++state_.n_used;
            state_.float_acc.add(static_cast<long double>(arith::totient_from_factorization(rec.pm1)) /
                                 static_cast<long double>(p - 1));
            break;
        }
        case Kind::moore_sigma: {
            if (!restricted_qualifies(*cfg.gspec, rec)) break;
            ++state_.n_used;
            state_.float_acc.add(2.0L * static_cast<long double>(arith::totient_from_factorization(rec.pm1)) /
                                 static_cast<long double>(p - 1));
            break;
        }
        case Kind::ratio: {
            if (cfg.restricted && !restricted_qualifies(*cfg.gspec, rec)) break;
            ++state_.n_used;
            add_ratio_terms(Wide(arith::totient_from_factorization(rec.pm1)), Wide(p - 1), p);
            break;
        }
        case Kind::alt_ratio: {
            if (cfg.restricted && !restricted_qualifies(*cfg.gspec, rec)) break;
            ++state_.n_used;
            const auto [num, den] = arith::alt_totient_tower(rec.pm1, p, cfg.k);
            state_.num_acc += num;
            state_.den_acc += den;
            break;
        }
        case Kind::stephens_sigma:
        case Kind::stephens_ratio: {
            if (divides_any_g(p)) break;
            ++state_.n_used;
            const auto local = arith::stephens_probability(p, rec.pm1);
            if (cfg.kind == Kind::stephens_sigma)
                state_.float_acc.add(as_long_double(local.num, local.den));
            else
                add_ratio_terms(local.num, local.den, p);
            break;
        }
        case Kind::rank_sigma:
        case Kind::rank_ratio: {
            if (divides_any_g(p)) break;
            ++state_.n_used;
            const auto local = arith::artin_rank_probability(p, rec.pm1, cfg.r);
            if (cfg.kind == Kind::rank_sigma)
                state_.float_acc.add(as_long_double(local.num, local.den));
            else
                add_ratio_terms(local.num, local.den, p);
            break;
        }
        case Kind::census_primitive: {
            const std::int64_t g = cfg.gspec->g;
            if (arith::reduce_mod(g, p) == 0) break;
            ++state_.n_used;
            state_.den_acc += 1u;
            if (arith::multiplicative_order(g, p, rec.pm1) == p - 1) state_.num_acc += 1u;
            break;
        }
        case Kind::census_stephens: {
            if (divides_any_g(p)) break;
            ++state_.n_used;
            state_.den_acc += 1u;
            const std::uint64_t ord_a = arith::multiplicative_order(cfg.gs[0], p, rec.pm1);
            const std::uint64_t ord_b = arith::multiplicative_order(cfg.gs[1], p, rec.pm1);
            if (ord_a % ord_b == 0) state_.num_acc += 1u;
            break;
        }
        case Kind::census_rank: {
            if (divides_any_g(p)) break;
            ++state_.n_used;
            state_.den_acc += 1u;
            if (arith::subgroup_order(cfg.gs, p, rec.pm1) == p - 1) state_.num_acc += 1u;
            break;
        }
        }
    } catch (const OverflowError& e) {
        throw OverflowError(std::string(to_string(cfg.kind)) + ": " + e.what(), p);
    } catch (const std::overflow_error&) {
        throw OverflowError(std::string(to_string(cfg.kind)) + ": exact accumulator overflow", p);
    }
    ++state_.n_total;
    state_.last_p = p;
}

void Estimator::merge(const Estimator& other) {
    if (other.config_.kind != config_.kind || other.config_.k != config_.k || other.config_.r != config_.r ||
        other.config_.restricted != config_.restricted)
        throw ConfigError("cannot merge estimators with different configurations");
    try {
        state_.num_acc += other.state_.num_acc;
        state_.den_acc += other.state_.den_acc;
    } catch (const std::overflow_error&) {
        throw OverflowError("exact accumulator overflow while merging", other.state_.last_p);
    }
    state_.n_total += other.state_.n_total;
    state_.n_used += other.state_.n_used;
    state_.float_acc.merge(other.state_.float_acc);
    state_.last_p = std::max(state_.last_p, other.state_.last_p);
}

Extended Estimator::snapshot() const {
    if (is_sigma_kind(config_.kind)) {
        const std::uint64_t n = config_.kind == Kind::moore_sigma ? state_.n_total : state_.n_used;
        if (n == 0) throw NotReady("no qualifying primes ingested yet");
        return Extended(state_.float_acc.value()) / n;
    }
    if (state_.den_acc == 0) throw NotReady("no qualifying primes ingested yet");
    return Extended(state_.num_acc) / Extended(state_.den_acc);
}

Rational Estimator::exact_ratio() const {
    if (is_sigma_kind(config_.kind)) throw ConfigError("sigma estimators carry no exact ratio");
    if (state_.den_acc == 0) throw NotReady("no qualifying primes ingested yet");
    return Rational(cpp_int(state_.num_acc), cpp_int(state_.den_acc));
}

std::vector<Rational> weight_profile(const EstimatorConfig& cfg, std::span<const primes::PrimeRecord> prefix) {
    if (cfg.kind != Kind::ratio || cfg.restricted)
        throw ConfigError("weight profile is defined for the unrestricted ratio estimator");
    if (cfg.k > arith::max_weight_exponent)
        throw ConfigError("weight exponent k must lie in 0.." + std::to_string(arith::max_weight_exponent));
    std::vector<cpp_int> raw;
    raw.reserve(prefix.size());
    cpp_int total = 0;
    for (const auto& rec : prefix) {
        cpp_int w = cpp_int(arith::wide_pow(rec.p, cfg.k)) * (rec.p - 1);
        total += w;
        raw.push_back(std::move(w));
    }
    std::vector<Rational> out;
    out.reserve(raw.size());
    for (const auto& w : raw) out.emplace_back(w, total);
    return out;
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t n_max, unsigned points_per_decade) {
    if (n_max < 10) throw DomainError("checkpoint schedule requires N_max >= 10");
    if (points_per_decade == 0) throw ConfigError("points per decade must be positive");
    std::vector<std::uint64_t> out;
    for (unsigned j = 0;; ++j) {
        const long double exponent = 1.0L + static_cast<long double>(j) / points_per_decade;
        const auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0L, exponent)));
        if (n >= n_max) break;
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    out.push_back(n_max);
    return out;
}

} // namespace artin::est
