#pragma once

#include "artin/estimators.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace artin::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_runtime_error = 3;

inline constexpr std::uint64_t default_n_ceiling = 1'000'000'000;
inline constexpr unsigned target_digits = 30;

/// Environment variable holding the default worker count.
inline constexpr const char* workers_env = "ARTIN_WORKERS";

enum class Subcommand { estimate, constant, census, weights };

struct RunConfig {
    Subcommand subcommand = Subcommand::estimate;

    est::Kind kind = est::Kind::ratio;
    unsigned k = 0;
    unsigned r = 1;
    std::optional<std::int64_t> g;
    std::vector<std::int64_t> gs;
    bool restricted = false;

    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> bound;
    unsigned checkpoints_per_decade = 8;
    std::optional<std::string> out;
    unsigned workers = 1;
    std::uint64_t segment_size = primes::default_segment_size;

    // constant subcommand
    bool artin = false;
    bool stephens = false;
    std::optional<unsigned> rank;
    unsigned digits = 20;
};

struct RunSummary {
    est::Kind kind = est::Kind::ratio;
    std::uint64_t n_total = 0;
    std::uint64_t n_used = 0;
    std::uint64_t successes = 0;  // census kinds
    Extended estimate = 0;
    Extended target = 0;

    Extended deviation() const { return estimate / target - 1; }
    std::string line() const;
};

/// Builds and validates the estimator configuration of an estimate or census run.
est::EstimatorConfig estimator_config(const RunConfig& cfg);

/// Limit the estimator converges to (A, A(g), A~(g), S or A_r).
Extended target_for(const est::EstimatorConfig& cfg);

/// Streams primes through the configured estimator, writing one CSV row per
/// checkpoint (flushed as written). Throws ConfigError / OverflowError.
RunSummary run_estimate(const RunConfig& cfg, std::ostream& csv);
RunSummary run_census(const RunConfig& cfg, std::ostream& csv);

/// Prints the requested constant(s), one per line.
void run_constant(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

/// index,p,weight rows of the unrestricted ratio weights.
void run_weights(const RunConfig& cfg, std::ostream& csv);

/// Full command-line entry point; returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace artin::cli
