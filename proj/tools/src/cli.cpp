#include "artin/cli.hpp"

#include "artin/checkpoint_csv.hpp"
#include "artin/constants.hpp"
#include "artin/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace artin::cli {

namespace {

using est::Kind;

Extended to_extended(const Real& x) {
    return Extended(x);
}

bool is_stephens(Kind k) {
    return k == Kind::stephens_sigma || k == Kind::stephens_ratio || k == Kind::census_stephens;
}

bool is_rank(Kind k) {
    return k == Kind::rank_sigma || k == Kind::rank_ratio || k == Kind::census_rank;
}

primes::StreamStop stop_for(const RunConfig& cfg) {
    if (cfg.n.has_value() == cfg.bound.has_value()) throw ConfigError("exactly one of --n and --bound is required");
    if (cfg.n) {
        if (*cfg.n == 0) throw ConfigError("--n must be positive");
        if (*cfg.n > default_n_ceiling)
            throw ConfigError("--n exceeds the ceiling of " + std::to_string(default_n_ceiling) + " primes");
        return primes::StreamStop::count(*cfg.n);
    }
    if (*cfg.bound < 2) throw ConfigError("--bound must be at least 2");
    if (*cfg.bound > primes::default_max_bound)
        throw ConfigError("--bound exceeds the maximum of " + std::to_string(primes::default_max_bound));
    return primes::StreamStop::bound(*cfg.bound);
}

std::vector<std::uint64_t> schedule_for(const RunConfig& cfg) {
    if (cfg.checkpoints_per_decade == 0) throw ConfigError("--checkpoints must be positive");
    const std::uint64_t n_max = cfg.n ? *cfg.n : *cfg.bound;  // pi(X) <= X; the final row is added after the run
    if (n_max < 10) return {n_max};
    return est::checkpoint_schedule(n_max, cfg.checkpoints_per_decade);
}

RunSummary run_series(const RunConfig& cfg, std::ostream& csv) {
    const est::EstimatorConfig ecfg = estimator_config(cfg);
    est::Estimator estimator = est::make_estimator(ecfg);
    const primes::StreamStop stop = stop_for(cfg);
    const std::vector<std::uint64_t> schedule = schedule_for(cfg);
    const Extended target = target_for(ecfg);

    csv << est::checkpoint_csv_header << '\n';
    csv.flush();

    std::uint64_t last_row = 0;
    auto emit = [&](std::uint64_t p_n) {
        est::CheckpointRow row;
        try {
            row.estimate = estimator.snapshot();
        } catch (const NotReady&) {
            return;
        }
        row.n_total = estimator.state().n_total;
        row.n_used = estimator.state().n_used;
        row.p_n = p_n;
        row.target = target;
        csv << est::format_row(row) << '\n';
        csv.flush();
        last_row = row.n_total;
    };

    primes::PrimeStream stream(stop, {cfg.segment_size, cfg.workers, primes::default_max_bound});
    std::size_t next = 0;
    std::uint64_t last_p = 0;
    stream.for_each([&](const primes::PrimeRecord& rec) {
        estimator.ingest(rec);
        last_p = rec.p;
        if (next < schedule.size() && schedule[next] == rec.index) {
            emit(rec.p);
            ++next;
        }
    });
    if (last_row != estimator.state().n_total) emit(last_p);

    RunSummary summary;
    summary.kind = ecfg.kind;
    summary.n_total = estimator.state().n_total;
    summary.n_used = estimator.state().n_used;
    summary.estimate = estimator.snapshot();
    summary.target = target;
    if (est::is_census_kind(ecfg.kind)) summary.successes = estimator.state().num_acc.convert_to<std::uint64_t>();
    return summary;
}

unsigned default_workers() {
    if (const char* env = std::getenv(workers_env)) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

} // namespace

std::string RunSummary::line() const {
    std::string out = "kind=" + std::string(est::to_string(kind)) + " N=" + std::to_string(n_total) +
                      " N_used=" + std::to_string(n_used);
    if (est::is_census_kind(kind)) out += " successes=" + std::to_string(successes);
    out += " estimate=" + est::format_value(estimate) + " target=" + est::format_value(target) +
           " deviation=" + est::format_value(deviation());
    return out;
}

est::EstimatorConfig estimator_config(const RunConfig& cfg) {
    est::EstimatorConfig e;
    e.kind = cfg.kind;
    e.k = cfg.k;
    e.r = cfg.r;
    e.restricted = cfg.restricted;
    e.gs = cfg.gs;
    if (cfg.g) e.gspec = arith::make_gspec(*cfg.g);

    if (cfg.subcommand == Subcommand::estimate && est::is_census_kind(e.kind))
        throw ConfigError("census kinds run under the census subcommand");
    if (cfg.subcommand == Subcommand::census && !est::is_census_kind(e.kind))
        throw ConfigError("census requires one of --primitive, --stephens, --rank");
    if (e.kind == Kind::census_rank && cfg.gs.size() != cfg.r)
        throw ConfigError("--rank " + std::to_string(cfg.r) + " needs exactly that many integers in --gs");
    if (e.kind == Kind::census_primitive && e.gspec && e.gspec->is_square)
        throw ConfigError("g = " + std::to_string(e.gspec->g) + " is a perfect square: no primitive roots to count");

    est::make_estimator(e);  // validates
    return e;
}

Extended target_for(const est::EstimatorConfig& cfg) {
    using namespace constants;
    switch (cfg.kind) {
    case Kind::classical_sigma:
    case Kind::ratio:
    case Kind::alt_ratio:
        return to_extended(cfg.restricted ? artin_g_tilde(*cfg.gspec, target_digits).value
                                          : artin_constant(target_digits).value);
    case Kind::moore_sigma:
    case Kind::census_primitive:
        return to_extended(artin_g_constant(*cfg.gspec, target_digits).value);
    case Kind::stephens_sigma:
    case Kind::stephens_ratio:
    case Kind::census_stephens:
        // Generic S; the pair-specific rational factor is not modelled.
        return to_extended(stephens_constant(target_digits).value);
    case Kind::rank_sigma:
    case Kind::rank_ratio:
        return to_extended(artin_rank_constant(cfg.r, target_digits).value);
    case Kind::census_rank:
        return to_extended(artin_rank_constant(static_cast<unsigned>(cfg.gs.size()), target_digits).value);
    }
    throw ConfigError("unknown estimator kind");
}

RunSummary run_estimate(const RunConfig& cfg, std::ostream& csv) {
    RunConfig c = cfg;
    c.subcommand = Subcommand::estimate;
    return run_series(c, csv);
}

RunSummary run_census(const RunConfig& cfg, std::ostream& csv) {
    RunConfig c = cfg;
    c.subcommand = Subcommand::census;
    return run_series(c, csv);
}

void run_constant(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    using namespace constants;
    const int chosen = int(cfg.artin) + int(cfg.stephens) + int(cfg.rank.has_value()) + int(cfg.g.has_value());
    if (chosen != 1) throw ConfigError("choose exactly one of --artin, --stephens, --rank, --g");
    if (cfg.digits > max_digits) throw ConfigError("--digits must be at most " + std::to_string(max_digits));

    auto print = [&](const std::string& label, const HighPrecisionReal& v) {
        if (!v.certifies(cfg.digits)) throw DomainError("error bound too large to certify the requested digits");
        out << label << v.to_string(cfg.digits) << '\n';
        diag << "# " << (label.empty() ? "value" : label.substr(0, label.size() - 1))
             << " err_bound=" << v.err_bound.str(3, std::ios_base::scientific) << '\n';
    };

    if (cfg.artin) {
        print("", artin_constant(cfg.digits));
    } else if (cfg.stephens) {
        print("", stephens_constant(cfg.digits));
    } else if (cfg.rank) {
        print("", artin_rank_constant(*cfg.rank, cfg.digits));
    } else {
        const arith::GSpec gs = arith::make_gspec(*cfg.g);
        const std::string g = std::to_string(gs.g);
        print("A(" + g + ")=", artin_g_constant(gs, cfg.digits));
        if (gs.h > 1) print("A~(" + g + ")=", artin_g_tilde(gs, cfg.digits));
    }
}

void run_weights(const RunConfig& cfg, std::ostream& csv) {
    if (!cfg.n || *cfg.n == 0) throw ConfigError("weights requires a positive --n");
    est::EstimatorConfig e;
    e.kind = Kind::ratio;
    e.k = cfg.k;
    const auto records = primes::first_records(*cfg.n, {cfg.segment_size, cfg.workers, primes::default_max_bound});
    const auto weights = est::weight_profile(e, records);
    csv << "index,p,weight\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Rational& w = weights[i];
        csv << records[i].index << ',' << records[i].p << ','
            << est::format_value(Extended(numerator(w)) / Extended(denominator(w))) << '\n';
    }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Artin-type density constants: streaming estimators and exact targets", "artin"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.workers = default_workers();
    std::string kind_name;
    std::optional<std::int64_t> a;
    std::optional<std::int64_t> b;
    bool census_primitive = false;
    bool census_stephens = false;
    std::optional<unsigned> census_rank;

    auto add_stream_options = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "Number of primes");
        sub->add_option("--bound", cfg.bound, "Largest prime to include");
        sub->add_option("--checkpoints", cfg.checkpoints_per_decade, "Checkpoints per decade");
        sub->add_option("--out", cfg.out, "CSV output path (default: standard output)");
        sub->add_option("--workers", cfg.workers, "Concurrent segment workers (default $ARTIN_WORKERS or 1)");
        sub->add_option("--segment-size", cfg.segment_size, "Sieve segment length");
        sub->add_option("--g", cfg.g, "Integer g");
        sub->add_option("--gs", cfg.gs, "Comma-separated integers")->delimiter(',');
        sub->add_option("--a", a, "Stephens base a");
        sub->add_option("--b", b, "Stephens target b");
    };

    auto* estimate = app.add_subcommand("estimate", "Stream primes through an estimator and write checkpoints");
    estimate->add_option("--kind", kind_name, "Estimator kind")->required();
    estimate->add_option("--k", cfg.k, "Weight exponent k (0..3)");
    estimate->add_option("--r", cfg.r, "Rank r (1..8)");
    estimate->add_flag("--restricted", cfg.restricted, "Restrict to p with (g/p) = -1 and gcd(p-1, h) = 1");
    add_stream_options(estimate);

    auto* census = app.add_subcommand("census", "Empirical densities by direct order computation");
    census->add_flag("--primitive", census_primitive, "Share of p for which g is a primitive root");
    census->add_flag("--stephens", census_stephens, "Share of p with b in <a> mod p");
    census->add_option("--rank", census_rank, "Share of p where --gs generate (Z/p)^*");
    add_stream_options(census);

    auto* constant = app.add_subcommand("constant", "Print a density constant to the requested digits");
    constant->add_flag("--artin", cfg.artin, "Artin's constant A");
    constant->add_flag("--stephens", cfg.stephens, "Stephens' constant S");
    constant->add_option("--rank", cfg.rank, "Rank-r Artin constant A_r");
    constant->add_option("--g", cfg.g, "A(g), and A~(g) when g is a proper power");
    constant->add_option("--digits", cfg.digits, "Decimal places (<= 60)");

    auto* weights = app.add_subcommand("weights", "Per-prime weights of the ratio estimator");
    weights->add_option("--k", cfg.k, "Weight exponent k (0..3)");
    weights->add_option("--n", cfg.n, "Number of primes")->required();
    weights->add_option("--out", cfg.out, "CSV output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    }

    std::ofstream file;
    auto sink = [&]() -> std::ostream& {
        if (!cfg.out) return out;
        file.open(*cfg.out);
        if (!file) throw ConfigError("cannot open output file " + *cfg.out);
        return file;
    };

    try {
        if (a || b) {
            if (!a || !b) throw ConfigError("--a and --b go together");
            cfg.gs = {*a, *b};
        }
        if (estimate->parsed()) {
            cfg.subcommand = Subcommand::estimate;
            const auto kind = est::parse_kind(kind_name);
            if (!kind) throw ConfigError("unknown estimator kind '" + kind_name + "'");
            cfg.kind = *kind;
            if (!is_stephens(cfg.kind) && !is_rank(cfg.kind) && !cfg.gs.empty())
                throw ConfigError("--gs/--a/--b only apply to Stephens and rank kinds");
            estimator_config(cfg);
            std::ostream& csv = sink();
            const RunSummary s = run_estimate(cfg, csv);
            (cfg.out ? out : err) << s.line() << '\n';
        } else if (census->parsed()) {
            cfg.subcommand = Subcommand::census;
            if (int(census_primitive) + int(census_stephens) + int(census_rank.has_value()) != 1)
                throw ConfigError("choose exactly one of --primitive, --stephens, --rank");
            if (census_primitive) {
                cfg.kind = Kind::census_primitive;
            } else if (census_stephens) {
                cfg.kind = Kind::census_stephens;
            } else {
                cfg.kind = Kind::census_rank;
                cfg.r = *census_rank;
            }
            estimator_config(cfg);
            std::ostream& csv = sink();
            const RunSummary s = run_census(cfg, csv);
            (cfg.out ? out : err) << s.line() << '\n';
        } else if (constant->parsed()) {
            cfg.subcommand = Subcommand::constant;
            run_constant(cfg, out, err);
        } else {
            cfg.subcommand = Subcommand::weights;
            run_weights(cfg, sink());
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const OverflowError& e) {
        if (file.is_open()) file.flush();
        err << "error: " << e.what() << '\n';
        return exit_runtime_error;
    } catch (const std::exception& e) {
        if (file.is_open()) file.flush();
        err << "error: " << e.what() << '\n';
        return exit_runtime_error;
    }
    return exit_ok;
}

} // namespace artin::cli
