// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "artin/arithmetic.hpp"
#include "artin/cli.hpp"
#include "artin/constants.hpp"
#include "artin/estimators.hpp"
#include "support/reference.hpp"
#include "support/reference_estimators.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace artin;
using boost::multiprecision::cpp_int;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string str(const Extended& x, int digits = 8) { return x.str(digits, std::ios_base::fmtflags(0)); }
std::string str(const Real& x, int digits = 22) { return x.str(digits, std::ios_base::fmtflags(0)); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

est::EstimatorConfig config(est::Kind kind, unsigned k = 0, std::optional<std::int64_t> g = {}, bool restricted = false,
                            unsigned r = 1) {
    est::EstimatorConfig c;
    c.kind = kind;
    c.k = k;
    c.r = r;
    if (g) c.gspec = arith::make_gspec(*g);
    c.restricted = restricted;
    return c;
}

// Shared one-million-prime pass feeding criteria 5, 6, 7 and 9.
struct MillionRun {
    static constexpr std::uint64_t n = 1'000'000;

    est::Estimator sigma = est::make_estimator(config(est::Kind::classical_sigma));
    est::Estimator ratio = est::make_estimator(config(est::Kind::ratio));
    est::Estimator tilde8 = est::make_estimator(config(est::Kind::ratio, 0, 8, true));
    est::Estimator moore8 = est::make_estimator(config(est::Kind::moore_sigma, 0, 8));
    est::Estimator rank3_ratio = est::make_estimator(config(est::Kind::rank_ratio, 0, {}, false, 3));
    est::Estimator rank3_sigma = est::make_estimator(config(est::Kind::rank_sigma, 0, {}, false, 3));
    est::Estimator stephens_ratio = est::make_estimator(config(est::Kind::stephens_ratio));
    est::Estimator stephens_sigma = est::make_estimator(config(est::Kind::stephens_sigma));

    // sigma - A at each schedule point
    std::vector<std::pair<std::uint64_t, Extended>> sigma_gaps;
    std::uint64_t ratio_sign_changes = 0;
    std::uint64_t first_sign_change = 0;
    double elapsed = 0;

    MillionRun() {
        const auto t0 = Clock::now();
        const Extended a(constants::artin_constant(30).value);
        const long double a_ld = static_cast<long double>(a);
        const auto schedule = est::checkpoint_schedule(n);
        std::size_t next_cp = 0;
        int last_sign = 0;
        primes::PrimeStream stream(primes::StreamStop::count(n));
        stream.for_each([&](const primes::PrimeRecord& rec) {
            for (auto* e : {&sigma, &ratio, &tilde8, &moore8, &rank3_ratio, &rank3_sigma, &stephens_ratio, &stephens_sigma})
                e->ingest(rec);
            const long double r0 = static_cast<long double>(ratio.state().num_acc) / static_cast<long double>(ratio.state().den_acc);
            const int sign = r0 > a_ld ? 1 : (r0 < a_ld ? -1 : 0);
            if (sign != 0 && last_sign != 0 && sign != last_sign) {
                ++ratio_sign_changes;
                if (first_sign_change == 0) first_sign_change = rec.index;
            }
            if (sign != 0) last_sign = sign;
            if (next_cp < schedule.size() && rec.index == schedule[next_cp]) {
                sigma_gaps.emplace_back(rec.index, sigma.snapshot() - a);
                ++next_cp;
            }
        });
        elapsed = seconds_since(t0);
    }

    static const MillionRun& get() {
        static const MillionRun run;
        return run;
    }
};

Extended rel_dev(const Extended& x, const Extended& target) { return abs(x / target - 1); }

Outcome exact_constants() {
    Outcome o;
    const std::vector<std::pair<std::string, std::function<constants::HighPrecisionReal()>>> cases = {
        {"A", [] { return constants::artin_constant(30); }},
        {"S", [] { return constants::stephens_constant(30); }},
        {"A_3", [] { return constants::artin_rank_constant(3, 30); }},
    };
    const std::vector<Real> published = {Real("0.37395581361920228805"),
                                                    Real("0.57595996889294543964"),
                                                    Real("0.85654044485354217443")};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto t0 = Clock::now();
        const auto v = cases[i].second();
        const double s = seconds_since(t0);
        const Real diff = abs(v.value - published[i]);
        o.require(diff < Real("1e-18"), cases[i].first + " off by " + str(diff, 3));
        o.require(s < 5.0, cases[i].first + " took " + std::to_string(s) + " s");
        o.note(cases[i].first + "=" + v.to_string(20));
    }
    return o;
}

Outcome tilde_consistency() {
    Outcome o;
    Real worst = 0;
    for (const std::int64_t g : {2, 3, 5, 6, 7, -2, -3}) {
        const auto spec = arith::make_gspec(g);
        o.require(spec.h == 1, "h(" + std::to_string(g) + ") != 1");
        const Real diff = abs(constants::artin_g_tilde(spec, 30).value - constants::artin_g_constant(spec, 30).value);
        worst = std::max(worst, diff);
        o.require(diff < Real("1e-18"), "g=" + std::to_string(g));
    }
    o.note("max |A~(g)-A(g)|=" + str(worst, 3));
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto recs = primes::first_records(10'000);
    std::vector<std::uint64_t> ps;
    for (const auto& r : recs) ps.push_back(r.p);
    o.require(ps == testing::first_primes_td(10'000), "prime list differs from trial division");
    const auto cfgs = testing::representative_configs();
    Extended worst = 0;
    for (const auto& cfg : cfgs) {
        auto e = est::make_estimator(cfg);
        for (const auto& r : recs) e.ingest(r);
        const auto ref = testing::reference_run(cfg, ps);
        const std::string name(est::to_string(cfg.kind));
        o.require(e.state().n_total == ref.n_total && e.state().n_used == ref.n_used, name + " counts");
        o.require(cpp_int(e.state().num_acc) == ref.num && cpp_int(e.state().den_acc) == ref.den, name + " accumulators");
        if (est::is_sigma_kind(cfg.kind)) {
            const Extended rel = abs(Extended(e.state().float_acc.value()) / ref.float_sum - 1);
            worst = std::max(worst, rel);
            o.require(rel <= Extended("1e-12"), name + " sigma rel " + str(rel, 3));
        }
    }
    const double s = seconds_since(t0);
    o.require(s < 10.0, "took " + std::to_string(s) + " s");
    o.note(std::to_string(cfgs.size()) + " configs, max sigma rel err " + str(worst, 3));
    return o;
}

Outcome local_factor_oracles() {
    Outcome o;
    std::size_t checked = 0;
    primes::PrimeStream stream(primes::StreamStop::bound(10'000));
    stream.for_each([&](const primes::PrimeRecord& rec) {
        ++checked;
        if (cpp_int(arith::stephens_local(rec.pm1)) != testing::stephens_divisor_sum(rec.p))
            o.require(false, "S(" + std::to_string(rec.p) + ")");
        if (rec.p > 100) return;
        for (unsigned r = 1; r <= 3; ++r)
            if (arith::artin_rank_local(rec.pm1, r) != testing::generating_tuples(rec.p, r))
                o.require(false, "A_" + std::to_string(r) + "(" + std::to_string(rec.p) + ")");
    });
    o.note(std::to_string(checked) + " primes for S, 25 primes x r=1..3 for A_r");
    return o;
}

Outcome sigma_positivity() {
    Outcome o;
    const auto& run = MillionRun::get();
    Extended smallest = run.sigma_gaps.front().second;
    std::uint64_t at = run.sigma_gaps.front().first;
    for (const auto& [n, gap] : run.sigma_gaps) {
        if (gap <= 0) o.require(false, "Sigma(" + std::to_string(n) + ") <= A");
        if (gap < smallest) {
            smallest = gap;
            at = n;
        }
    }
    o.require(run.sigma_gaps.back().first == MillionRun::n, "last checkpoint missing");
    o.note(std::to_string(run.sigma_gaps.size()) + " checkpoints, min gap " + str(smallest, 4) + " at N=" + std::to_string(at));
    // regression pin of the final gap
    o.require(abs(run.sigma_gaps.back().second - Extended("3.46858932808350861e-05")) < Extended("1e-15"),
              "final gap " + str(run.sigma_gaps.back().second, 18));
    return o;
}

Outcome ratio_oscillation() {
    Outcome o;
    const auto& run = MillionRun::get();
    const Extended a(constants::artin_constant(30).value);
    const Extended dev = rel_dev(run.ratio.snapshot(), a);
    o.require(dev < Extended("0.01"), "|R_0/A-1| = " + str(dev, 4));
    o.require(run.ratio_sign_changes >= 1, "no sign change");
    o.note("|R_0(1e6)/A-1|=" + str(dev, 4) + ", " + std::to_string(run.ratio_sign_changes) + " sign changes, first at N=" +
           std::to_string(run.first_sign_change));
    return o;
}

Outcome h_discrimination() {
    Outcome o;
    const auto& run = MillionRun::get();
    const auto spec = arith::make_gspec(8);
    const Extended tilde(constants::artin_g_tilde(spec, 30).value);
    const Extended a8(constants::artin_g_constant(spec, 30).value);
    const Extended r = run.tilde8.snapshot();
    const Extended m = run.moore8.snapshot();
    o.require(rel_dev(r, tilde) < Extended("0.05"), "restricted ratio " + str(r));
    o.require(rel_dev(m, a8) < Extended("0.05"), "Moore sigma " + str(m));
    o.require(r / m >= Extended("1.8"), "factor " + str(r / m, 4));
    o.note("restricted ratio=" + str(r) + " (dev " + str(rel_dev(r, tilde), 3) + "), Moore=" + str(m) + " (dev " +
           str(rel_dev(m, a8), 3) + "), factor " + str(r / m, 4));
    return o;
}

Outcome primitive_census() {
    Outcome o;
    auto e = est::make_estimator(config(est::Kind::census_primitive, 0, 2));
    primes::PrimeStream stream(primes::StreamStop::bound(999'999));
    stream.for_each([&](const primes::PrimeRecord& rec) { e.ingest(rec); });
    const Extended a(constants::artin_constant(30).value);
    // P_N(2)/N over all primes below the bound
    const Extended share = Extended(e.state().num_acc) / e.state().n_total;
    o.require(rel_dev(share, a) < Extended("0.02"), "share " + str(share));
    o.require(e.state().n_total == 78'498, "pi(10^6)");
    o.require(e.state().num_acc == 29'341u, "successes " + e.state().num_acc.str());
    o.note(e.state().num_acc.str() + "/" + std::to_string(e.state().n_total) + " = " + str(share) + " (dev " +
           str(rel_dev(share, a), 3) + ")");
    return o;
}

Outcome rank_and_stephens() {
    Outcome o;
    const auto& run = MillionRun::get();
    const Extended a3(constants::artin_rank_constant(3, 30).value);
    const Extended s(constants::stephens_constant(30).value);
    const Extended d_r3 = rel_dev(run.rank3_ratio.snapshot(), a3);
    const Extended d_r3s = rel_dev(run.rank3_sigma.snapshot(), a3);
    const Extended d_s = rel_dev(run.stephens_ratio.snapshot(), s);
    const Extended d_ss = rel_dev(run.stephens_sigma.snapshot(), s);
    o.require(d_r3 < Extended("0.01") && d_r3s < Extended("0.01"), "A_3 deviation");
    o.require(d_s < Extended("0.03") && d_ss < Extended("0.03"), "S deviation");
    o.note("A_3 ratio dev " + str(d_r3, 3) + ", sigma dev " + str(d_r3s, 3) + "; S ratio dev " + str(d_s, 3) +
           ", sigma dev " + str(d_ss, 3));
    return o;
}

std::string cli_csv(const char* workers) {
    const std::vector<const char*> argv = {"artin", "estimate", "--kind", "ratio", "--k", "1", "--n", "100000",
                                           "--segment-size", "8192", "--workers", workers};
    std::ostringstream out, err;
    const int code = cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return code == cli::exit_ok ? out.str() : std::string();
}

Outcome parallel_determinism() {
    Outcome o;
    const std::string one = cli_csv("1");
    o.require(!one.empty(), "worker=1 run failed");
    for (const char* w : {"4", "8"}) o.require(cli_csv(w) == one, std::string("workers=") + w + " differs");
    o.note(std::to_string(one.size()) + " bytes identical across 1/4/8 workers");
    return o;
}

Outcome performance() {
    Outcome o;
    const auto t0 = Clock::now();
    auto e = est::make_estimator(config(est::Kind::ratio));
    primes::PrimeStream stream(primes::StreamStop::count(10'000'000));
    std::uint64_t last = 0;
    stream.for_each([&](const primes::PrimeRecord& rec) {
        e.ingest(rec);
        last = rec.p;
    });
    const double s = seconds_since(t0);
    o.require(last == 179'424'673, "p_1e7 = " + std::to_string(last));
    o.require(s < 60.0, "took " + std::to_string(s) + " s");
    o.note("10^7 primes in " + std::to_string(s) + " s, R_0=" + str(e.snapshot(), 10));
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"exact constants", exact_constants},
        {"A~(g) = A(g) when h = 1", tilde_consistency},
        {"oracle equivalence", oracle_equivalence},
        {"local factor oracles", local_factor_oracles},
        {"Sigma(N) > A", sigma_positivity},
        {"R_0 convergence and oscillation", ratio_oscillation},
        {"h > 1 discrimination", h_discrimination},
        {"primitive root census", primitive_census},
        {"rank-3 and Stephens estimators", rank_and_stephens},
        {"parallel determinism", parallel_determinism},
        {"performance", performance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %2zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
