#include "wn/mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "wn/rng.hpp"
#include "wn/whittle.hpp"

namespace wn {

int resolve_m(const McConfig& cfg) {
    if (cfg.m) return *cfg.m;
    return static_cast<int>(std::ceil(cfg.m_rule_c * std::cbrt(static_cast<double>(cfg.n))));
}

BinomialSummary rejection_rate(const std::vector<bool>& decisions) {
    if (decisions.empty())
        throw std::invalid_argument("rejection_rate: empty decision sequence");
    const double n = static_cast<double>(decisions.size());
    double k = 0.0;
    for (bool b : decisions) k += b ? 1.0 : 0.0;
    const double phat = k / n;

    const double z = 1.959963984540054; // 97.5% normal quantile
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;

    BinomialSummary s;
    s.rate = phat;
    // At the boundary counts the score interval ends exactly at 0 or 1.
    s.ci_lo = k == 0.0 ? 0.0 : std::max(0.0, center - half);
    s.ci_hi = k == n ? 1.0 : std::min(1.0, center + half);
    s.n = static_cast<int>(decisions.size());
    return s;
}

namespace {

struct RepResult {
    double z = 0.0;
    bool reject = false;
    bool failed = false;
};

RepResult run_one(const McConfig& cfg, int m, std::uint64_t rep_seed) {
    RepResult r;
    try {
        TimeSeries x = simulate(cfg.dgp, cfg.n, rep_seed);

        if (const auto* fa = std::get_if<FitArmaPipeline>(&cfg.pipeline)) {
            CssFit fit = css_fit_arma(x, fa->p, fa->q);
            if (!fit.converged) {
                r.failed = true;
                return r;
            }
            x = arma_residuals(x, fit.params);
        } else if (const auto* ff = std::get_if<FitFarimaPipeline>(&cfg.pipeline)) {
            WhittleFit fit = whittle_fit(x, ff->p, ff->q);
            if (!fit.converged) {
                r.failed = true;
                return r;
            }
            x = farima_residuals(x, fit.params, ff->mean_mode);
        }

        TestOutcome out;
        if (cfg.test == TestKind::hong) {
            out = hong_test(x, make_kernel(cfg.kernel), m, cfg.mode, cfg.demean);
        } else {
            out = box_pierce_test(x, m, cfg.df_adjust, cfg.demean);
        }
        r.z = out.z_or_q;
        r.reject = out.p_value < cfg.level;
    } catch (const std::exception&) {
        r.failed = true;
    }
    return r;
}

} // namespace

McReport run_experiment(const McConfig& cfg) {
    if (cfg.reps < 100) throw std::invalid_argument("run_experiment: need reps >= 100");
    if (!(cfg.level > 0.0 && cfg.level < 1.0))
        throw std::invalid_argument("run_experiment: level must be in (0, 1)");
    validate_dgp(cfg.dgp);
    const int m = resolve_m(cfg);
    if (m < 1 || m >= cfg.n)
        throw std::invalid_argument("run_experiment: resolved m must satisfy 1 <= m < n");

    std::vector<RepResult> results(cfg.reps);
    unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.reps));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int rep = next.fetch_add(1);
            if (rep >= cfg.reps) break;
            results[rep] = run_one(cfg, m, mix_seed(cfg.seed, static_cast<std::uint64_t>(rep)));
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Aggregate in replication order so reports do not depend on scheduling.
    std::vector<bool> decisions;
    decisions.reserve(cfg.reps);
    double sum_z = 0.0;
    int failures = 0;
    for (const RepResult& r : results) {
        if (r.failed) {
            ++failures;
            continue;
        }
        decisions.push_back(r.reject);
        sum_z += r.z;
    }

    McReport report;
    report.failures = failures;
    report.reps_completed = static_cast<int>(decisions.size());
    if (!decisions.empty()) {
        const BinomialSummary s = rejection_rate(decisions);
        report.rejection_rate = s.rate;
        report.ci_lo = s.ci_lo;
        report.ci_hi = s.ci_hi;
        report.mean_z = sum_z / report.reps_completed;
        double ss = 0.0;
        for (const RepResult& r : results) {
            if (r.failed) continue;
            ss += (r.z - report.mean_z) * (r.z - report.mean_z);
        }
        report.var_z = report.reps_completed > 1 ? ss / (report.reps_completed - 1) : 0.0;
    }

    if (failures > 0.02 * cfg.reps)
        throw ExperimentInvalidError("run_experiment: more than 2% of replications failed",
                                     report);
    return report;
}

} // namespace wn
