#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wn/io.hpp"
#include "wn/rng.hpp"
#include "wn/whittle.hpp"

namespace {

using nlohmann::json;

wn::TimeSeries load_series(const std::string& path) {
    if (path.empty() || path == "-") return wn::read_series(std::cin);
    return wn::read_series_file(path);
}

int fail_with_error(const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << std::endl;
    return 1;
}

struct TestArgs {
    std::string file = "-";
    std::string kernel = "bartlett";
    int m = 0; // 0 = default rule
    std::string mode = "finite_sample";
    bool bp = false;
    int df_adjust = 0;
    bool no_demean = false;
};

int cmd_test(const TestArgs& a) {
    const wn::TimeSeries x = load_series(a.file);
    const int n = static_cast<int>(x.size());
    const int m = a.m > 0 ? a.m : wn::default_lag_truncation(n);
    wn::TestOutcome out;
    if (a.bp) {
        out = wn::box_pierce_test(x, m, a.df_adjust, !a.no_demean);
    } else {
        out = wn::hong_test(x, wn::kernel_from_name(a.kernel), m,
                            wn::test_mode_from_name(a.mode), !a.no_demean);
    }
    std::cout << wn::outcome_to_json(out).dump() << std::endl;
    return 0;
}

struct SimulateArgs {
    std::string dgp;
    int n = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    const wn::DgpSpec spec = wn::dgp_from_json(json::parse(a.dgp));
    const wn::TimeSeries x = wn::simulate(spec, a.n, a.seed);
    if (a.out.empty() || a.out == "-") {
        wn::write_series(std::cout, x);
    } else {
        std::ofstream f(a.out);
        if (!f) throw std::invalid_argument("cannot open output file: " + a.out);
        wn::write_series(f, x);
    }
    return 0;
}

struct AcfArgs {
    std::string file = "-";
    int max_lag = 0;
    bool no_demean = false;
};

int cmd_acf(const AcfArgs& a) {
    const wn::TimeSeries x = load_series(a.file);
    const int max_lag = a.max_lag > 0
                            ? a.max_lag
                            : std::min(static_cast<int>(x.size()) - 1,
                                       wn::default_lag_truncation(static_cast<int>(x.size())));
    const wn::AcfResult acf = wn::sample_acf(x, max_lag, !a.no_demean);
    char buf[64];
    for (int j = 1; j <= max_lag; ++j) {
        std::snprintf(buf, sizeof(buf), "%d\t%.17g", j, acf.rho[j - 1]);
        std::cout << buf << '\n';
    }
    return 0;
}

struct FitArgs {
    std::string file = "-";
    int p = 0;
    int q = 0;
    double delta = 0.01;
    std::string mean_mode = "known_zero";
};

int cmd_fit_arma(const FitArgs& a) {
    const wn::TimeSeries x = load_series(a.file);
    const wn::CssFit fit = wn::css_fit_arma(x, a.p, a.q, a.delta);
    std::cout << wn::css_fit_to_json(fit).dump() << std::endl;
    return 0;
}

int cmd_fit_farima(const FitArgs& a) {
    const wn::TimeSeries y = load_series(a.file);
    const wn::WhittleFit fit = wn::whittle_fit(y, a.p, a.q, a.delta);
    if (a.mean_mode == "subtract_sample_mean" && fit.params.d >= 0.25) {
        std::cerr << "warning: sample-mean adjustment is unreliable for d >= 1/4 "
                     "(estimated d = "
                  << fit.params.d << ")" << std::endl;
    }
    std::cout << wn::whittle_fit_to_json(fit).dump() << std::endl;
    return 0;
}

struct ResidualArgs {
    std::string file = "-";
    std::string model;
    std::string mean_mode = "known_zero";
};

int cmd_residuals(const ResidualArgs& a) {
    const wn::TimeSeries x = load_series(a.file);
    const json mj = json::parse(a.model);
    wn::TimeSeries out = [&]() {
        if (mj.contains("d")) {
            const wn::FarimaParams theta = wn::farima_params_from_json(mj);
            const wn::MeanMode mm = a.mean_mode == "subtract_sample_mean"
                                        ? wn::MeanMode::subtract_sample_mean
                                        : wn::MeanMode::known_zero;
            if (mm == wn::MeanMode::subtract_sample_mean && theta.d >= 0.25)
                std::cerr << "warning: sample-mean adjustment is unreliable for d >= 1/4"
                          << std::endl;
            return wn::farima_residuals(x, theta, mm);
        }
        return wn::arma_residuals(x, wn::arma_params_from_json(mj));
    }();
    wn::write_series(std::cout, out);
    return 0;
}

struct GmcArgs {
    std::string dgp;
    double alpha = 2.0;
    int max_n = 30;
    int reps = 1000;
    std::uint64_t seed = 0;
};

int cmd_gmc(const GmcArgs& a) {
    const wn::DgpSpec spec = wn::dgp_from_json(json::parse(a.dgp));
    const wn::CouplingReport rep =
        wn::gmc_coupling_estimate(spec, a.alpha, a.max_n, a.reps, a.seed);
    std::cout << wn::coupling_to_json(rep).dump() << std::endl;
    return 0;
}

int cmd_mc(const std::string& config_path) {
    std::ifstream f(config_path);
    if (!f) throw std::invalid_argument("cannot open config file: " + config_path);
    const json j = json::parse(f);

    std::vector<wn::McConfig> cells;
    if (j.is_array()) {
        for (const auto& cell : j) cells.push_back(wn::mc_config_from_json(cell));
    } else if (j.contains("experiments")) {
        for (const auto& cell : j.at("experiments"))
            cells.push_back(wn::mc_config_from_json(cell));
    } else {
        cells.push_back(wn::mc_config_from_json(j));
    }

    std::cout << wn::mc_tsv_header() << '\n';
    for (const auto& cfg : cells) {
        const wn::McReport report = wn::run_experiment(cfg);
        std::cout << wn::mc_tsv_row(cfg, wn::resolve_m(cfg), report) << std::endl;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel-weighted white-noise tests with ARMA/FARIMA residual "
                 "diagnostics and Monte Carlo tooling"};
    app.require_subcommand(1);

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "Portmanteau white-noise test on a series file");
    test->add_option("file", test_args.file, "series file (default stdin)");
    test->add_option("--kernel", test_args.kernel, "truncated|bartlett|parzen|tukey");
    test->add_option("--m", test_args.m, "lag truncation (default ceil(3 n^{1/3}))");
    test->add_option("--mode", test_args.mode, "finite_sample|asymptotic");
    test->add_flag("--bp", test_args.bp, "Box-Pierce chi-square test instead of Hong's");
    test->add_option("--df-adjust", test_args.df_adjust, "degrees-of-freedom reduction (--bp)");
    test->add_flag("--no-demean", test_args.no_demean, "skip mean subtraction");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Simulate a configured noise process");
    sim->add_option("--dgp", sim_args.dgp, "process JSON, e.g. {\"kind\":\"garch11\"}")->required();
    sim->add_option("--n", sim_args.n, "series length")->required();
    sim->add_option("--seed", sim_args.seed, "RNG seed");
    sim->add_option("--out", sim_args.out, "output file (default stdout)");

    AcfArgs acf_args;
    auto* acf = app.add_subcommand("acf", "Sample autocorrelations as TSV (lag, rho)");
    acf->add_option("file", acf_args.file, "series file (default stdin)");
    acf->add_option("--max-lag", acf_args.max_lag, "largest lag");
    acf->add_flag("--no-demean", acf_args.no_demean, "skip mean subtraction");

    FitArgs fit_arma_args;
    auto* fit_arma = app.add_subcommand("fit-arma", "Conditional-sum-of-squares ARMA fit");
    fit_arma->add_option("file", fit_arma_args.file, "series file (default stdin)");
    fit_arma->add_option("--p", fit_arma_args.p, "AR order")->required();
    fit_arma->add_option("--q", fit_arma_args.q, "MA order")->required();
    fit_arma->add_option("--delta", fit_arma_args.delta, "stability margin");

    FitArgs fit_farima_args;
    auto* fit_farima = app.add_subcommand("fit-farima", "Whittle FARIMA fit");
    fit_farima->add_option("file", fit_farima_args.file, "series file (default stdin)");
    fit_farima->add_option("--p", fit_farima_args.p, "AR order")->required();
    fit_farima->add_option("--q", fit_farima_args.q, "MA order")->required();
    fit_farima->add_option("--mean-mode", fit_farima_args.mean_mode,
                           "known_zero|subtract_sample_mean");

    ResidualArgs resid_args;
    auto* resid = app.add_subcommand("residuals", "Model residuals for a series");
    resid->add_option("file", resid_args.file, "series file (default stdin)");
    resid->add_option("--model", resid_args.model,
                      "parameter JSON {alpha,beta} or {d,alpha,beta}")->required();
    resid->add_option("--mean-mode", resid_args.mean_mode, "known_zero|subtract_sample_mean");

    GmcArgs gmc_args;
    auto* gmc = app.add_subcommand("gmc-check", "Empirical geometric-moment-contraction check");
    gmc->add_option("--dgp", gmc_args.dgp, "process JSON")->required();
    gmc->add_option("--alpha", gmc_args.alpha, "moment order (1, 2, 4 or 8)");
    gmc->add_option("--max-n", gmc_args.max_n, "largest coupling lag");
    gmc->add_option("--reps", gmc_args.reps, "replications per lag");
    gmc->add_option("--seed", gmc_args.seed, "RNG seed");

    std::string mc_config;
    auto* mc = app.add_subcommand("mc", "Monte Carlo experiment grid -> TSV");
    mc->add_option("--config", mc_config, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*test) return cmd_test(test_args);
        if (*sim) return cmd_simulate(sim_args);
        if (*acf) return cmd_acf(acf_args);
        if (*fit_arma) return cmd_fit_arma(fit_arma_args);
        if (*fit_farima) return cmd_fit_farima(fit_farima_args);
        if (*resid) return cmd_residuals(resid_args);
        if (*gmc) return cmd_gmc(gmc_args);
        if (*mc) return cmd_mc(mc_config);
    } catch (const std::exception& e) {
        return fail_with_error(e);
    }
    return 0;
}
