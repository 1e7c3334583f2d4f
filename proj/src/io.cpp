#include "wn/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace wn {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

TimeSeries read_series(std::istream& in) {
    std::vector<double> values;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::string cell = trim(line);
        if (!cell.empty() && cell.back() == ',') cell.pop_back();
        cell = trim(cell);
        if (cell.empty()) continue;
        double v;
        if (!parse_double(cell, v)) {
            if (first) { // optional header row
                first = false;
                continue;
            }
            throw std::invalid_argument("read_series: cannot parse value '" + cell + "'");
        }
        first = false;
        values.push_back(v);
    }
    return TimeSeries(std::move(values));
}

TimeSeries read_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open series file: " + path);
    return read_series(in);
}

void write_series(std::ostream& out, const TimeSeries& x) {
    for (double v : x.values()) out << fmt17(v) << '\n';
}

namespace {

std::vector<double> doubles_from_json(const nlohmann::json& j) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

} // namespace

ArmaParams arma_params_from_json(const nlohmann::json& j) {
    ArmaParams p;
    if (j.contains("alpha")) p.alpha = doubles_from_json(j.at("alpha"));
    if (j.contains("beta")) p.beta = doubles_from_json(j.at("beta"));
    return p;
}

nlohmann::json arma_params_to_json(const ArmaParams& params) {
    return {{"alpha", params.alpha}, {"beta", params.beta}};
}

FarimaParams farima_params_from_json(const nlohmann::json& j) {
    FarimaParams theta;
    theta.d = j.at("d").get<double>();
    theta.arma = arma_params_from_json(j);
    return theta;
}

nlohmann::json farima_params_to_json(const FarimaParams& theta) {
    nlohmann::json j = arma_params_to_json(theta.arma);
    j["d"] = theta.d;
    return j;
}

DgpSpec dgp_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    DgpSpec spec;
    if (kind == "iid") {
        IidSpec s;
        const std::string dist = j.value("dist", std::string("normal"));
        if (dist == "normal") {
            s.dist = InnovationDist::normal;
        } else if (dist == "student_t") {
            s.dist = InnovationDist::student_t;
            s.nu = j.value("nu", 5);
        } else {
            throw std::invalid_argument("dgp: unknown iid dist '" + dist + "'");
        }
        spec.value = s;
    } else if (kind == "garch11") {
        spec.value = Garch11Spec{j.value("omega", 0.05), j.value("a", 0.05), j.value("b", 0.90)};
    } else if (kind == "bilinear") {
        spec.value = BilinearSpec{j.at("b").get<double>(), j.value("sigma", 1.0)};
    } else if (kind == "allpass11") {
        spec.value = Allpass11Spec{j.at("phi").get<double>(), j.value("sigma", 1.0)};
    } else if (kind == "nlma") {
        spec.value = NlmaSpec{j.at("beta").get<double>(), j.value("sigma", 1.0)};
    } else if (kind == "arma") {
        ArmaDgpSpec s;
        s.params = arma_params_from_json(j);
        if (j.contains("innovation"))
            s.innovation = std::make_shared<DgpSpec>(dgp_from_json(j.at("innovation")));
        spec.value = s;
    } else if (kind == "weak_arma_subsampled") {
        spec.value = SubsampledArmaSpec{j.at("a").get<double>(), j.at("b").get<double>()};
    } else if (kind == "noncausal_ma1") {
        spec.value = NoncausalMa1Spec{j.at("phi").get<double>()};
    } else if (kind == "farima") {
        FarimaDgpSpec s;
        s.params = farima_params_from_json(j);
        if (j.contains("innovation"))
            s.innovation = std::make_shared<DgpSpec>(dgp_from_json(j.at("innovation")));
        spec.value = s;
    } else {
        throw std::invalid_argument("dgp: unknown kind '" + kind + "'");
    }
    validate_dgp(spec);
    return spec;
}

nlohmann::json dgp_to_json(const DgpSpec& spec) {
    return std::visit(
        [](const auto& s) -> nlohmann::json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IidSpec>) {
                nlohmann::json j{{"kind", "iid"}};
                if (s.dist == InnovationDist::student_t) {
                    j["dist"] = "student_t";
                    j["nu"] = s.nu;
                } else {
                    j["dist"] = "normal";
                }
                return j;
            } else if constexpr (std::is_same_v<T, Garch11Spec>) {
                return {{"kind", "garch11"}, {"omega", s.omega}, {"a", s.a}, {"b", s.b}};
            } else if constexpr (std::is_same_v<T, BilinearSpec>) {
                return {{"kind", "bilinear"}, {"b", s.b}, {"sigma", s.sigma}};
            } else if constexpr (std::is_same_v<T, Allpass11Spec>) {
                return {{"kind", "allpass11"}, {"phi", s.phi}, {"sigma", s.sigma}};
            } else if constexpr (std::is_same_v<T, NlmaSpec>) {
                return {{"kind", "nlma"}, {"beta", s.beta}, {"sigma", s.sigma}};
            } else if constexpr (std::is_same_v<T, ArmaDgpSpec>) {
                nlohmann::json j = arma_params_to_json(s.params);
                j["kind"] = "arma";
                if (s.innovation) j["innovation"] = dgp_to_json(*s.innovation);
                return j;
            } else if constexpr (std::is_same_v<T, SubsampledArmaSpec>) {
                return {{"kind", "weak_arma_subsampled"}, {"a", s.a}, {"b", s.b}};
            } else if constexpr (std::is_same_v<T, NoncausalMa1Spec>) {
                return {{"kind", "noncausal_ma1"}, {"phi", s.phi}};
            } else {
                nlohmann::json j = farima_params_to_json(s.params);
                j["kind"] = "farima";
                if (s.innovation) j["innovation"] = dgp_to_json(*s.innovation);
                return j;
            }
        },
        spec.value);
}

std::string test_mode_name(TestMode mode) {
    switch (mode) {
        case TestMode::finite_sample: return "finite_sample";
        case TestMode::asymptotic: return "asymptotic";
        case TestMode::chi_square: return "chi_square";
    }
    return "unknown";
}

TestMode test_mode_from_name(const std::string& name) {
    if (name == "finite_sample") return TestMode::finite_sample;
    if (name == "asymptotic") return TestMode::asymptotic;
    if (name == "chi_square") return TestMode::chi_square;
    throw std::invalid_argument("unknown test mode: " + name);
}

nlohmann::json outcome_to_json(const TestOutcome& out) {
    nlohmann::json j{{"statistic", out.raw},    {"n_statistic", out.scaled},
                     {"z", out.z_or_q},         {"p", out.p_value},
                     {"m", out.m},              {"kernel", kernel_name(out.kernel)},
                     {"mode", test_mode_name(out.mode)}, {"n", out.n}};
    if (out.mode == TestMode::chi_square) j["df"] = out.df;
    return j;
}

nlohmann::json coupling_to_json(const CouplingReport& rep) {
    nlohmann::json j{{"alpha", rep.alpha},
                     {"lags", rep.lags},
                     {"moment_estimates", rep.moments},
                     {"exact_coupling", rep.exact_coupling}};
    if (!rep.exact_coupling) {
        j["slope"] = rep.slope;
        j["slope_se"] = rep.slope_se;
        j["rho_hat"] = rep.rho_hat;
    }
    return j;
}

nlohmann::json css_fit_to_json(const CssFit& fit) {
    nlohmann::json j = arma_params_to_json(fit.params);
    j["objective"] = fit.objective;
    j["converged"] = fit.converged;
    j["boundary_warning"] = fit.boundary_warning;
    return j;
}

nlohmann::json whittle_fit_to_json(const WhittleFit& fit) {
    nlohmann::json j = farima_params_to_json(fit.params);
    j["objective"] = fit.objective;
    j["converged"] = fit.converged;
    j["boundary_warning"] = fit.boundary_warning;
    return j;
}

McConfig mc_config_from_json(const nlohmann::json& j) {
    McConfig cfg;
    cfg.dgp = dgp_from_json(j.at("dgp"));
    cfg.n = j.at("n").get<int>();
    cfg.reps = j.at("reps").get<int>();

    const std::string test = j.value("test", std::string("hong"));
    if (test == "hong") cfg.test = TestKind::hong;
    else if (test == "box_pierce") cfg.test = TestKind::box_pierce;
    else throw std::invalid_argument("mc config: unknown test '" + test + "'");

    cfg.kernel = kernel_from_name(j.value("kernel", std::string("bartlett"))).kind;
    if (j.contains("m")) cfg.m = j.at("m").get<int>();
    cfg.m_rule_c = j.value("m_rule_c", 3.0);
    cfg.mode = test_mode_from_name(j.value("mode", std::string("finite_sample")));
    cfg.df_adjust = j.value("df_adjust", 0);
    cfg.demean = j.value("demean", true);
    cfg.level = j.value("level", 0.05);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.threads = j.value("threads", 0);

    if (j.contains("pipeline")) {
        const auto& pj = j.at("pipeline");
        const std::string kind = pj.value("kind", std::string("raw"));
        if (kind == "raw") {
            cfg.pipeline = RawPipeline{};
        } else if (kind == "fit_arma") {
            cfg.pipeline = FitArmaPipeline{pj.value("p", 1), pj.value("q", 0)};
        } else if (kind == "fit_farima") {
            FitFarimaPipeline fp;
            fp.p = pj.value("p", 0);
            fp.q = pj.value("q", 0);
            const std::string mm = pj.value("mean_mode", std::string("known_zero"));
            if (mm == "known_zero") fp.mean_mode = MeanMode::known_zero;
            else if (mm == "subtract_sample_mean") fp.mean_mode = MeanMode::subtract_sample_mean;
            else throw std::invalid_argument("mc config: unknown mean_mode '" + mm + "'");
            cfg.pipeline = fp;
        } else {
            throw std::invalid_argument("mc config: unknown pipeline '" + kind + "'");
        }
    }
    return cfg;
}

namespace {

std::string pipeline_label(const Pipeline& p) {
    if (std::holds_alternative<RawPipeline>(p)) return "raw";
    if (const auto* fa = std::get_if<FitArmaPipeline>(&p)) {
        std::ostringstream os;
        os << "fit_arma(" << fa->p << "," << fa->q << ")";
        return os.str();
    }
    const auto& ff = std::get<FitFarimaPipeline>(p);
    std::ostringstream os;
    os << "fit_farima(" << ff.p << "," << ff.q << ","
       << (ff.mean_mode == MeanMode::known_zero ? "known_zero" : "subtract_sample_mean")
       << ")";
    return os.str();
}

} // namespace

std::string mc_tsv_header() {
    return "dgp\tn\treps\ttest\tkernel\tm\tmode\tdemean\tdf_adjust\tlevel\t"
           "pipeline\tseed\trejection_rate\tci_lo\tci_hi\treps_completed\t"
           "mean_z\tvar_z\tfailures";
}

std::string mc_tsv_row(const McConfig& cfg, int resolved_m, const McReport& report) {
    std::ostringstream os;
    os.precision(10);
    os << dgp_to_json(cfg.dgp).dump() << '\t' << cfg.n << '\t' << cfg.reps << '\t'
       << (cfg.test == TestKind::hong ? "hong" : "box_pierce") << '\t'
       << kernel_name(cfg.kernel) << '\t' << resolved_m << '\t'
       << test_mode_name(cfg.mode) << '\t' << (cfg.demean ? 1 : 0) << '\t'
       << cfg.df_adjust << '\t' << cfg.level << '\t'
       << pipeline_label(cfg.pipeline) << '\t' << cfg.seed << '\t'
       << report.rejection_rate << '\t' << report.ci_lo << '\t' << report.ci_hi << '\t'
       << report.reps_completed << '\t' << report.mean_z << '\t' << report.var_z << '\t'
       << report.failures;
    return os.str();
}

} // namespace wn
