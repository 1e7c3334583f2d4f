#include "wn/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include "wn/rng.hpp"

namespace wn {

namespace {

constexpr int kBaseBurn = 1000;
constexpr int kFarimaWindow = 5000;

int burn_length(int memory) { return std::max(kBaseBurn, 50 * memory); }

std::vector<double> simulate_inner(const DgpVariant& spec, int n, Rng& rng);

const DgpVariant kIidNormal = IidSpec{};

const DgpVariant& innovation_or_default(const std::shared_ptr<const DgpSpec>& inner) {
    return inner ? inner->value : kIidNormal;
}

std::vector<double> simulate_iid(const IidSpec& s, int n, Rng& rng) {
    std::vector<double> u(n);
    if (s.dist == InnovationDist::normal) {
        for (double& v : u) v = rng.normal();
    } else {
        for (double& v : u) v = rng.student_t(s.nu);
    }
    return u;
}

std::vector<double> simulate_garch11(const Garch11Spec& s, int n, Rng& rng) {
    const int burn = burn_length(1);
    double sig2 = s.omega / (1.0 - s.a - s.b);
    double u = std::sqrt(sig2) * rng.normal();
    std::vector<double> out(n);
    for (int t = -burn; t < n; ++t) {
        sig2 = s.omega + s.a * u * u + s.b * sig2;
        u = std::sqrt(sig2) * rng.normal();
        if (t >= 0) out[t] = u;
    }
    return out;
}

std::vector<double> simulate_bilinear(const BilinearSpec& s, int n, Rng& rng) {
    const int burn = burn_length(2);
    double eps_prev = 0.0, u1 = 0.0, u2 = 0.0;
    std::vector<double> out(n);
    for (int t = -burn; t < n; ++t) {
        const double eps = s.sigma * rng.normal();
        const double u = eps + s.b * eps_prev * u2;
        u2 = u1;
        u1 = u;
        eps_prev = eps;
        if (t >= 0) out[t] = u;
    }
    return out;
}

std::vector<double> simulate_allpass(const Allpass11Spec& s, int n, Rng& rng) {
    const int burn = burn_length(1);
    double u = 0.0, eps_prev = 0.0;
    std::vector<double> out(n);
    for (int t = -burn; t < n; ++t) {
        const double eps = s.sigma * rng.normal();
        u = s.phi * u + eps - eps_prev / s.phi;
        eps_prev = eps;
        if (t >= 0) out[t] = u;
    }
    return out;
}

std::vector<double> simulate_nlma(const NlmaSpec& s, int n, Rng& rng) {
    const int burn = burn_length(2);
    double e1 = 0.0, e2 = 0.0;
    std::vector<double> out(n);
    for (int t = -burn; t < n; ++t) {
        const double eps = s.sigma * rng.normal();
        const double u = s.beta * e1 * e2 + eps;
        e2 = e1;
        e1 = eps;
        if (t >= 0) out[t] = u;
    }
    return out;
}

std::vector<double> simulate_arma(const ArmaDgpSpec& s, int n, Rng& rng) {
    const int p = s.params.p(), q = s.params.q();
    const int burn = burn_length(std::max({p, q, 1}));
    const std::vector<double> u =
        simulate_inner(innovation_or_default(s.innovation), n + burn, rng);
    std::vector<double> x(n + burn, 0.0);
    for (int t = 0; t < n + burn; ++t) {
        double v = u[t];
        for (int i = 1; i <= p && i <= t; ++i) v += s.params.alpha[i - 1] * x[t - i];
        for (int j = 1; j <= q && j <= t; ++j) v += s.params.beta[j - 1] * u[t - j];
        x[t] = v;
    }
    return {x.begin() + burn, x.end()};
}

std::vector<double> simulate_subsampled(const SubsampledArmaSpec& s, int n, Rng& rng) {
    const int burn = burn_length(1);
    const int total = burn + 2 * n;
    double x = 0.0, eps_prev = 0.0;
    std::vector<double> xs(total);
    for (int t = 0; t < total; ++t) {
        const double eps = rng.normal();
        x = s.a * x + eps - s.b * eps_prev;
        eps_prev = eps;
        xs[t] = x;
    }
    std::vector<double> y(n);
    for (int t = 1; t <= n; ++t) y[t - 1] = xs[burn + 2 * t - 1];
    return y;
}

std::vector<double> simulate_noncausal(const NoncausalMa1Spec& s, int n, Rng& rng) {
    const int burn = burn_length(1);
    double eps_prev = 0.0;
    std::vector<double> out(n);
    for (int t = -burn; t < n; ++t) {
        const double eps = rng.normal();
        const double x = eps - s.phi * eps_prev;
        eps_prev = eps;
        if (t >= 0) out[t] = x;
    }
    return out;
}

std::vector<double> simulate_farima(const FarimaDgpSpec& s, int n, Rng& rng) {
    const int M = kFarimaWindow;
    const std::vector<double> u =
        simulate_inner(innovation_or_default(s.innovation), n + M, rng);
    const std::vector<double> a = farima_ma_coeffs(s.params, M);
    std::vector<double> y(n);
    for (int t = 1; t <= n; ++t) {
        double v = 0.0;
        const double* base = u.data() + (t - 1);
        for (int k = 0; k <= M; ++k) v += a[k] * base[M - k];
        y[t - 1] = v;
    }
    return y;
}

std::vector<double> simulate_inner(const DgpVariant& spec, int n, Rng& rng) {
    return std::visit(
        [&](const auto& s) -> std::vector<double> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IidSpec>) return simulate_iid(s, n, rng);
            else if constexpr (std::is_same_v<T, Garch11Spec>) return simulate_garch11(s, n, rng);
            else if constexpr (std::is_same_v<T, BilinearSpec>) return simulate_bilinear(s, n, rng);
            else if constexpr (std::is_same_v<T, Allpass11Spec>) return simulate_allpass(s, n, rng);
            else if constexpr (std::is_same_v<T, NlmaSpec>) return simulate_nlma(s, n, rng);
            else if constexpr (std::is_same_v<T, ArmaDgpSpec>) return simulate_arma(s, n, rng);
            else if constexpr (std::is_same_v<T, SubsampledArmaSpec>) return simulate_subsampled(s, n, rng);
            else if constexpr (std::is_same_v<T, NoncausalMa1Spec>) return simulate_noncausal(s, n, rng);
            else return simulate_farima(s, n, rng);
        },
        spec);
}

void validate_inner(const DgpVariant& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IidSpec>) {
                if (s.dist == InnovationDist::student_t && s.nu < 3)
                    throw std::invalid_argument("iid: student_t needs nu >= 3");
            } else if constexpr (std::is_same_v<T, Garch11Spec>) {
                if (!(s.omega > 0.0) || s.a < 0.0 || s.b < 0.0)
                    throw std::invalid_argument("garch11: need omega > 0, a >= 0, b >= 0");
                if (!(s.a + s.b < 1.0))
                    throw std::invalid_argument("garch11: need a + b < 1 for stationarity");
            } else if constexpr (std::is_same_v<T, BilinearSpec>) {
                if (!(std::fabs(s.b) < 1.0))
                    throw std::invalid_argument("bilinear: need |b| < 1");
                if (!(s.sigma > 0.0))
                    throw std::invalid_argument("bilinear: need sigma > 0");
            } else if constexpr (std::is_same_v<T, Allpass11Spec>) {
                if (!(std::fabs(s.phi) < 1.0) || s.phi == 0.0)
                    throw std::invalid_argument("allpass11: need 0 < |phi| < 1");
                if (!(s.sigma > 0.0))
                    throw std::invalid_argument("allpass11: need sigma > 0");
            } else if constexpr (std::is_same_v<T, NlmaSpec>) {
                if (!(s.sigma > 0.0))
                    throw std::invalid_argument("nlma: need sigma > 0");
            } else if constexpr (std::is_same_v<T, ArmaDgpSpec>) {
                if (check_stability(s.params, 0.0).min_root_modulus <= 1.0)
                    throw std::invalid_argument("arma: unstable parameters");
                if (s.innovation) validate_dgp(*s.innovation);
            } else if constexpr (std::is_same_v<T, SubsampledArmaSpec>) {
                if (!(std::fabs(s.a) < 1.0) || !(std::fabs(s.b) < 1.0) || s.a == s.b)
                    throw std::invalid_argument("weak_arma_subsampled: need a != b in (-1, 1)");
            } else if constexpr (std::is_same_v<T, NoncausalMa1Spec>) {
                if (!(std::fabs(s.phi) > 1.0))
                    throw std::invalid_argument("noncausal_ma1: need |phi| > 1");
            } else {
                if (!(s.params.d > 0.0) || !(s.params.d < 0.5))
                    throw std::invalid_argument("farima: need d in (0, 1/2)");
                if (check_stability(s.params.arma, 0.0).min_root_modulus <= 1.0)
                    throw std::invalid_argument("farima: unstable ARMA part");
                if (s.innovation) validate_dgp(*s.innovation);
            }
        },
        spec);
}

// One-step state machines for the coupling construction; each consumes one
// innovation per step.
class CoupledProcess {
public:
    virtual ~CoupledProcess() = default;
    virtual double draw_innovation(Rng& rng) const = 0;
    virtual double step(double eps) = 0;
};

class IidCoupled : public CoupledProcess {
public:
    explicit IidCoupled(const IidSpec& s) : spec_(s) {}
    double draw_innovation(Rng& rng) const override {
        return spec_.dist == InnovationDist::normal ? rng.normal()
                                                    : rng.student_t(spec_.nu);
    }
    double step(double eps) override { return eps; }

private:
    IidSpec spec_;
};

class GarchCoupled : public CoupledProcess {
public:
    explicit GarchCoupled(const Garch11Spec& s)
        : spec_(s), sig2_(s.omega / (1.0 - s.a - s.b)), u_(0.0) {}
    double draw_innovation(Rng& rng) const override { return rng.normal(); }
    double step(double eps) override {
        sig2_ = spec_.omega + spec_.a * u_ * u_ + spec_.b * sig2_;
        u_ = std::sqrt(sig2_) * eps;
        return u_;
    }

private:
    Garch11Spec spec_;
    double sig2_, u_;
};

class BilinearCoupled : public CoupledProcess {
public:
    explicit BilinearCoupled(const BilinearSpec& s) : spec_(s) {}
    double draw_innovation(Rng& rng) const override { return spec_.sigma * rng.normal(); }
    double step(double eps) override {
        const double u = eps + spec_.b * eps_prev_ * u2_;
        u2_ = u1_;
        u1_ = u;
        eps_prev_ = eps;
        return u;
    }

private:
    BilinearSpec spec_;
    double eps_prev_ = 0.0, u1_ = 0.0, u2_ = 0.0;
};

class AllpassCoupled : public CoupledProcess {
public:
    explicit AllpassCoupled(const Allpass11Spec& s) : spec_(s) {}
    double draw_innovation(Rng& rng) const override { return spec_.sigma * rng.normal(); }
    double step(double eps) override {
        u_ = spec_.phi * u_ + eps - eps_prev_ / spec_.phi;
        eps_prev_ = eps;
        return u_;
    }

private:
    Allpass11Spec spec_;
    double u_ = 0.0, eps_prev_ = 0.0;
};

class NlmaCoupled : public CoupledProcess {
public:
    explicit NlmaCoupled(const NlmaSpec& s) : spec_(s) {}
    double draw_innovation(Rng& rng) const override { return spec_.sigma * rng.normal(); }
    double step(double eps) override {
        const double u = spec_.beta * e1_ * e2_ + eps;
        e2_ = e1_;
        e1_ = eps;
        return u;
    }

private:
    NlmaSpec spec_;
    double e1_ = 0.0, e2_ = 0.0;
};

std::unique_ptr<CoupledProcess> make_coupled(const DgpVariant& spec) {
    return std::visit(
        [](const auto& s) -> std::unique_ptr<CoupledProcess> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IidSpec>)
                return std::make_unique<IidCoupled>(s);
            else if constexpr (std::is_same_v<T, Garch11Spec>)
                return std::make_unique<GarchCoupled>(s);
            else if constexpr (std::is_same_v<T, BilinearSpec>)
                return std::make_unique<BilinearCoupled>(s);
            else if constexpr (std::is_same_v<T, Allpass11Spec>)
                return std::make_unique<AllpassCoupled>(s);
            else if constexpr (std::is_same_v<T, NlmaSpec>)
                return std::make_unique<NlmaCoupled>(s);
            else
                throw std::invalid_argument(
                    "gmc_coupling_estimate: only primitive noise processes "
                    "(iid, garch11, bilinear, allpass11, nlma) are supported");
        },
        spec);
}

// E|u_lag - u'_lag|^alpha for one lag, averaged over reps.
double coupling_moment(const DgpVariant& spec, double alpha, int lag, int reps,
                       std::uint64_t seed, int lag_index) {
    double sum = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        const std::uint64_t base =
            mix_seed(seed, static_cast<std::uint64_t>(lag_index) * static_cast<std::uint64_t>(reps) + rep);
        Rng past_a(splitmix64(base + 1));
        Rng past_b(splitmix64(base + 2));
        Rng shared(splitmix64(base + 3));

        auto chain_a = make_coupled(spec);
        auto chain_b = make_coupled(spec);
        for (int t = 0; t < kBaseBurn; ++t) {
            chain_a->step(chain_a->draw_innovation(past_a));
            chain_b->step(chain_b->draw_innovation(past_b));
        }
        double ua = 0.0, ub = 0.0;
        for (int t = 0; t < lag; ++t) {
            const double eps = chain_a->draw_innovation(shared);
            ua = chain_a->step(eps);
            ub = chain_b->step(eps);
        }
        sum += std::pow(std::fabs(ua - ub), alpha);
    }
    return sum / reps;
}

} // namespace

void validate_dgp(const DgpSpec& spec) { validate_inner(spec.value); }

TimeSeries simulate(const DgpSpec& spec, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("simulate: need n >= 2");
    validate_dgp(spec);
    Rng rng(seed);
    return TimeSeries(simulate_inner(spec.value, n, rng));
}

CouplingReport gmc_coupling_estimate(const DgpSpec& spec, double alpha, int max_n,
                                     int reps, std::uint64_t seed) {
    if (alpha != 1.0 && alpha != 2.0 && alpha != 4.0 && alpha != 8.0)
        throw std::invalid_argument("gmc_coupling_estimate: alpha must be 1, 2, 4 or 8");
    if (max_n < 10) throw std::invalid_argument("gmc_coupling_estimate: need max_n >= 10");
    if (reps < 100) throw std::invalid_argument("gmc_coupling_estimate: need reps >= 100");
    validate_dgp(spec);
    make_coupled(spec.value); // reject unsupported composites up front

    CouplingReport rep;
    rep.alpha = alpha;
    rep.lags.resize(max_n);
    rep.moments.assign(max_n, 0.0);
    for (int lag = 1; lag <= max_n; ++lag) rep.lags[lag - 1] = lag;

    // Lags are independent experiments; split them across threads.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(max_n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int idx = static_cast<int>(w); idx < max_n; idx += static_cast<int>(workers))
                rep.moments[idx] =
                    coupling_moment(spec.value, alpha, idx + 1, reps, seed, idx);
        });
    }
    for (auto& t : pool) t.join();

    constexpr double kFloor = 1e-12;
    std::vector<double> xs, ys;
    for (int i = 0; i < max_n; ++i) {
        if (rep.moments[i] > kFloor) {
            xs.push_back(rep.lags[i]);
            ys.push_back(std::log(rep.moments[i]));
        }
    }

    if (xs.size() < 3) {
        rep.exact_coupling = true;
        rep.slope = std::numeric_limits<double>::quiet_NaN();
        rep.slope_se = std::numeric_limits<double>::quiet_NaN();
        rep.rho_hat = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }

    const std::size_t L = xs.size();
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= L;
    ybar /= L;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    const double slope = sxy / sxx;
    const double intercept = ybar - slope * xbar;
    double rss = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
        const double r = ys[i] - intercept - slope * xs[i];
        rss += r * r;
    }
    rep.slope = slope;
    rep.slope_se = std::sqrt(rss / (static_cast<double>(L) - 2.0) / sxx);
    rep.rho_hat = std::exp(slope);
    return rep;
}

} // namespace wn
