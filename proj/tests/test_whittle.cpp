#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "wn/dgp.hpp"
#include "wn/rng.hpp"
#include "wn/whittle.hpp"

using namespace wn;

namespace {

DgpSpec farima_dgp(double d, std::shared_ptr<const DgpSpec> innovation = nullptr) {
    FarimaDgpSpec f;
    f.params = {d, {}};
    f.innovation = std::move(innovation);
    DgpSpec spec;
    spec.value = f;
    return spec;
}

double whittle_objective(const TimeSeries& y, const FarimaParams& theta) {
    const int n = static_cast<int>(y.size());
    const int nfreq = (n - 1) / 2;
    const Periodogram pg = periodogram(y, false);
    double ratio = 0.0, logg = 0.0;
    for (int j = 0; j < nfreq; ++j) {
        const double g = spectral_shape(theta, pg.freq[j]);
        ratio += pg.ordinate[j] / g;
        logg += std::log(g);
    }
    return std::log(ratio / nfreq) + logg / nfreq;
}

} // namespace

TEST_CASE("spectral shape closed forms") {
    // No memory at all: flat shape.
    for (double lambda : {0.1, 1.0, M_PI})
        CHECK(spectral_shape({0.0, {}}, lambda) == doctest::Approx(1.0).epsilon(1e-14));

    // MA(1) at the Nyquist frequency: |1 + b e^{-i pi}|^2 = (1 - b)^2.
    CHECK(spectral_shape({0.0, {{}, {0.5}}}, M_PI) == doctest::Approx(0.25).epsilon(1e-12));

    // AR(1): 1 / |1 - a e^{-i lambda}|^2.
    const double lambda = 0.7, a = 0.5;
    const double denom = 1.0 - 2.0 * a * std::cos(lambda) + a * a;
    CHECK(spectral_shape({0.0, {{a}, {}}}, lambda) == doctest::Approx(1.0 / denom).epsilon(1e-12));

    // Long-memory pole: g(lambda) lambda^{2d} -> 1 as lambda -> 0.
    const double g = spectral_shape({0.3, {}}, 1e-4);
    CHECK(g * std::pow(1e-4, 0.6) == doctest::Approx(1.0).epsilon(1e-3));

    CHECK_THROWS_AS(spectral_shape({0.3, {}}, 0.0), std::invalid_argument);
}

TEST_CASE("whittle fit is invariant to rescaling") {
    const TimeSeries y = simulate(farima_dgp(0.3), 512, 77);
    std::vector<double> doubled(y.values());
    for (double& v : doubled) v *= 2.0;

    const WhittleFit a = whittle_fit(y, 0, 0);
    const WhittleFit b = whittle_fit(TimeSeries(doubled), 0, 0);
    CHECK(std::fabs(a.params.d - b.params.d) < 1e-6);
}

TEST_CASE("whittle fit preconditions") {
    const TimeSeries y = simulate(farima_dgp(0.3), 128, 3);
    CHECK_THROWS_AS(whittle_fit(y, 0, 0), std::invalid_argument);
}

TEST_CASE("whittle fit of antipersistent data hits the lower d boundary") {
    // First differences of white noise have spectral density ~ lambda^2 near
    // zero, so the best d in [0.01, 0.49] is the boundary itself.
    Rng rng(2);
    std::vector<double> x(1024);
    double prev = rng.normal();
    for (double& v : x) {
        const double cur = rng.normal();
        v = cur - prev;
        prev = cur;
    }
    const WhittleFit fit = whittle_fit(TimeSeries(x), 0, 0);
    CHECK(fit.params.d == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(fit.boundary_warning);
}

TEST_CASE("whittle objective has a local minimum at the truth") {
    int failures = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const TimeSeries y = simulate(farima_dgp(0.3), 4096, mix_seed(9000, seed));
        const double at_truth = whittle_objective(y, {0.3, {}});
        if (whittle_objective(y, {0.4, {}}) < at_truth ||
            whittle_objective(y, {0.2, {}}) < at_truth)
            ++failures;
    }
    CHECK(failures <= 1);
}

TEST_CASE("whittle fit recovers d on moderate samples") {
    const int reps = 30;
    int within = 0;
    for (int r = 0; r < reps; ++r) {
        const TimeSeries y = simulate(farima_dgp(0.3), 1024, mix_seed(500, r));
        const WhittleFit fit = whittle_fit(y, 0, 0);
        if (std::fabs(fit.params.d - 0.3) < 0.08) ++within;
    }
    CHECK(within >= 24);
}

TEST_CASE("whittle fit of a FARIMA(1,d,0) recovers both parameters") {
    const int reps = 20;
    double d_err = 0.0, a_err = 0.0;
    for (int r = 0; r < reps; ++r) {
        FarimaDgpSpec f;
        f.params = {0.3, {{0.5}, {}}};
        DgpSpec spec;
        spec.value = f;
        const TimeSeries y = simulate(spec, 4096, mix_seed(81, r));
        const WhittleFit fit = whittle_fit(y, 1, 0);
        d_err += std::fabs(fit.params.d - 0.3);
        a_err += std::fabs(fit.params.arma.alpha[0] - 0.5);
    }
    CHECK(d_err / reps < 0.08);
    CHECK(a_err / reps < 0.10);
}

TEST_CASE("whittle fit stays consistent under GARCH innovations") {
    // Median absolute error over 100 replications at n = 4096 stays below
    // 0.05 even with conditionally heteroscedastic noise.
    auto inno = std::make_shared<DgpSpec>();
    inno->value = Garch11Spec{0.05, 0.05, 0.90};
    const DgpSpec spec = farima_dgp(0.3, inno);

    const int reps = 100;
    std::vector<double> errs(reps);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= reps) break;
            const TimeSeries y = simulate(spec, 4096, mix_seed(4242, r));
            errs[r] = std::fabs(whittle_fit(y, 0, 0).params.d - 0.3);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::max(1u, std::thread::hardware_concurrency()); ++w)
        pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    std::nth_element(errs.begin(), errs.begin() + reps / 2, errs.end());
    CHECK(errs[reps / 2] < 0.05);
}
