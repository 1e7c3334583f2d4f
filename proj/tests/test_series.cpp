#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "wn/errors.hpp"
#include "wn/rng.hpp"
#include "wn/series.hpp"

using namespace wn;

namespace {

std::vector<double> random_series(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    return x;
}

} // namespace

TEST_CASE("TimeSeries invariants") {
    CHECK_THROWS_AS(TimeSeries({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({1.0, std::nan("")}), std::invalid_argument);
    CHECK(TimeSeries({1.0, 2.0}).size() == 2);
}

TEST_CASE("sample ACF of 1,2,3,4") {
    const TimeSeries x({1, 2, 3, 4});
    const AcfResult acf = sample_acf(x, 1, true);
    CHECK(acf.r0 == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(acf.rho_at(1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(acf.r0 * acf.rho_at(1) == doctest::Approx(0.3125).epsilon(1e-15));
}

TEST_CASE("sample ACF error paths") {
    CHECK_THROWS_AS(sample_acf(TimeSeries({3, 3, 3, 3}), 1, true), DegenerateSeriesError);
    CHECK_THROWS_AS(sample_acf(TimeSeries({1, 2, 3, 4}), 4, true), std::invalid_argument);
    CHECK_THROWS_AS(sample_acf(TimeSeries({1, 2, 3, 4}), 0, true), std::invalid_argument);
    // Constant series without demeaning is fine (r0 = mean square).
    const AcfResult acf = sample_acf(TimeSeries({2, 2, 2, 2}), 1, false);
    CHECK(acf.r0 == doctest::Approx(4.0));
    CHECK(acf.rho_at(1) == doctest::Approx(0.75)); // (3/4) * 4 / 4
}

TEST_CASE("sample ACF matches brute-force reference") {
    const auto x = random_series(300, 11);
    const TimeSeries ts(x);
    for (bool demean : {true, false}) {
        const AcfResult got = sample_acf(ts, 20, demean);
        const oracle::AcfRef want = oracle::acf_reference(x, 20, demean);
        CHECK(got.r0 == doctest::Approx(want.r0).epsilon(1e-12));
        for (int j = 1; j <= 20; ++j)
            CHECK(got.rho_at(j) == doctest::Approx(want.rho[j - 1]).epsilon(1e-12));
    }
}

TEST_CASE("ACF is invariant to location and scale") {
    const auto x = random_series(200, 7);
    std::vector<double> y(x);
    for (double& v : y) v = -2.5 * v + 7.0;
    const AcfResult ax = sample_acf(TimeSeries(x), 10, true);
    const AcfResult ay = sample_acf(TimeSeries(y), 10, true);
    for (int j = 1; j <= 10; ++j)
        CHECK(ax.rho_at(j) == doctest::Approx(ay.rho_at(j)).epsilon(1e-12));
}

TEST_CASE("autocorrelations are bounded by one") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto x = random_series(80, seed);
        const AcfResult acf = sample_acf(TimeSeries(x), 79, true);
        for (double r : acf.rho) CHECK(std::fabs(r) <= 1.0 + 1e-12);
    }
}

TEST_CASE("periodogram of a constant series vanishes") {
    const Periodogram pg = periodogram(TimeSeries({5, 5, 5, 5, 5, 5}), true);
    for (double v : pg.ordinate) CHECK(v == doctest::Approx(0.0).epsilon(1e-25));
}

TEST_CASE("periodogram concentrates a pure tone at its frequency") {
    const int n = 64, k = 5;
    std::vector<double> x(n);
    for (int t = 1; t <= n; ++t) x[t - 1] = std::cos(2.0 * M_PI * t * k / n);
    const Periodogram pg = periodogram(TimeSeries(x), true);
    double peak = 0.0;
    for (int j = 1; j <= n - 1; ++j) {
        if (j == k || j == n - k) {
            peak = std::max(peak, pg.ordinate[j - 1]);
            continue;
        }
        CHECK(pg.ordinate[j - 1] < 1e-10);
    }
    CHECK(peak > 1.0); // n / (8 pi) at the tone
}

TEST_CASE("Parseval identity") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto x = random_series(257, seed);
        const TimeSeries ts(x);
        const Periodogram pg = periodogram(ts, true);
        double sum = 0.0;
        for (double v : pg.ordinate) sum += v;
        sum *= 2.0 * M_PI / static_cast<double>(x.size());
        const AcfResult acf = sample_acf(ts, 1, true);
        CHECK(sum == doctest::Approx(acf.r0).epsilon(1e-10));
    }
}

TEST_CASE("lag-window estimate is flat when the kernel kills every lag") {
    // Bartlett with m = 1 zeroes K(j/m) for every j >= 1, leaving only the
    // lag-zero term 1/(2 pi).
    const TimeSeries x({1, 2, 3, 4});
    const KernelSpec k = make_kernel(KernelKind::bartlett);
    for (double lambda : {0.0, 0.3, 1.0, M_PI})
        CHECK(lag_window_spectrum(x, k, 1, lambda) ==
              doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-15));
}

TEST_CASE("lag-window estimate is even in lambda") {
    const auto x = random_series(128, 9);
    const TimeSeries ts(x);
    const KernelSpec k = make_kernel(KernelKind::parzen);
    for (double lambda : {0.2, 0.9, 2.2})
        CHECK(lag_window_spectrum(ts, k, 10, lambda) ==
              doctest::Approx(lag_window_spectrum(ts, k, 10, -lambda)).epsilon(1e-14));
}

TEST_CASE("quadratic distance of the lag-window estimate equals the weighted sum") {
    // pi int (f - 1/(2pi))^2 over [-pi, pi] vs sum_j K^2(j/m) rho_j^2; the
    // integrand is a trigonometric polynomial, so a 4096-point trapezoid grid
    // integrates it exactly to roundoff.
    const KernelSpec kernels[] = {make_kernel(KernelKind::bartlett),
                                  make_kernel(KernelKind::parzen)};
    const int grid = 4096;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto x = random_series(64, seed);
        const TimeSeries ts(x);
        const KernelSpec& k = kernels[seed % 2];
        const int m = 8;

        double integral = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double w = -M_PI + 2.0 * M_PI * i / grid;
            const double dev = lag_window_spectrum(ts, k, m, w) - 1.0 / (2.0 * M_PI);
            integral += dev * dev;
        }
        integral *= 2.0 * M_PI / grid;

        const AcfResult acf = sample_acf(ts, 63, true);
        double sum = 0.0;
        for (int j = 1; j <= 63; ++j) {
            const double kv = kernel_value(k, static_cast<double>(j) / m);
            sum += kv * kv * acf.rho_at(j) * acf.rho_at(j);
        }
        CHECK(M_PI * integral == doctest::Approx(sum).epsilon(1e-8));
    }
}
