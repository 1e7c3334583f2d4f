#include "wn/wntest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wn {

namespace {

constexpr double kPValueFloor = 1e-16;

double clamp_p(double p) {
    return std::min(1.0, std::max(kPValueFloor, p));
}

// Regularized lower incomplete gamma P(a, x) by series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction (x >= a + 1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double normal_sf(double z) {
    if (!std::isfinite(z))
        throw std::invalid_argument("normal_sf: z must be finite");
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double chi2_sf(double x, int df) {
    if (x < 0.0) throw std::invalid_argument("chi2_sf: x must be nonnegative");
    if (df < 1) throw std::invalid_argument("chi2_sf: df must be positive");
    if (x == 0.0) return 1.0;
    const double a = 0.5 * df;
    const double hx = 0.5 * x;
    if (hx < a + 1.0) return 1.0 - gamma_p_series(a, hx);
    return gamma_q_cf(a, hx);
}

int default_lag_truncation(int n) {
    return static_cast<int>(std::ceil(3.0 * std::cbrt(static_cast<double>(n))));
}

TestOutcome hong_test(const TimeSeries& x, const KernelSpec& k, int m,
                      TestMode mode, bool demean) {
    const int n = static_cast<int>(x.size());
    if (m < 1 || m >= n)
        throw std::invalid_argument("hong_test: require 1 <= m < n");
    if (mode == TestMode::chi_square)
        throw std::invalid_argument("hong_test: use box_pierce_test for the chi-square reference");

    const int top = std::min(m, n - 1);
    const AcfResult acf = sample_acf(x, top, demean);

    double raw = 0.0;
    for (int j = 1; j <= top; ++j) {
        const double kv = kernel_value(k, static_cast<double>(j) / m);
        raw += kv * kv * acf.rho[j - 1] * acf.rho[j - 1];
    }

    double center, spread;
    if (mode == TestMode::finite_sample) {
        auto [cn, dn] = finite_sample_norms(k, n, m);
        center = cn;
        spread = dn;
    } else {
        auto [c, d] = kernel_constants(k);
        center = m * c;
        spread = m * d;
    }
    if (!(spread > 0.0))
        throw std::invalid_argument(
            "hong_test: kernel weight vanishes at every lag for this m; increase m");

    TestOutcome out;
    out.raw = raw;
    out.scaled = n * raw;
    out.z_or_q = (out.scaled - center) / std::sqrt(2.0 * spread);
    out.p_value = clamp_p(normal_sf(out.z_or_q));
    out.m = m;
    out.kernel = k.kind;
    out.mode = mode;
    out.n = n;
    return out;
}

TestOutcome box_pierce_test(const TimeSeries& x, int m, int df_adjust, bool demean) {
    const int n = static_cast<int>(x.size());
    if (m < 1 || m >= n)
        throw std::invalid_argument("box_pierce_test: require 1 <= m < n");
    if (df_adjust < 0 || df_adjust >= m)
        throw std::invalid_argument("box_pierce_test: require 0 <= df_adjust < m");

    const AcfResult acf = sample_acf(x, m, demean);
    double raw = 0.0;
    for (int j = 1; j <= m; ++j) raw += acf.rho[j - 1] * acf.rho[j - 1];

    TestOutcome out;
    out.raw = raw;
    out.scaled = n * raw;
    out.z_or_q = out.scaled;
    out.df = m - df_adjust;
    out.p_value = clamp_p(chi2_sf(out.scaled, out.df));
    out.m = m;
    out.kernel = KernelKind::truncated;
    out.mode = TestMode::chi_square;
    out.n = n;
    return out;
}

double local_noncentrality(std::span<const double> g, const KernelSpec& k) {
    if (g.size() < 3)
        throw std::invalid_argument("local_noncentrality: need at least 3 grid points");
    const std::size_t n = g.size();
    const double h = 2.0 * M_PI / static_cast<double>(n - 1);

    double integral = 0.0, integral_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        integral += w * g[i];
        integral_sq += w * g[i] * g[i];
    }
    integral *= h;
    integral_sq *= h;

    if (std::fabs(integral) > 1e-6)
        throw std::invalid_argument("local_noncentrality: g must integrate to zero over [-pi, pi]");

    return 2.0 * M_PI * integral_sq / std::sqrt(2.0 * k.d_k);
}

} // namespace wn
