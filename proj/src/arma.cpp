#include "wn/arma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wn/simplex.hpp"

namespace wn {

std::vector<std::complex<double>> polynomial_roots(std::vector<double> coeffs) {
    if (coeffs.empty() || coeffs[0] == 0.0)
        throw std::invalid_argument("polynomial_roots: need nonzero constant term");

    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::fabs(c));
    while (coeffs.size() > 1 && std::fabs(coeffs.back()) < 1e-14 * scale)
        coeffs.pop_back();

    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d == 0) return {};

    // Monic form for the iteration.
    std::vector<std::complex<double>> c(coeffs.begin(), coeffs.end());
    for (auto& v : c) v /= coeffs[d];

    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = c[d];
        for (int i = d - 1; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };

    // Cauchy bound on root moduli seeds the initial circle.
    double bound = 0.0;
    for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(c[i]));
    const double radius = 1.0 + bound;

    std::vector<std::complex<double>> z(d);
    const std::complex<double> rot(0.4, 0.9);
    std::complex<double> cur(radius, 0.0);
    for (int i = 0; i < d; ++i) {
        cur *= rot;
        z[i] = cur;
    }

    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                denom *= z[i] - z[j];
            }
            const std::complex<double> step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-14) break;
    }
    return z;
}

namespace {

double min_root_modulus(const std::vector<double>& poly) {
    const auto roots = polynomial_roots(poly);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) m = std::min(m, std::abs(r));
    return m;
}

std::vector<double> ar_poly(const ArmaParams& params) {
    std::vector<double> c(params.alpha.size() + 1);
    c[0] = 1.0;
    for (std::size_t i = 0; i < params.alpha.size(); ++i) c[i + 1] = -params.alpha[i];
    return c;
}

std::vector<double> ma_poly(const ArmaParams& params) {
    std::vector<double> c(params.beta.size() + 1);
    c[0] = 1.0;
    for (std::size_t i = 0; i < params.beta.size(); ++i) c[i + 1] = params.beta[i];
    return c;
}

// Residual recursion into a caller-provided buffer; returns the sum of
// squares. Hot path of the CSS objective.
double residual_ss(const std::vector<double>& x, std::span<const double> alpha,
                   std::span<const double> beta, std::vector<double>& u) {
    const int n = static_cast<int>(x.size());
    const int p = static_cast<int>(alpha.size());
    const int q = static_cast<int>(beta.size());
    u.resize(n);
    double ss = 0.0;
    for (int t = 0; t < n; ++t) {
        double v = x[t];
        for (int i = 1; i <= p && i <= t; ++i) v -= alpha[i - 1] * x[t - i];
        for (int j = 1; j <= q && j <= t; ++j) v -= beta[j - 1] * u[t - j];
        u[t] = v;
        ss += v * v;
    }
    return ss;
}

} // namespace

StabilityReport check_stability(const ArmaParams& params, double delta) {
    double m = std::numeric_limits<double>::infinity();
    if (params.p() > 0) m = std::min(m, min_root_modulus(ar_poly(params)));
    if (params.q() > 0) m = std::min(m, min_root_modulus(ma_poly(params)));

    StabilityReport rep;
    rep.min_root_modulus = m;
    rep.stable = m >= 1.0 + delta;
    rep.margin = m - (1.0 + delta);
    return rep;
}

TimeSeries arma_residuals(const TimeSeries& x, const ArmaParams& params) {
    const int n = static_cast<int>(x.size());
    if (n <= params.p() + params.q())
        throw std::invalid_argument("arma_residuals: need n > p + q");
    if (check_stability(params, 0.0).min_root_modulus <= 1.0)
        throw std::invalid_argument("arma_residuals: unstable parameters");

    std::vector<double> u;
    residual_ss(x.values(), params.alpha, params.beta, u);
    return TimeSeries(std::move(u));
}

CssFit css_fit_arma(const TimeSeries& x, int p, int q, double delta) {
    if (p < 0 || q < 0)
        throw std::invalid_argument("css_fit_arma: p and q must be nonnegative");
    const int n = static_cast<int>(x.size());
    if (n < 30 * (p + q + 1))
        throw std::invalid_argument("css_fit_arma: need n >= 30 (p + q + 1)");

    const int dim = p + q;
    if (dim == 0) {
        CssFit fit;
        fit.params = ArmaParams{};
        double ss = 0.0;
        for (double v : x.values()) ss += v * v;
        fit.objective = ss;
        fit.converged = true;
        return fit;
    }

    std::vector<double> work;
    auto objective = [&](std::span<const double> theta) {
        ArmaParams cand;
        cand.alpha.assign(theta.begin(), theta.begin() + p);
        cand.beta.assign(theta.begin() + p, theta.end());
        if (!check_stability(cand, delta).stable)
            return std::numeric_limits<double>::infinity();
        return residual_ss(x.values(), cand.alpha, cand.beta, work);
    };

    std::vector<std::vector<double>> starts;
    starts.emplace_back(dim, 0.0);
    starts.emplace_back(dim, 0.3);
    starts.emplace_back(dim, -0.3);
    {
        std::vector<double> alt(dim);
        for (int i = 0; i < dim; ++i) alt[i] = (i % 2 == 0) ? 0.5 : -0.5;
        starts.push_back(std::move(alt));
    }
    std::erase_if(starts, [&](const std::vector<double>& s) {
        return !std::isfinite(objective(std::span<const double>(s)));
    });

    SimplexResult best = multi_start_nelder_mead(objective, starts);

    CssFit fit;
    fit.params.alpha.assign(best.x.begin(), best.x.begin() + p);
    fit.params.beta.assign(best.x.begin() + p, best.x.end());
    fit.objective = best.value;
    fit.converged = best.converged;
    fit.boundary_warning = check_stability(fit.params, delta).margin < 1e-4;
    return fit;
}

std::vector<double> arma_ma_coeffs(const ArmaParams& params, int K) {
    if (K < 0) throw std::invalid_argument("arma_ma_coeffs: K must be >= 0");
    if (!check_stability(params, 0.0).stable)
        throw std::invalid_argument("arma_ma_coeffs: unstable parameters");
    const int p = params.p(), q = params.q();
    std::vector<double> m(K + 1, 0.0);
    m[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        double v = (k <= q) ? params.beta[k - 1] : 0.0;
        for (int i = 1; i <= p && i <= k; ++i) v += params.alpha[i - 1] * m[k - i];
        m[k] = v;
    }
    return m;
}

} // namespace wn
