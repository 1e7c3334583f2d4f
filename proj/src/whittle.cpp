#include "wn/whittle.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "wn/simplex.hpp"

namespace wn {

namespace {

// |poly(z)|^2 for a real-coefficient polynomial at z on the unit circle.
double abs2_poly(const std::vector<double>& coeffs, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * z + *it;
    return std::norm(acc);
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

} // namespace

double spectral_shape(const FarimaParams& theta, double lambda) {
    if (!std::isfinite(lambda))
        throw std::invalid_argument("spectral_shape: lambda must be finite");
    const double s = 4.0 * std::sin(0.5 * lambda) * std::sin(0.5 * lambda);
    if (s == 0.0)
        throw std::invalid_argument("spectral_shape: pole at lambda = 0");
    const std::complex<double> z(std::cos(lambda), -std::sin(lambda));
    const double num = abs2_poly(ma_poly(theta.arma), z);
    const double den = abs2_poly(ar_poly(theta.arma), z);
    return std::pow(s, -theta.d) * num / den;
}

WhittleFit whittle_fit(const TimeSeries& y, int p, int q, double delta,
                       double d_lo, double d_hi) {
    const int n = static_cast<int>(y.size());
    if (n < 200) throw std::invalid_argument("whittle_fit: need n >= 200");
    if (p < 0 || q < 0)
        throw std::invalid_argument("whittle_fit: p and q must be nonnegative");

    const int nfreq = (n - 1) / 2;
    const Periodogram pg = periodogram(y, false);

    // Per-frequency pieces that do not depend on theta.
    std::vector<double> log_s(nfreq), ordinate(nfreq);
    std::vector<std::complex<double>> zs(nfreq);
    for (int j = 0; j < nfreq; ++j) {
        const double lambda = pg.freq[j];
        const double s = 4.0 * std::sin(0.5 * lambda) * std::sin(0.5 * lambda);
        log_s[j] = std::log(s);
        ordinate[j] = pg.ordinate[j];
        zs[j] = {std::cos(lambda), -std::sin(lambda)};
    }

    auto objective = [&](std::span<const double> theta_vec) {
        const double d = theta_vec[0];
        if (d < d_lo || d > d_hi) return std::numeric_limits<double>::infinity();
        ArmaParams cand;
        cand.alpha.assign(theta_vec.begin() + 1, theta_vec.begin() + 1 + p);
        cand.beta.assign(theta_vec.begin() + 1 + p, theta_vec.end());
        if ((p > 0 || q > 0) && !check_stability(cand, delta).stable)
            return std::numeric_limits<double>::infinity();

        const std::vector<double> num = ma_poly(cand);
        const std::vector<double> den = ar_poly(cand);
        double ratio_sum = 0.0, log_sum = 0.0;
        for (int j = 0; j < nfreq; ++j) {
            double log_g = -d * log_s[j];
            double g = std::exp(log_g);
            if (p > 0 || q > 0) {
                const double arma_part = abs2_poly(num, zs[j]) / abs2_poly(den, zs[j]);
                g *= arma_part;
                log_g += std::log(arma_part);
            }
            ratio_sum += ordinate[j] / g;
            log_sum += log_g;
        }
        return std::log(ratio_sum / nfreq) + log_sum / nfreq;
    };

    std::vector<std::vector<double>> starts;
    for (double d0 : {0.05, 0.15, 0.25, 0.35, 0.45}) {
        if (d0 < d_lo || d0 > d_hi) continue;
        std::vector<double> s(1 + p + q, 0.0);
        s[0] = d0;
        starts.push_back(std::move(s));
    }
    if (starts.empty()) {
        std::vector<double> s(1 + p + q, 0.0);
        s[0] = 0.5 * (d_lo + d_hi);
        starts.push_back(std::move(s));
    }

    SimplexOptions opt;
    SimplexResult best = multi_start_nelder_mead(objective, starts, opt);

    WhittleFit fit;
    fit.params.d = best.x[0];
    fit.params.arma.alpha.assign(best.x.begin() + 1, best.x.begin() + 1 + p);
    fit.params.arma.beta.assign(best.x.begin() + 1 + p, best.x.end());
    fit.objective = best.value;
    fit.converged = best.converged;

    bool boundary = fit.params.d - d_lo < 1e-4 || d_hi - fit.params.d < 1e-4;
    if (p > 0 || q > 0)
        boundary = boundary || check_stability(fit.params.arma, delta).margin < 1e-4;
    fit.boundary_warning = boundary;
    return fit;
}

} // namespace wn
