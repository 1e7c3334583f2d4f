#include "wn/farima.hpp"

#include <cmath>
#include <stdexcept>

namespace wn {

namespace {

// Convolve a short polynomial (degree <= a few) with a long series, keeping
// indices 0..K.
std::vector<double> conv_poly(const std::vector<double>& poly,
                              const std::vector<double>& series, int K) {
    std::vector<double> out(K + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0.0) continue;
        const int top = K - static_cast<int>(i);
        for (int k = 0; k <= top; ++k)
            out[k + i] += poly[i] * series[k];
    }
    return out;
}

} // namespace

std::vector<double> frac_diff_coeffs(double d, int K) {
    if (K < 0) throw std::invalid_argument("frac_diff_coeffs: K must be >= 0");
    if (!(std::fabs(d) < 1.0))
        throw std::invalid_argument("frac_diff_coeffs: require |d| < 1");
    std::vector<double> phi(K + 1);
    phi[0] = 1.0;
    for (int s = 1; s <= K; ++s)
        phi[s] = phi[s - 1] * (s - 1 - d) / s;
    return phi;
}

std::vector<double> arma_pi_coeffs(const ArmaParams& params, int K) {
    if (K < 0) throw std::invalid_argument("arma_pi_coeffs: K must be >= 0");
    if (!check_stability(params, 0.0).stable)
        throw std::invalid_argument("arma_pi_coeffs: unstable parameters");
    const int p = params.p(), q = params.q();
    std::vector<double> c(K + 1, 0.0);
    c[0] = 1.0;
    for (int j = 1; j <= K; ++j) {
        double v = (j <= p) ? -params.alpha[j - 1] : 0.0;
        for (int i = 1; i <= q && i <= j; ++i) v -= params.beta[i - 1] * c[j - i];
        c[j] = v;
    }
    return c;
}

std::vector<double> farima_ar_coeffs(const FarimaParams& theta, int K) {
    if (K < 0) throw std::invalid_argument("farima_ar_coeffs: K must be >= 0");
    if (!check_stability(theta.arma, 0.0).stable)
        throw std::invalid_argument("farima_ar_coeffs: unstable parameters");

    // e(z) = phi(z) (1-z)^d / psi(z): numerator by short convolution, then
    // divide by psi via the MA recursion. Equals the convolution of
    // arma_pi_coeffs with frac_diff_coeffs in O(K (p + q)) time.
    const auto frac = frac_diff_coeffs(theta.d, K);
    std::vector<double> ar_num(theta.arma.p() + 1);
    ar_num[0] = 1.0;
    for (int i = 0; i < theta.arma.p(); ++i) ar_num[i + 1] = -theta.arma.alpha[i];
    std::vector<double> e = conv_poly(ar_num, frac, K);

    const int q = theta.arma.q();
    for (int k = 0; k <= K; ++k)
        for (int i = 1; i <= q && i <= k; ++i)
            e[k] -= theta.arma.beta[i - 1] * e[k - i];
    return e;
}

std::vector<double> farima_ma_coeffs(const FarimaParams& theta, int K) {
    if (K < 0) throw std::invalid_argument("farima_ma_coeffs: K must be >= 0");
    if (!check_stability(theta.arma, 0.0).stable)
        throw std::invalid_argument("farima_ma_coeffs: unstable parameters");

    // a(z) = psi(z) (1-z)^{-d} / phi(z); (1-z)^{-d} has coefficients
    // b_0 = 1, b_k = b_{k-1} (k - 1 + d) / k.
    std::vector<double> frac_inv(K + 1);
    frac_inv[0] = 1.0;
    for (int k = 1; k <= K; ++k)
        frac_inv[k] = frac_inv[k - 1] * (k - 1 + theta.d) / k;

    std::vector<double> ma_num(theta.arma.q() + 1);
    ma_num[0] = 1.0;
    for (int i = 0; i < theta.arma.q(); ++i) ma_num[i + 1] = theta.arma.beta[i];
    std::vector<double> a = conv_poly(ma_num, frac_inv, K);

    const int p = theta.arma.p();
    for (int k = 0; k <= K; ++k)
        for (int i = 1; i <= p && i <= k; ++i)
            a[k] += theta.arma.alpha[i - 1] * a[k - i];
    return a;
}

TimeSeries farima_residuals(const TimeSeries& y, const FarimaParams& theta,
                            MeanMode mean_mode) {
    const int n = static_cast<int>(y.size());
    if (n < 10) throw std::invalid_argument("farima_residuals: need n >= 10");

    double mean = 0.0;
    if (mean_mode == MeanMode::subtract_sample_mean) {
        for (double v : y.values()) mean += v;
        mean /= n;
    }

    const auto e = farima_ar_coeffs(theta, n - 1);
    std::vector<double> u(n, 0.0);
    for (int t = 1; t <= n; ++t) {
        double v = 0.0;
        for (int j = 0; j <= t - 1; ++j)
            v += e[j] * (y[t - 1 - j] - mean);
        u[t - 1] = v;
    }
    return TimeSeries(std::move(u));
}

} // namespace wn
