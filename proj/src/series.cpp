#include "wn/series.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "wn/errors.hpp"

namespace wn {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2)
        throw std::invalid_argument("TimeSeries: need at least 2 observations");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("TimeSeries: all entries must be finite");
}

AcfResult sample_acf(const TimeSeries& x, int max_lag, bool demean) {
    const int n = static_cast<int>(x.size());
    if (max_lag < 1 || max_lag >= n)
        throw std::invalid_argument("sample_acf: require 1 <= max_lag <= n-1");

    double mean = 0.0;
    if (demean) {
        for (double v : x.values()) mean += v;
        mean /= n;
    }

    std::vector<double> dev(x.values());
    for (double& v : dev) v -= mean;

    double r0 = 0.0;
    for (double v : dev) r0 += v * v;
    r0 /= n;
    if (r0 <= 0.0)
        throw DegenerateSeriesError("sample_acf: zero lag-0 autocovariance");

    AcfResult out;
    out.r0 = r0;
    out.demeaned = demean;
    out.rho.resize(max_lag);
    for (int j = 1; j <= max_lag; ++j) {
        double rj = 0.0;
        for (int t = j; t < n; ++t) rj += dev[t] * dev[t - j];
        out.rho[j - 1] = rj / n / r0;
    }
    return out;
}

Periodogram periodogram(const TimeSeries& x, bool demean) {
    const int n = static_cast<int>(x.size());
    if (n < 4) throw std::invalid_argument("periodogram: need n >= 4");

    double mean = 0.0;
    if (demean) {
        for (double v : x.values()) mean += v;
        mean /= n;
    }

    // One table of n-th roots of unity keeps each twiddle accurate to a ulp;
    // exponents are reduced mod n.
    std::vector<std::complex<double>> w(n);
    for (int k = 0; k < n; ++k) {
        const double ang = -2.0 * M_PI * k / n;
        w[k] = {std::cos(ang), std::sin(ang)};
    }

    Periodogram out;
    out.freq.resize(n - 1);
    out.ordinate.resize(n - 1);
    const double norm = 1.0 / (2.0 * M_PI * n);
    for (int j = 1; j <= n - 1; ++j) {
        std::complex<double> sum = 0.0;
        long idx = 0;
        for (int t = 1; t <= n; ++t) {
            idx += j;
            if (idx >= n) idx -= n;
            sum += (x[t - 1] - mean) * w[idx];
        }
        out.freq[j - 1] = 2.0 * M_PI * j / n;
        out.ordinate[j - 1] = std::norm(sum) * norm;
    }
    return out;
}

double lag_window_spectrum(const TimeSeries& x, const KernelSpec& k, int m,
                           double lambda, bool demean) {
    const int n = static_cast<int>(x.size());
    if (m < 1 || m >= n)
        throw std::invalid_argument("lag_window_spectrum: require 1 <= m < n");

    // K has support [-1, 1], so lags beyond min(m, n-1) contribute nothing.
    const int top = std::min(m, n - 1);
    const AcfResult acf = sample_acf(x, top, demean);

    double sum = 1.0;
    for (int j = 1; j <= top; ++j) {
        const double kv = kernel_value(k, static_cast<double>(j) / m);
        if (kv == 0.0) continue;
        sum += 2.0 * kv * acf.rho[j - 1] * std::cos(j * lambda);
    }
    return sum / (2.0 * M_PI);
}

} // namespace wn
