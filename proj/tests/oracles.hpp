// Reference implementations used only to generate expected values in tests.
// Deliberately independent of the library code paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Romberg integration on [a, b]; assumes f smooth on the interval.
inline double romberg(const std::function<double(double)>& f, double a, double b,
                      int max_level = 22, double tol = 1e-13) {
    std::vector<std::vector<double>> r(1, std::vector<double>(1));
    r[0][0] = 0.5 * (b - a) * (f(a) + f(b));
    double h = b - a;
    for (int i = 1; i < max_level; ++i) {
        h *= 0.5;
        double sum = 0.0;
        const long pts = 1L << (i - 1);
        for (long k = 1; k <= pts; ++k) sum += f(a + (2 * k - 1) * h);
        r.emplace_back(i + 1);
        r[i][0] = 0.5 * r[i - 1][0] + h * sum;
        double pow4 = 1.0;
        for (int j = 1; j <= i; ++j) {
            pow4 *= 4.0;
            r[i][j] = (pow4 * r[i][j - 1] - r[i - 1][j - 1]) / (pow4 - 1.0);
        }
        if (i > 3 && std::fabs(r[i][i] - r[i - 1][i - 1]) < tol) return r[i][i];
    }
    return r.back().back();
}

// Literal textbook autocorrelations, O(n * max_lag).
struct AcfRef {
    double r0;
    std::vector<double> rho;
};

inline AcfRef acf_reference(const std::vector<double>& x, int max_lag, bool demean) {
    const int n = static_cast<int>(x.size());
    double mean = 0.0;
    if (demean) {
        for (double v : x) mean += v;
        mean /= n;
    }
    double r0 = 0.0;
    for (double v : x) r0 += (v - mean) * (v - mean);
    r0 /= n;
    AcfRef out{r0, {}};
    for (int j = 1; j <= max_lag; ++j) {
        double rj = 0.0;
        for (int t = j + 1; t <= n; ++t)
            rj += (x[t - 1] - mean) * (x[t - j - 1] - mean);
        out.rho.push_back(rj / n / r0);
    }
    return out;
}

// Chi-square upper tail for even df via the closed-form Poisson sum,
// and for df = 1 via erfc.
inline double chi2_sf_closed(double x, int df) {
    if (df == 1) return std::erfc(std::sqrt(0.5 * x));
    // even df: Q = exp(-x/2) sum_{i=0}^{df/2-1} (x/2)^i / i!
    double term = 1.0, sum = 1.0;
    for (int i = 1; i < df / 2; ++i) {
        term *= 0.5 * x / i;
        sum += term;
    }
    return std::exp(-0.5 * x) * sum;
}

} // namespace oracle
