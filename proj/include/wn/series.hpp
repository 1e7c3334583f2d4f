#pragma once

#include <cstddef>
#include <vector>

#include "wn/kernels.hpp"

namespace wn {

// A real-valued sequence of length >= 2 with all entries finite.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

struct AcfResult {
    double r0 = 0.0;          // lag-0 autocovariance
    std::vector<double> rho;  // rho[j-1] = autocorrelation at lag j
    bool demeaned = true;

    double rho_at(int lag) const { return rho.at(static_cast<std::size_t>(lag) - 1); }
};

// Sample autocovariances R(j) = n^{-1} sum_{t=j+1}^n (x_t - xbar)(x_{t-j} - xbar)
// with xbar = 0 when demean is off, normalized by R(0). Throws
// DegenerateSeriesError when R(0) = 0 and std::invalid_argument when
// max_lag >= n.
AcfResult sample_acf(const TimeSeries& x, int max_lag, bool demean = true);

struct Periodogram {
    std::vector<double> freq;      // lambda_j = 2 pi j / n, j = 1..n-1
    std::vector<double> ordinate;  // I_n(lambda_j)
};

// I_n(lambda_j) = (2 pi n)^{-1} |sum_t (x_t - xbar) e^{-i t lambda_j}|^2 at the
// nonzero Fourier frequencies. Requires n >= 4.
Periodogram periodogram(const TimeSeries& x, bool demean = true);

// Lag-window estimate of the normalized spectral density,
//   f_n(lambda) = (2 pi)^{-1} sum_{|j| < n} K(j/m) rho(j) e^{i j lambda},
// real-valued by symmetry. Requires m < n.
double lag_window_spectrum(const TimeSeries& x, const KernelSpec& k, int m,
                           double lambda, bool demean = true);

} // namespace wn
