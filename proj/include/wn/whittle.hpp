#pragma once

#include "wn/farima.hpp"
#include "wn/series.hpp"

namespace wn {

// FARIMA spectral shape (up to the innovation variance):
//   g_theta(lambda) = |1 - e^{-i lambda}|^{-2d} |psi(e^{-i lambda})|^2 / |phi(e^{-i lambda})|^2.
// Throws at lambda = 0, where the shape has a pole for d > 0.
double spectral_shape(const FarimaParams& theta, double lambda);

struct WhittleFit {
    FarimaParams params;
    double objective = 0.0;
    bool converged = false;
    bool boundary_warning = false;
};

// Profiled Whittle pseudo-maximum-likelihood fit over
// [d_lo, d_hi] x {delta-stable ARMA}: minimizes
//   L(theta) = log(N^{-1} sum_j I_n(lambda_j) / g_theta(lambda_j))
//            + N^{-1} sum_j log g_theta(lambda_j),
// with N = floor((n-1)/2), multi-started from a grid of d values. The
// innovation scale is concentrated out, so the fit is invariant to
// rescaling y. Requires n >= 200.
WhittleFit whittle_fit(const TimeSeries& y, int p, int q, double delta = 0.01,
                       double d_lo = 0.01, double d_hi = 0.49);

} // namespace wn
