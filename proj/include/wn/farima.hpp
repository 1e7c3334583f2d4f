#pragma once

#include "wn/arma.hpp"

namespace wn {

// FARIMA(p, d, q): (1 - B)^d phi(B) Y_t = psi(B) u_t with d in (0, 1/2).
struct FarimaParams {
    double d = 0.0;
    ArmaParams arma;
};

enum class MeanMode {
    known_zero,
    subtract_sample_mean,
};

// Coefficients of (1 - z)^d: phi_0 = 1, phi_s = phi_{s-1} (s - 1 - d) / s.
// Requires |d| < 1.
std::vector<double> frac_diff_coeffs(double d, int K);

// Power series of phi(z) / psi(z): c_0 = 1,
// c_j = -alpha_j 1(j <= p) - sum_{i=1}^{min(j,q)} beta_i c_{j-i}.
std::vector<double> arma_pi_coeffs(const ArmaParams& params, int K);

// AR(infinity) weights e_k = sum_{j=0}^k c_j(params) phi_{k-j}(d), i.e. the
// series of phi(z) (1 - z)^d / psi(z), so u_t = sum_k e_k Y_{t-k}.
std::vector<double> farima_ar_coeffs(const FarimaParams& theta, int K);

// MA(infinity) weights of psi(z) (1 - z)^{-d} / phi(z); inverse series of
// farima_ar_coeffs.
std::vector<double> farima_ma_coeffs(const FarimaParams& theta, int K);

// Truncated-inversion residuals u_t = sum_{j=0}^{t-1} e_j(theta) y~_{t-j},
// where y~ is y itself (known_zero) or y minus its sample mean.
TimeSeries farima_residuals(const TimeSeries& y, const FarimaParams& theta,
                            MeanMode mean_mode = MeanMode::known_zero);

} // namespace wn
