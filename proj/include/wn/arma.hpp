#pragma once

#include <complex>
#include <vector>

#include "wn/series.hpp"

namespace wn {

// ARMA(p, q) parameters for
//   (1 - a_1 B - ... - a_p B^p) X_t = (1 + b_1 B + ... + b_q B^q) u_t.
struct ArmaParams {
    std::vector<double> alpha; // AR coefficients a_i
    std::vector<double> beta;  // MA coefficients b_j

    int p() const { return static_cast<int>(alpha.size()); }
    int q() const { return static_cast<int>(beta.size()); }
};

struct StabilityReport {
    bool stable = false;
    double min_root_modulus = 0.0; // over both polynomials; +inf when p = q = 0
    double margin = 0.0;           // min_root_modulus - (1 + delta)
};

// Smallest root modulus of the AR and MA polynomials; stable when every root
// has modulus >= 1 + delta.
StabilityReport check_stability(const ArmaParams& params, double delta);

// Residual recursion with zero initial values:
//   u_t = x_t - sum_i a_i x_{t-i} - sum_j b_j u_{t-j}.
// Throws std::invalid_argument when params are unstable or n <= p + q.
TimeSeries arma_residuals(const TimeSeries& x, const ArmaParams& params);

struct CssFit {
    ArmaParams params;
    double objective = 0.0;
    bool converged = false;
    bool boundary_warning = false;
};

// Conditional-sum-of-squares fit: minimizes sum_t u_t(params)^2 over the
// delta-stable region by multi-start Nelder-Mead. Requires
// n >= 30 (p + q + 1).
CssFit css_fit_arma(const TimeSeries& x, int p, int q, double delta = 0.01);

// MA(infinity) weights of psi(z)/phi(z), indices 0..K.
std::vector<double> arma_ma_coeffs(const ArmaParams& params, int K);

// All complex roots of c_0 + c_1 z + ... + c_d z^d (Durand-Kerner iteration).
// Trailing near-zero coefficients are stripped; requires c_0 != 0.
std::vector<std::complex<double>> polynomial_roots(std::vector<double> coeffs);

} // namespace wn
