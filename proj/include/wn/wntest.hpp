#pragma once

#include <span>

#include "wn/kernels.hpp"
#include "wn/series.hpp"

namespace wn {

enum class TestMode {
    finite_sample, // center/scale by C_n(K), D_n(K)
    asymptotic,    // center/scale by m C(K), m D(K)
    chi_square,    // Box-Pierce chi-square reference
};

struct TestOutcome {
    double raw = 0.0;     // T_n or Q_n, unscaled by n
    double scaled = 0.0;  // n * raw
    double z_or_q = 0.0;  // standardized normal statistic, or chi-square statistic
    double p_value = 1.0;
    int m = 0;
    KernelKind kernel = KernelKind::bartlett;
    TestMode mode = TestMode::finite_sample;
    int df = 0;           // chi-square only
    int n = 0;
};

// Kernel-weighted portmanteau statistic
//   T_n = sum_{j=1}^{n-1} K^2(j/m) rho(j)^2,
// standardized as z = (n T_n - A) / sqrt(2 B) with (A, B) = (C_n(K), D_n(K))
// in finite-sample mode or (m C(K), m D(K)) in asymptotic mode; one-sided
// upper-tail p-value. Requires 1 <= m < n.
TestOutcome hong_test(const TimeSeries& x, const KernelSpec& k, int m,
                      TestMode mode = TestMode::finite_sample, bool demean = true);

// Q = n sum_{j=1}^m rho(j)^2 against chi-square with m - df_adjust degrees of
// freedom. Requires m < n and df_adjust < m.
TestOutcome box_pierce_test(const TimeSeries& x, int m, int df_adjust = 0,
                            bool demean = true);

// 1 - Phi(z) for the standard normal.
double normal_sf(double z);

// Upper tail of chi-square with df degrees of freedom, via the regularized
// incomplete gamma function. Throws on negative x.
double chi2_sf(double x, int df);

// Noncentrality mu(K) = 2 pi int g^2(w) dw / sqrt(2 D(K)) for a local
// alternative f = (2 pi)^{-1} + a_n g. g is tabulated on a uniform closed
// grid over [-pi, pi] and must integrate to ~0 (tolerance 1e-6).
double local_noncentrality(std::span<const double> g, const KernelSpec& k);

// Default lag truncation ceil(3 n^{1/3}).
int default_lag_truncation(int n);

} // namespace wn
