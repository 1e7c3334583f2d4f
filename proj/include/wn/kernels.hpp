#pragma once

#include <string>
#include <utility>

namespace wn {

// Lag-window kernels used to weight sample autocorrelations. All kernels
// here are symmetric, equal 1 at the origin, are bounded by 1 in absolute
// value and vanish outside [-1, 1].
enum class KernelKind {
    truncated,     // K(x) = 1(|x| <= 1)
    bartlett,      // K(x) = 1 - |x|
    parzen,        // piecewise cubic
    tukey_hanning, // K(x) = (1 + cos(pi x)) / 2
};

// A kernel together with its half-line norms
//   c_k = int_0^inf K^2(x) dx,   d_k = int_0^inf K^4(x) dx,
// which act as centering/scaling constants for the standardized test
// statistics.
struct KernelSpec {
    KernelKind kind;
    double c_k;
    double d_k;
};

KernelSpec make_kernel(KernelKind kind);

// Lowercase name used in CLI/config: "truncated", "bartlett", "parzen",
// "tukey". Throws std::invalid_argument for unknown names.
KernelSpec kernel_from_name(const std::string& name);
std::string kernel_name(KernelKind kind);

// Evaluate K(x). Exactly 0 when |x| > 1; throws on non-finite x.
double kernel_value(const KernelSpec& k, double x);

// (C(K), D(K)) -- the half-line square/fourth-power integrals.
std::pair<double, double> kernel_constants(const KernelSpec& k);

// Finite-sample analogues for sample size n and lag truncation m:
//   C_n(K) = sum_{j=1}^{n-1} (1 - j/n) K^2(j/m)
//   D_n(K) = sum_{j=1}^{n-2} (1 - j/n)(1 - (j+1)/n) K^4(j/m)
// Requires n >= 3 and 1 <= m < n.
std::pair<double, double> finite_sample_norms(const KernelSpec& k, int n, int m);

} // namespace wn
