#include "wn/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace wn {

namespace {

double kernel_raw(KernelKind kind, double x) {
    const double a = std::fabs(x);
    if (a > 1.0) return 0.0;
    switch (kind) {
        case KernelKind::truncated:
            return 1.0;
        case KernelKind::bartlett:
            return 1.0 - a;
        case KernelKind::parzen:
            if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
            return 2.0 * (1.0 - a) * (1.0 - a) * (1.0 - a);
        case KernelKind::tukey_hanning:
            return 0.5 * (1.0 + std::cos(M_PI * a));
    }
    throw std::logic_error("kernel_raw: unreachable");
}

// Adaptive Simpson with step-halving, used once per process to evaluate the
// Parzen norms (the other kernels have simple closed forms).
double simpson_step(double (*f)(double), double a, double b,
                    double fa, double fm, double fb, double whole,
                    double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(double (*f)(double), double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

double parzen_sq(double x) {
    const double v = kernel_raw(KernelKind::parzen, x);
    return v * v;
}

double parzen_4th(double x) {
    const double v = kernel_raw(KernelKind::parzen, x);
    return v * v * v * v;
}

std::pair<double, double> parzen_norms() {
    // Integrate each piece separately; the integrand has a kink at 1/2.
    static const double c = adaptive_simpson(parzen_sq, 0.0, 0.5, 1e-12) +
                            adaptive_simpson(parzen_sq, 0.5, 1.0, 1e-12);
    static const double d = adaptive_simpson(parzen_4th, 0.0, 0.5, 1e-12) +
                            adaptive_simpson(parzen_4th, 0.5, 1.0, 1e-12);
    return {c, d};
}

} // namespace

KernelSpec make_kernel(KernelKind kind) {
    switch (kind) {
        case KernelKind::truncated:
            return {kind, 1.0, 1.0};
        case KernelKind::bartlett:
            return {kind, 1.0 / 3.0, 1.0 / 5.0};
        case KernelKind::parzen: {
            auto [c, d] = parzen_norms();
            return {kind, c, d};
        }
        case KernelKind::tukey_hanning:
            // int_0^1 ((1+cos pi x)/2)^2 = 3/8, int_0^1 (...)^4 = 35/128
            return {kind, 3.0 / 8.0, 35.0 / 128.0};
    }
    throw std::invalid_argument("make_kernel: unknown kernel kind");
}

KernelSpec kernel_from_name(const std::string& name) {
    if (name == "truncated") return make_kernel(KernelKind::truncated);
    if (name == "bartlett") return make_kernel(KernelKind::bartlett);
    if (name == "parzen") return make_kernel(KernelKind::parzen);
    if (name == "tukey" || name == "tukey_hanning")
        return make_kernel(KernelKind::tukey_hanning);
    throw std::invalid_argument("unknown kernel name: " + name);
}

std::string kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::truncated: return "truncated";
        case KernelKind::bartlett: return "bartlett";
        case KernelKind::parzen: return "parzen";
        case KernelKind::tukey_hanning: return "tukey";
    }
    return "unknown";
}

double kernel_value(const KernelSpec& k, double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("kernel_value: x must be finite");
    return kernel_raw(k.kind, x);
}

std::pair<double, double> kernel_constants(const KernelSpec& k) {
    return {k.c_k, k.d_k};
}

std::pair<double, double> finite_sample_norms(const KernelSpec& k, int n, int m) {
    if (n < 3) throw std::invalid_argument("finite_sample_norms: n must be >= 3");
    if (m < 1 || m >= n)
        throw std::invalid_argument("finite_sample_norms: require 1 <= m < n");
    const double dn = static_cast<double>(n);
    double cn = 0.0, dnk = 0.0;
    for (int j = 1; j <= n - 1; ++j) {
        const double kv = kernel_raw(k.kind, static_cast<double>(j) / m);
        if (kv == 0.0) continue;
        const double k2 = kv * kv;
        cn += (1.0 - j / dn) * k2;
        if (j <= n - 2)
            dnk += (1.0 - j / dn) * (1.0 - (j + 1) / dn) * k2 * k2;
    }
    return {cn, dnk};
}

} // namespace wn
