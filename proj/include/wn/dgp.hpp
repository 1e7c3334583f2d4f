#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "wn/farima.hpp"
#include "wn/series.hpp"

namespace wn {

struct DgpSpec;

enum class InnovationDist { normal, student_t };

// iid innovations, N(0,1) or Student t(nu).
struct IidSpec {
    InnovationDist dist = InnovationDist::normal;
    int nu = 5;
};

// u_t = sigma_t eps_t, sigma_t^2 = omega + a u_{t-1}^2 + b sigma_{t-1}^2,
// eps_t iid N(0,1). Requires a + b < 1.
struct Garch11Spec {
    double omega = 0.05;
    double a = 0.05;
    double b = 0.90;
};

// u_t = eps_t + b eps_{t-1} u_{t-2}, eps_t iid N(0, sigma^2), |b| < 1.
struct BilinearSpec {
    double b = 0.5;
    double sigma = 1.0;
};

// All-pass ARMA(1,1): u_t = phi u_{t-1} + eps_t - eps_{t-1}/phi, |phi| < 1.
// White but dependent.
struct Allpass11Spec {
    double phi = 0.5;
    double sigma = 1.0;
};

// Nonlinear MA: u_t = beta eps_{t-1} eps_{t-2} + eps_t.
struct NlmaSpec {
    double beta = 0.8;
    double sigma = 1.0;
};

// ARMA filter driven by an arbitrary noise process (iid normal when the
// innovation pointer is null).
struct ArmaDgpSpec {
    ArmaParams params;
    std::shared_ptr<const DgpSpec> innovation;
};

// X_t - a X_{t-1} = eps_t - b eps_{t-1} observed at even times, Y_t = X_{2t}:
// a weak ARMA(1,1) in Y with AR coefficient a^2.
struct SubsampledArmaSpec {
    double a = 0.9;
    double b = 0.3;
};

// X_t = eps_t - phi eps_{t-1} with |phi| > 1 (noncausal MA(1)); X admits a
// causal MA(1) representation driven by weak white noise.
struct NoncausalMa1Spec {
    double phi = 2.0;
};

// FARIMA(p, d, q) generated through its truncated MA(infinity) expansion.
struct FarimaDgpSpec {
    FarimaParams params;
    std::shared_ptr<const DgpSpec> innovation;
};

using DgpVariant = std::variant<IidSpec, Garch11Spec, BilinearSpec, Allpass11Spec,
                                NlmaSpec, ArmaDgpSpec, SubsampledArmaSpec,
                                NoncausalMa1Spec, FarimaDgpSpec>;

struct DgpSpec {
    DgpVariant value;
};

// Throws std::invalid_argument when any parameter constraint is violated
// (recursively for composite specs).
void validate_dgp(const DgpSpec& spec);

// Deterministic given (spec, n, seed). Recursive variants discard a burn-in
// of max(1000, 50 * memory) samples; FARIMA uses a truncated MA(infinity)
// window of 5000 weights.
TimeSeries simulate(const DgpSpec& spec, int n, std::uint64_t seed);

struct CouplingReport {
    double alpha = 2.0;
    std::vector<int> lags;
    std::vector<double> moments; // estimated E|u_n - u'_n|^alpha per lag
    bool exact_coupling = false;
    double slope = 0.0;          // fitted log-linear decay rate
    double slope_se = 0.0;
    double rho_hat = 0.0;        // exp(slope)
};

// Empirical geometric-moment-contraction check: for each lag, couples two
// copies of the process that share innovations from time 1 on but have
// independent pre-sample pasts, and estimates E|u_n - u'_n|^alpha. A
// least-squares line through log-moments over lags with moment > 1e-12
// certifies exponential forgetting when its slope is negative; processes
// whose coupled difference vanishes beyond a short prefix (< 3 usable lags)
// are reported as exactly coupling. Supported for the primitive noise
// processes (iid, garch11, bilinear, allpass11, nlma); alpha must be one of
// {1, 2, 4, 8}, max_n >= 10, reps >= 100.
CouplingReport gmc_coupling_estimate(const DgpSpec& spec, double alpha, int max_n,
                                     int reps, std::uint64_t seed);

} // namespace wn
