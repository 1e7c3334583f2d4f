#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wn {

struct SimplexOptions {
    double reflect = 1.0;
    double expand = 2.0;
    double contract = 0.5;
    double shrink = 0.5;
    double diameter_tol = 1e-8;
    int max_evals_per_dim = 2000; // evaluation budget = max_evals_per_dim * dim
    double initial_step = 0.1;
};

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int evals = 0;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

// Derivative-free Nelder-Mead descent. Infeasible regions can be encoded by
// returning +infinity from the objective; the starting point must be feasible.
SimplexResult nelder_mead(const ObjectiveFn& f, std::span<const double> start,
                          const SimplexOptions& opt = {});

// Runs one descent per starting point and keeps the best final value; ties
// are broken by the lowest start index.
SimplexResult multi_start_nelder_mead(const ObjectiveFn& f,
                                      const std::vector<std::vector<double>>& starts,
                                      const SimplexOptions& opt = {});

} // namespace wn
