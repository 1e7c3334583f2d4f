#include "wn/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wn {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
    double dia = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double d = 0.0;
        for (std::size_t k = 0; k < pts[0].size(); ++k) {
            const double diff = pts[i][k] - pts[0][k];
            d += diff * diff;
        }
        dia = std::max(dia, std::sqrt(d));
    }
    return dia;
}

} // namespace

SimplexResult nelder_mead(const ObjectiveFn& f, std::span<const double> start,
                          const SimplexOptions& opt) {
    const int dim = static_cast<int>(start.size());
    if (dim == 0) {
        SimplexResult r;
        r.x = {};
        r.value = f(start);
        r.converged = true;
        r.evals = 1;
        return r;
    }

    const int budget = opt.max_evals_per_dim * dim;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(std::span<const double>(x));
    };

    std::vector<std::vector<double>> pts(dim + 1, std::vector<double>(start.begin(), start.end()));
    for (int i = 0; i < dim; ++i)
        pts[i + 1][i] += opt.initial_step;
    std::vector<double> vals(dim + 1);
    for (int i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), cand(dim);

    bool converged = false;
    while (evals < budget) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

        if (simplex_diameter(pts) < opt.diameter_tol) {
            converged = true;
            break;
        }

        const std::size_t best = order[0];
        const std::size_t second_worst = order[dim - 1];
        const std::size_t worst = order[dim];

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (int i = 0; i <= dim; ++i) {
            if (static_cast<std::size_t>(i) == worst) continue;
            for (int k = 0; k < dim; ++k) centroid[k] += pts[i][k];
        }
        for (int k = 0; k < dim; ++k) centroid[k] /= dim;

        for (int k = 0; k < dim; ++k)
            cand[k] = centroid[k] + opt.reflect * (centroid[k] - pts[worst][k]);
        const double refl = eval(cand);

        if (refl < vals[best]) {
            std::vector<double> exp_pt(dim);
            for (int k = 0; k < dim; ++k)
                exp_pt[k] = centroid[k] + opt.expand * (centroid[k] - pts[worst][k]);
            const double expv = eval(exp_pt);
            if (expv < refl) {
                pts[worst] = exp_pt;
                vals[worst] = expv;
            } else {
                pts[worst] = cand;
                vals[worst] = refl;
            }
        } else if (refl < vals[second_worst]) {
            pts[worst] = cand;
            vals[worst] = refl;
        } else {
            // Contract toward the better of worst/reflected.
            const bool outside = refl < vals[worst];
            std::vector<double> con(dim);
            for (int k = 0; k < dim; ++k) {
                const double target = outside ? cand[k] : pts[worst][k];
                con[k] = centroid[k] + opt.contract * (target - centroid[k]);
            }
            const double conv = eval(con);
            if (conv < std::min(refl, vals[worst])) {
                pts[worst] = con;
                vals[worst] = conv;
            } else {
                for (int i = 0; i <= dim; ++i) {
                    if (static_cast<std::size_t>(i) == best) continue;
                    for (int k = 0; k < dim; ++k)
                        pts[i][k] = pts[best][k] + opt.shrink * (pts[i][k] - pts[best][k]);
                    vals[i] = eval(pts[i]);
                    if (evals >= budget) break;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[best]) best = i;

    SimplexResult r;
    r.x = pts[best];
    r.value = vals[best];
    r.converged = converged;
    r.evals = evals;
    return r;
}

SimplexResult multi_start_nelder_mead(const ObjectiveFn& f,
                                      const std::vector<std::vector<double>>& starts,
                                      const SimplexOptions& opt) {
    if (starts.empty())
        throw std::invalid_argument("multi_start_nelder_mead: need at least one start");
    SimplexResult best;
    best.value = std::numeric_limits<double>::infinity();
    bool have = false;
    for (const auto& s : starts) {
        SimplexResult r = nelder_mead(f, std::span<const double>(s), opt);
        if (!have || r.value < best.value) {
            best = r;
            have = true;
        }
    }
    return best;
}

} // namespace wn
