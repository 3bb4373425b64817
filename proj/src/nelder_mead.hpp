#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace procyc::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Downhill simplex minimizer. Deterministic: the simplex construction and
/// every operation depend only on the start point and the objective.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, double initial_step,
                                    double f_tol, std::size_t max_evals) {
    const std::size_t dim = start.size();
    const std::size_t m = dim + 1;
    std::vector<std::vector<double>> simplex(m, start);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += initial_step;

    std::vector<double> values(m);
    NelderMeadResult res;
    for (std::size_t i = 0; i < m; ++i) {
        values[i] = f(simplex[i]);
        ++res.evaluations;
    }

    constexpr double refl = 1.0, expa = 2.0, contr = 0.5, shrink = 0.5;
    std::vector<std::size_t> order(m);
    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);

    while (res.evaluations < max_evals) {
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0], worst = order[m - 1], second = order[m - 2];
        if (values[worst] - values[best] <= f_tol) {
            res.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        for (std::size_t d = 0; d < dim; ++d) {
            xr[d] = centroid[d] + refl * (centroid[d] - simplex[worst][d]);
        }
        const double fr = f(xr);
        ++res.evaluations;

        if (fr < values[order[0]]) {
            for (std::size_t d = 0; d < dim; ++d) {
                xe[d] = centroid[d] + expa * (xr[d] - centroid[d]);
            }
            const double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
        } else if (fr < values[second]) {
            simplex[worst] = xr;
            values[worst] = fr;
        } else {
            const bool outside = fr < values[worst];
            const auto& towards = outside ? xr : simplex[worst];
            for (std::size_t d = 0; d < dim; ++d) {
                xc[d] = centroid[d] + contr * (towards[d] - centroid[d]);
            }
            const double fc = f(xc);
            ++res.evaluations;
            if (fc < (outside ? fr : values[worst])) {
                simplex[worst] = xc;
                values[worst] = fc;
            } else {
                for (std::size_t i = 0; i < m; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d) {
                        simplex[i][d] =
                            simplex[best][d] + shrink * (simplex[i][d] - simplex[best][d]);
                    }
                    values[i] = f(simplex[i]);
                    ++res.evaluations;
                }
            }
        }
    }

    const auto it = std::min_element(values.begin(), values.end());
    res.value = *it;
    res.x = simplex[static_cast<std::size_t>(it - values.begin())];
    return res;
}

}  // namespace procyc::detail
