#include "toral/tables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toral/dimension.hpp"
#include "toral/layout.hpp"

namespace toral {

DimensionRow dimension_row(double alpha) {
    DimensionRow r;
    r.alpha = alpha;
    r.dim_uniform = dim_uniform(alpha);
    r.dim_asymptotic = dim_asymptotic(alpha);
    r.lower = optimal_theta_lower(alpha).dim;
    if (alpha == 0) {
        r.upper = 2.0;  // every theta gives a right-cover exponent of 2
    } else if (alpha <= 1.0 / 3.0) {
        r.upper = upper_bound_dim(alpha);
    }
    return r;
}

std::vector<DimensionRow> dimension_rows(double step) {
    if (!(step > 0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
    const double end = 1.0 / 3.0;
    std::vector<double> alphas{first_threshold(), second_threshold(), end};
    for (long i = 0;; ++i) {
        const double a = step * static_cast<double>(i);
        if (a > end) break;
        alphas.push_back(a);
    }
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    std::vector<DimensionRow> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) rows.push_back(dimension_row(a));
    return rows;
}

}  // namespace toral
