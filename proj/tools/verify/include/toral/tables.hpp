#pragma once

#include <optional>
#include <vector>

namespace toral {

struct DimensionRow {
    double alpha = 0;
    double dim_uniform = 0;
    double dim_asymptotic = 0;
    double lower = 0;
    std::optional<double> upper;  // empty above 1/3, where no cover range exists
};

DimensionRow dimension_row(double alpha);

// alpha = i * step on [0, 1/3], plus both interior thresholds and 1/3 itself,
// in increasing order.
std::vector<DimensionRow> dimension_rows(double step);

}  // namespace toral
