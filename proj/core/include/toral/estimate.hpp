#pragma once

#include <cstdint>
#include <vector>

#include "toral/algebra.hpp"
#include "toral/shift.hpp"

namespace toral {

// Finite-depth surrogate for uniform recurrence: every N in [M, N_max] needs
// some n <= N with x_{n+i} = x_i for |i| <= ceil(alpha N).
struct ConstraintSpec {
    double alpha = 0;
    int M = 1;
    int N_max = 1;
    double lambda = 2;
};

struct EqualityBlock {
    int N = 0;                // some shift n in [1, N] must witness
    std::int64_t radius = 0;  // agreement needed on |i| <= radius
};

// One entry per N with a positive radius.
std::vector<EqualityBlock> equality_blocks(const ConstraintSpec& c);

// Smallest radius m for which [-m, m] holds every position a witness reads.
std::int64_t minimal_radius(const ConstraintSpec& c);

// Number of admissible windows on [-m, m] for which uniform_recurrence_check
// returns Holds. Throws WindowTooSmall for m < minimal_radius(c).
BigInt count_constrained_windows(const Sft& S, const ConstraintSpec& c, int m);

// Same count by running uniform_recurrence_check on every admissible window.
// Throws BudgetExceeded when d^(2m+1) > 1e8.
BigInt brute_force_oracle(const Sft& S, const ConstraintSpec& c, int m);

struct CountCurve {
    std::vector<int> radii;
    std::vector<double> log_counts;
    double slope = 0;
    double residual = 0;  // root-mean-square residual of the fit
    bool clamped = false;
};

// Least-squares slope of log(count) against m log(lambda) over the largest
// half of the radii, clamped to [0, 2]. Throws DegenerateFit when the fitted
// radii coincide and std::invalid_argument for fewer than 3 points or
// non-positive counts.
CountCurve fit_dimension(const std::vector<int>& radii, const std::vector<BigInt>& counts, double lambda);
CountCurve fit_dimension_logs(const std::vector<int>& radii, const std::vector<double>& log_counts, double lambda);

}  // namespace toral
