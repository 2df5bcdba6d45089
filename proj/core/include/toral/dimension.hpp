#pragma once

#include <array>
#include <vector>

namespace toral {

// Branch thresholds of the uniform-recurrence dimension formula.
double first_threshold();   // 3 - 2 sqrt 2
double second_threshold();  // 2 - sqrt 3

// Hausdorff dimension of the uniformly recurrent set, piecewise in alpha.
double dim_uniform(double alpha);
// One branch of dim_uniform evaluated anywhere, for continuity checks.
// branch 1: 2(1-a)^2/(1+a)^2, 2: (1-sqrt(2a))^2/a, 3: (1-3a)/(1-a), 4: 0.
double dim_uniform_branch(int branch, double alpha);
// Dimension of the set recurring at infinitely many scales.
double dim_asymptotic(double alpha);

// Critical exponents of the two cover types (epsilon -> 0). Both need
// theta > 1 and blow up at theta = 1; s0_right tends to -infinity there
// for alpha > 0.
double s0_right(double alpha, double theta);
double s0_left(double alpha, double theta);

enum class Cover { Right, Left };

struct ThetaSup {
    double theta = 0;
    double value = 0;
};

// Maximizes the cover exponent over theta in [1/(1-2a), 1/a] by a grid
// followed by golden-section refinement. Throws EmptyRange for a > 1/3.
ThetaSup sup_over_theta(Cover which, double alpha);

// min over the two covers of their suprema; needs 0 < alpha <= 1/3.
double upper_bound_dim(double alpha);

struct CoverParams {
    double alpha = 0;
    double theta_j = 2;
    double epsilon = 0;
    double c1 = 1, c2 = 1, c3 = 1, c4 = 1;
    double lambda = 2.618033988749895;  // expansion rate entering the cylinder counts
};

struct CoverBudget {
    double P = 0;  // free digits of a right cover at depth n
    double Q = 0;  // free digits of a left cover at depth n
    double log_cylinder_count_right = 0;
    double log_cylinder_count_left = 0;
};

// Throws std::invalid_argument for n < 2 or parameters outside their ranges.
CoverBudget cover_budget(const CoverParams& p, long n);

struct ThresholdDiagnostic {
    double alpha = 0;
    double value_left = 0;   // limit from the branch below
    double value_right = 0;  // limit from the branch above
    double d1_left = 0, d1_right = 0, d1_error = 0;
    double d2_left = 0, d2_right = 0, d2_error = 0;
    bool first_jump = false;
    bool second_jump = false;
};

struct DimensionProfile {
    std::vector<double> alpha_grid;
    std::vector<double> values;
    std::array<double, 3> thresholds{};
    std::vector<double> kinks;         // first-derivative jumps
    std::vector<double> second_kinks;  // second-derivative jumps with continuous slope
    std::vector<ThresholdDiagnostic> diagnostics;  // at the two interior thresholds
};

// One-sided difference quotients at step grid_step on both sides of each
// interior threshold. A jump counts when it exceeds ten times the
// discretization error, estimated from the change between steps h and 2h.
DimensionProfile transition_report(double grid_step);

}  // namespace toral
