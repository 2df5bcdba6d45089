#include <cmath>

#include <gtest/gtest.h>

#include "toral/dimension.hpp"
#include "toral/errors.hpp"
#include "toral/oracles.hpp"

using namespace toral;

namespace {

const double kT1 = 3 - 2 * std::sqrt(2.0);
const double kT2 = 2 - std::sqrt(3.0);

}  // namespace

TEST(DimUniform, Examples) {
    EXPECT_EQ(dim_uniform(0.0), 2.0);
    EXPECT_NEAR(dim_uniform(kT1), 1.0, 1e-12);
    EXPECT_NEAR(dim_uniform_branch(1, kT1), 1.0, 1e-12);
    EXPECT_NEAR(dim_uniform_branch(2, kT1), 1.0, 1e-12);
    EXPECT_NEAR(dim_uniform_branch(2, kT2), kT2, 1e-12);
    EXPECT_NEAR(dim_uniform_branch(3, kT2), kT2, 1e-12);
    EXPECT_NEAR(dim_uniform(1.0 / 3.0), 0.0, 1e-15);
    EXPECT_EQ(dim_uniform(0.5), 0.0);
    EXPECT_DOUBLE_EQ(first_threshold(), kT1);
    EXPECT_DOUBLE_EQ(second_threshold(), kT2);
}

TEST(DimUniform, MatchesLongDoubleOracle) {
    for (int i = 0; i <= 10000; ++i) {
        const double a = i / 10000.0;
        EXPECT_NEAR(dim_uniform(a), static_cast<double>(oracle::dim_uniform(a)), 1e-12) << a;
    }
}

TEST(DimUniform, ContinuousAndNonIncreasing) {
    double prev = dim_uniform(0.0);
    for (int i = 1; i <= 10000; ++i) {
        const double v = dim_uniform(i / 10000.0);
        EXPECT_LE(v, prev + 1e-15);
        EXPECT_LT(prev - v, 2e-3);  // steepest slope is about -14
        prev = v;
    }
}

TEST(DimUniform, BelowAsymptotic) {
    for (int i = 0; i <= 1000; ++i) {
        const double a = i / 3000.0;
        EXPECT_LE(dim_uniform(a), dim_asymptotic(a) + 1e-15);
    }
}

TEST(DimAsymptotic, Examples) {
    EXPECT_NEAR(dim_asymptotic(0.5), 4.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(dim_asymptotic(1.0), 1.0);
    EXPECT_DOUBLE_EQ(dim_asymptotic(2.0), 0.5);
    EXPECT_DOUBLE_EQ(dim_asymptotic(0.0), 2.0);
}

TEST(CriticalExponents, Examples) {
    EXPECT_NEAR(s0_right(0.1, 20.0 / 9.0), 1.338843, 1e-6);
    EXPECT_NEAR(s0_right(0.25, 8.0 / 3.0), 0.72, 1e-12);
    EXPECT_NEAR(s0_left(0.25, 3.414214), 0.343146, 1e-6);
    EXPECT_NEAR(s0_left(0.3, 10.0 / 3.0), 0.142857, 1e-6);
    EXPECT_NEAR(s0_left(0.25, 2.0), 0.0, 1e-15);
    EXPECT_LT(s0_left(0.2, 1.0 + 1e-9), -1e6);
    EXPECT_LT(s0_right(0.2, 1.0 + 1e-9), -1e6);
    EXPECT_NEAR(s0_right(0.0, 1.0 + 1e-9), 2.0, 1e-6);
}

TEST(CriticalExponents, RightAtThetaZeroIsFirstBranch) {
    for (int i = 1; i < 100; ++i) {
        const double a = kT1 * i / 100;
        EXPECT_NEAR(s0_right(a, 2 / (1 - a)), dim_uniform_branch(1, a), 1e-12);
    }
}

TEST(SupOverTheta, Examples) {
    const ThetaSup r = sup_over_theta(Cover::Right, 0.1);
    EXPECT_NEAR(r.theta, 20.0 / 9.0, 1e-6);
    EXPECT_NEAR(r.value, 1.338843, 1e-6);
    const ThetaSup l = sup_over_theta(Cover::Left, 0.25);
    EXPECT_NEAR(l.theta, 3.414214, 1e-6);
    EXPECT_NEAR(l.value, 0.343146, 1e-6);
    const ThetaSup e = sup_over_theta(Cover::Left, 0.3);
    EXPECT_NEAR(e.theta, 10.0 / 3.0, 1e-9);
    EXPECT_NEAR(e.value, 0.142857, 1e-6);
    EXPECT_THROW(sup_over_theta(Cover::Left, 0.34), EmptyRange);
    EXPECT_THROW(sup_over_theta(Cover::Right, 0.5), EmptyRange);
}

TEST(UpperBound, MatchesDimUniform) {
    EXPECT_NEAR(upper_bound_dim(0.1), 1.338843, 1e-6);
    EXPECT_NEAR(upper_bound_dim(0.25), 0.343146, 1e-6);
    EXPECT_NEAR(upper_bound_dim(kT1), 1.0, 1e-6);
    for (int i = 1; i <= 100; ++i) {
        const double a = i / 300.0;
        EXPECT_NEAR(upper_bound_dim(a), dim_uniform(a), 1e-6) << a;
    }
}

TEST(CoverBudget, Coefficients) {
    CoverParams p;
    p.alpha = 0.1;
    p.theta_j = 20.0 / 9.0;
    const CoverBudget b1 = cover_budget(p, 1000), b2 = cover_budget(p, 2000);
    const double slope_p = (b2.P - b1.P) / 1000;
    EXPECT_NEAR(slope_p, 1.63636, 1e-5);
    EXPECT_NEAR(b1.P - 1000 * slope_p, 1.0, 1e-9);
    EXPECT_NEAR(slope_p / (1 + p.alpha * p.theta_j), s0_right(p.alpha, p.theta_j), 1e-9);

    p.alpha = 0.25;
    p.theta_j = 3.414214;
    const CoverBudget c1 = cover_budget(p, 1000), c2 = cover_budget(p, 2000);
    const double slope_q = (c2.Q - c1.Q) / 1000;
    EXPECT_NEAR(slope_q, 0.292893, 1e-6);
    EXPECT_NEAR(slope_q / (p.alpha * p.theta_j), 0.343146, 1e-6);

    p.alpha = 0;
    p.theta_j = 2;
    EXPECT_NEAR(cover_budget(p, 37).P, 75.0, 1e-12);
    EXPECT_THROW(cover_budget(p, 1), std::invalid_argument);
}

TEST(CoverBudget, LogCountsAddTheLogFactors) {
    CoverParams p;
    p.alpha = 0.1;
    p.theta_j = 2.5;
    p.c2 = 1.5;
    const long n = 64;
    const CoverBudget b = cover_budget(p, n);
    const double ln = std::log(static_cast<double>(n));
    EXPECT_NEAR(b.log_cylinder_count_right, std::log(p.c2 * ln) + p.c2 * ln * ln + b.P * std::log(p.lambda), 1e-9);
    EXPECT_NEAR(b.log_cylinder_count_left, std::log(p.c2 * ln) + p.c2 * ln * ln + b.Q * std::log(p.lambda), 1e-9);
}

TEST(TransitionReport, FindsBothPhaseTransitions) {
    const DimensionProfile r = transition_report(1e-5);
    ASSERT_EQ(r.diagnostics.size(), 2u);
    EXPECT_NEAR(r.diagnostics[0].value_left, r.diagnostics[0].value_right, 1e-9);
    EXPECT_NEAR(r.diagnostics[1].value_left, r.diagnostics[1].value_right, 1e-9);
    EXPECT_TRUE(r.diagnostics[0].first_jump);
    EXPECT_FALSE(r.diagnostics[1].first_jump);
    EXPECT_TRUE(r.diagnostics[1].second_jump);
    ASSERT_EQ(r.kinks.size(), 1u);
    EXPECT_NEAR(r.kinks[0], kT1, 1e-12);
    ASSERT_EQ(r.second_kinks.size(), 1u);
    EXPECT_NEAR(r.second_kinks[0], kT2, 1e-12);
}
