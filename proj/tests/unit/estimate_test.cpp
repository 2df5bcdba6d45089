#include <cmath>

#include <gtest/gtest.h>

#include "toral/errors.hpp"
#include "toral/estimate.hpp"

using namespace toral;

namespace {

ConstraintSpec spec(double alpha, int M, int N_max, double lambda = 2) { return ConstraintSpec{alpha, M, N_max, lambda}; }

BigInt pow2(int e) { return BigInt(1) << e; }

}  // namespace

TEST(EqualityBlocks, RadiiFollowTheCeiling) {
    const auto blocks = equality_blocks(spec(0.25, 2, 5));
    ASSERT_EQ(blocks.size(), 4u);
    EXPECT_EQ(blocks[0].N, 2);
    EXPECT_EQ(blocks[0].radius, 1);
    EXPECT_EQ(blocks[3].N, 5);
    EXPECT_EQ(blocks[3].radius, 2);
    EXPECT_TRUE(equality_blocks(spec(0, 1, 4)).empty());
    EXPECT_EQ(minimal_radius(spec(2, 1, 1)), 3);
}

TEST(CountConstrained, UnconstrainedFullShift) {
    for (int m = 0; m <= 12; ++m) EXPECT_EQ(count_constrained_windows(full_shift_sft(2), spec(0, 1, 4), m), pow2(2 * m + 1));
}

TEST(CountConstrained, SingleForcedBlock) {
    // One condition, one allowed shift: x_{-1} = x_0 = x_1 = x_2.
    for (int m = 2; m <= 10; ++m) {
        EXPECT_EQ(count_constrained_windows(full_shift_sft(2), spec(1, 1, 1), m), pow2(2 * m - 2)) << m;
    }
    EXPECT_EQ(count_constrained_windows(full_shift_sft(2), spec(2, 1, 1), 3), BigInt(4));
}

TEST(CountConstrained, MatchesOracleOnGoldenMean) {
    const Sft golden = golden_mean_shift();
    const ConstraintSpec c = spec(0.25, 2, 4, golden.lambda);
    EXPECT_EQ(count_constrained_windows(golden, c, 6), brute_force_oracle(golden, c, 6));
}

TEST(CountConstrained, MatchesOracleOnSmallGrid) {
    for (const Sft& S : {full_shift_sft(2), golden_mean_shift(), full_shift_sft(3)}) {
        for (double alpha : {0.0, 0.2, 0.3, 0.7}) {
            for (int N_max = 1; N_max <= 4; ++N_max) {
                const ConstraintSpec c = spec(alpha, 1, N_max, S.lambda);
                const int m0 = static_cast<int>(minimal_radius(c));
                for (int m = m0; m <= m0 + 2; ++m) {
                    if (std::pow(S.gamma.d, 2 * m + 1) > 2e6) break;
                    EXPECT_EQ(count_constrained_windows(S, c, m), brute_force_oracle(S, c, m))
                        << S.gamma.d << " " << alpha << " " << N_max << " " << m;
                }
            }
        }
    }
}

TEST(CountConstrained, MonotoneInAlphaAndNMax) {
    const Sft S = full_shift_sft(2);
    for (int m = 8; m <= 10; ++m) {
        BigInt prev = count_constrained_windows(S, spec(0, 1, 4), m);
        for (double alpha : {0.1, 0.2, 0.3, 0.5, 0.8}) {
            const BigInt c = count_constrained_windows(S, spec(alpha, 1, 4), m);
            EXPECT_LE(c, prev) << alpha;
            prev = c;
        }
        prev = count_constrained_windows(S, spec(0.3, 1, 1), m);
        for (int N_max = 2; N_max <= 5; ++N_max) {
            const BigInt c = count_constrained_windows(S, spec(0.3, 1, N_max), m);
            EXPECT_LE(c, prev) << N_max;
            prev = c;
        }
    }
}

TEST(CountConstrained, Errors) {
    EXPECT_THROW(count_constrained_windows(full_shift_sft(2), spec(2, 1, 1), 2), WindowTooSmall);
    EXPECT_THROW(brute_force_oracle(full_shift_sft(2), spec(0, 1, 1), 14), BudgetExceeded);
    EXPECT_THROW(count_constrained_windows(full_shift_sft(2), spec(0.2, 3, 2), 6), std::invalid_argument);
}

TEST(FitDimension, SyntheticLogLinear) {
    const double lambda = 2.618033988749895;
    std::vector<int> radii;
    std::vector<double> logs;
    for (int m = 1; m <= 12; ++m) {
        radii.push_back(m);
        logs.push_back(1.5 * m * std::log(lambda));
    }
    const CountCurve c = fit_dimension_logs(radii, logs, lambda);
    EXPECT_NEAR(c.slope, 1.5, 1e-9);
    EXPECT_NEAR(c.residual, 0, 1e-9);
    EXPECT_FALSE(c.clamped);
}

TEST(FitDimension, UnconstrainedShiftsHaveFullSlope) {
    std::vector<int> radii;
    std::vector<BigInt> counts;
    for (int m = 1; m <= 20; ++m) {
        radii.push_back(m);
        counts.push_back(pow2(2 * m + 1));
    }
    EXPECT_NEAR(fit_dimension(radii, counts, 2).slope, 2.0, 1e-9);

    const Sft golden = golden_mean_shift();
    radii.clear();
    counts.clear();
    for (int m = 10; m <= 20; ++m) {
        radii.push_back(m);
        counts.push_back(count_constrained_windows(golden, spec(0, 1, 1, golden.lambda), m));
    }
    EXPECT_NEAR(fit_dimension(radii, counts, golden.lambda).slope, 2.0, 0.05);
}

TEST(FitDimension, ClampsAndRejects) {
    const CountCurve steep = fit_dimension_logs({1, 2, 3, 4}, {0, 5, 10, 15}, 2);
    EXPECT_EQ(steep.slope, 2.0);
    EXPECT_TRUE(steep.clamped);
    EXPECT_THROW(fit_dimension_logs({3, 3, 3}, {1, 2, 3}, 2), DegenerateFit);
    EXPECT_THROW(fit_dimension_logs({1, 2}, {1, 2}, 2), std::invalid_argument);
    EXPECT_THROW(fit_dimension({1, 2, 3}, {BigInt(1), BigInt(0), BigInt(2)}, 2), std::invalid_argument);
}
