#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "toral/errors.hpp"
#include "toral/layout.hpp"
#include "toral/oracles.hpp"

using namespace toral;

namespace {

LayoutParams params(const Rational& alpha, const Rational& theta, int K, LayoutMode mode = LayoutMode::Idealized) {
    LayoutParams p;
    p.alpha = alpha;
    p.theta = theta;
    p.n1 = theta;
    p.K = K;
    p.mode = mode;
    return p;
}

double d(const Rational& r) { return to_double(r); }

const Rational kAlphaNo(1, 10), kThetaNo(20, 9);
const Rational kAlphaOv(1, 4);
const Rational kThetaOv = parse_rational("3.414214");

}  // namespace

TEST(ClassifyRegime, Examples) {
    EXPECT_EQ(classify_regime(kAlphaNo, kThetaNo).tag, RegimeTag::NoOverlap);
    const Regime ov = classify_regime(kAlphaOv, kThetaOv);
    EXPECT_EQ(ov.tag, RegimeTag::OverlapDisjointLeft);
    EXPECT_TRUE(ov.holds(Condition::C3));
    EXPECT_TRUE(ov.holds(Condition::C4));
    EXPECT_TRUE(ov.holds(Condition::C7));
    for (int i = 1; i <= 40; ++i) {
        EXPECT_EQ(classify_regime(Rational(2, 5), Rational(1) + Rational(i, 10)).tag, RegimeTag::Degenerate);
    }
    EXPECT_EQ(to_string(Condition::C7), "(7')");
}

TEST(ClassifyRegime, MatchesCrossMultipliedOracle) {
    gen::Engine g(51);
    for (int i = 0; i < 20000; ++i) {
        const Rational alpha(gen::integer(g, 0, 500), 1000);
        const Rational theta = Rational(1) + Rational(gen::integer(g, 1, 12000), 1000);
        const Regime r = classify_regime(alpha, theta);
        EXPECT_EQ(r.conditions, oracle::conditions(alpha, theta)) << alpha << " " << theta;
        const bool c1 = r.holds(Condition::C1);
        if (r.tag == RegimeTag::NoOverlap) {
            EXPECT_TRUE(c1 && r.holds(Condition::C2));
        }
        if (r.tag == RegimeTag::OverlapDisjointLeft) {
            EXPECT_TRUE(c1 && r.holds(Condition::C3) && r.holds(Condition::C4) && r.holds(Condition::C7));
        }
    }
}

TEST(BuildLayout, NoOverlapExample) {
    const BlockLayout L = build_layout(params(kAlphaNo, kThetaNo, 5));
    ASSERT_EQ(L.right_blocks.size(), 5u);
    EXPECT_NEAR(d(L.right_blocks[0].lo), 1.7284, 1e-4);
    EXPECT_NEAR(d(L.right_blocks[0].hi), 2.7160, 1e-4);
    EXPECT_NEAR(d(L.right_blocks[1].lo), 3.8409, 1e-4);
    EXPECT_TRUE(L.left_blocks.empty());
    for (std::size_t k = 0; k + 1 < L.right_blocks.size(); ++k) EXPECT_LT(L.right_blocks[k].hi, L.right_blocks[k + 1].lo);
}

TEST(BuildLayout, OverlapExample) {
    const BlockLayout L = build_layout(params(kAlphaOv, kThetaOv, 6));
    ASSERT_EQ(L.left_blocks.size(), 6u);
    for (std::size_t k = 0; k + 1 < L.left_blocks.size(); ++k) {
        EXPECT_LT(L.left_blocks[k + 1].hi, L.left_blocks[k].lo);
        EXPECT_GT(L.right_blocks[k].hi, L.right_blocks[k + 1].lo);
        EXPECT_LT(L.right_blocks[k].lo, L.right_blocks[k + 1].lo);
        EXPECT_GT(L.center(static_cast<int>(k) + 2), L.right_blocks[k].hi);
    }
}

TEST(BuildLayout, AlphaZeroBlocksArePoints) {
    const BlockLayout L = build_layout(params(Rational(0), Rational(3), 4));
    for (int k = 1; k <= 4; ++k) {
        EXPECT_EQ(L.right_blocks[static_cast<std::size_t>(k - 1)], (Interval{L.center(k), L.center(k)}));
    }
    const Rational m = L.center(4);
    EXPECT_EQ(free_count(L, m), 2 * m);

    LayoutParams p = params(Rational(0), Rational(2), 5, LayoutMode::Rounded);
    p.n1 = 1;
    EXPECT_EQ(free_count(build_layout(p), Rational(16)), Rational(28));
}

TEST(BuildLayout, DegenerateParametersAreRejected) {
    EXPECT_THROW(build_layout(params(Rational(2, 5), Rational(3), 4)), RegimeViolation);
    EXPECT_THROW(build_layout(params(Rational(1, 10), Rational(11), 4)), RegimeViolation);
}

TEST(FreeCount, IncrementsStayWithinTwiceTheStep) {
    gen::Engine g(52);
    int built = 0;
    while (built < 60) {
        const Rational alpha(gen::integer(g, 0, 300), 1000);
        const Rational theta = Rational(1) + Rational(gen::integer(g, 100, 6000), 1000);
        if (classify_regime(alpha, theta).tag == RegimeTag::Degenerate) continue;
        const LayoutMode mode = gen::integer(g, 0, 1) ? LayoutMode::Rounded : LayoutMode::Idealized;
        LayoutParams p = params(alpha, theta, 6, mode);
        p.n1 = mode == LayoutMode::Rounded ? Rational(50) : theta;
        const BlockLayout L = build_layout(p);
        ++built;
        const Rational top = L.window.hi;
        Rational prev_m = 0, prev_f = free_count(L, Rational(0));
        for (int i = 1; i <= 60; ++i) {
            Rational m = top * i / 60;
            if (mode == LayoutMode::Rounded) m = Rational(floor(m));
            const Rational f = free_count(L, m);
            EXPECT_GE(f - prev_f, 0);
            EXPECT_LE(f - prev_f, 2 * (m - prev_m));
            prev_m = m;
            prev_f = f;
        }
        EXPECT_THROW(free_count(L, top + 1), OutOfWindow);
        EXPECT_THROW(free_count(L, Rational(-1)), OutOfWindow);
    }
}

TEST(FreeIntervals, AvoidBlocksAndEachOther) {
    for (const auto& [alpha, theta] : {std::pair{kAlphaNo, kThetaNo}, std::pair{kAlphaOv, kThetaOv}}) {
        const BlockLayout L = build_layout(params(alpha, theta, 6));
        for (std::size_t i = 0; i + 1 < L.free_intervals.size(); ++i) {
            EXPECT_LE(L.free_intervals[i].hi, L.free_intervals[i + 1].lo);
        }
        for (const auto& f : L.free_intervals) {
            const Rational mid = (f.lo + f.hi) / 2;
            for (const auto* blocks : {&L.right_blocks, &L.left_blocks}) {
                for (const auto& b : *blocks) {
                    if (!b.empty()) {
                        EXPECT_FALSE(b.lo < mid && mid < b.hi);
                    }
                }
            }
        }
    }
}

TEST(Checkpoint, SweepMatchesClosedForm) {
    for (const LayoutMode mode : {LayoutMode::Idealized, LayoutMode::Rounded}) {
        for (const auto& [alpha, theta] : {std::pair{kAlphaNo, kThetaNo}, std::pair{kAlphaOv, kThetaOv}}) {
            LayoutParams p = params(alpha, theta, 12, mode);
            if (mode == LayoutMode::Rounded) p.n1 = 100;
            const BlockLayout L = build_layout(p);
            const int k_max = L.regime.tag == RegimeTag::OverlapDisjointLeft ? 11 : 12;
            for (int k = 1; k <= k_max; ++k) {
                const Checkpoint c = checkpoint(L, k);
                const Rational diff = free_count(L, c.m) - c.closed_form;
                if (mode == LayoutMode::Idealized) {
                    EXPECT_EQ(diff, 0) << "k " << k;
                } else {
                    EXPECT_LE(abs(diff), 1) << "k " << k;
                }
            }
            EXPECT_THROW(checkpoint(L, k_max + 1), OutOfWindow);
            EXPECT_THROW(checkpoint(L, 0), OutOfWindow);
        }
    }
}

TEST(Checkpoint, RoundedStaysNearIdealized) {
    for (const auto& [alpha, theta] : {std::pair{kAlphaNo, kThetaNo}, std::pair{kAlphaOv, kThetaOv}}) {
        LayoutParams p = params(alpha, theta, 10);
        p.n1 = 100;
        const BlockLayout ideal = build_layout(p);
        p.mode = LayoutMode::Rounded;
        const BlockLayout rounded = build_layout(p);
        const int k_max = ideal.regime.tag == RegimeTag::OverlapDisjointLeft ? 9 : 10;
        for (int k = 1; k <= k_max; ++k) {
            const Rational m = Rational(floor(checkpoint(ideal, k).m));
            EXPECT_LE(abs(free_count(rounded, m) - free_count(ideal, m)), 4 * 10) << "k " << k;
        }
    }
}

TEST(LocalDimension, Examples) {
    EXPECT_NEAR(local_dimension_limit(0.1, 20.0 / 9.0, RegimeTag::NoOverlap), 1.338843, 1e-6);
    EXPECT_NEAR(local_dimension_limit(0.1, 20.0 / 9.0, RegimeTag::NoOverlap), 2 * std::pow(0.9 / 1.1, 2), 1e-12);
    EXPECT_NEAR(local_dimension_limit(0.25, 3.414214, RegimeTag::OverlapDisjointLeft), 0.343146, 1e-6);
    EXPECT_DOUBLE_EQ(local_dimension_limit(0.0, 5.0, RegimeTag::NoOverlap), 2.0);
    EXPECT_THROW(local_dimension_limit(0.4, 3.0, RegimeTag::Degenerate), RegimeViolation);
}

TEST(LocalDimension, CheckpointRatiosApproachTheLimit) {
    for (const auto& [alpha, theta] : {std::pair{kAlphaNo, kThetaNo}, std::pair{kAlphaOv, kThetaOv}}) {
        const BlockLayout L = build_layout(params(alpha, theta, 26));
        const int k = 25;
        const Checkpoint c = checkpoint(L, k);
        const double ratio = d(free_count(L, c.m) / c.m);
        EXPECT_NEAR(ratio, local_dimension_limit(d(alpha), d(theta), L.regime.tag), 1e-3);
    }
}

TEST(LocalDimension, ThetaZeroIdentity) {
    const double t = 3 - 2 * std::sqrt(2.0);
    for (int i = 1; i < 100; ++i) {
        const double a = t * i / 100;
        const double theta0 = 2 / (1 - a);
        EXPECT_NEAR(local_dimension_limit(a, theta0, RegimeTag::NoOverlap), 2 * std::pow((1 - a) / (1 + a), 2), 1e-12);
    }
}

TEST(OptimalTheta, Examples) {
    const ThetaOptimum a = optimal_theta_lower(0.1);
    EXPECT_NEAR(*a.theta, 20.0 / 9.0, 1e-5);
    EXPECT_NEAR(a.dim, 1.338843, 1e-6);
    const ThetaOptimum b = optimal_theta_lower(0.25);
    EXPECT_NEAR(*b.theta, 3.414214, 1e-6);
    EXPECT_NEAR(b.dim, 0.343146, 1e-6);
    const ThetaOptimum c = optimal_theta_lower(0.3);
    EXPECT_NEAR(*c.theta, 10.0 / 3.0, 1e-12);
    EXPECT_NEAR(c.dim, 0.142857, 1e-6);
    const ThetaOptimum z = optimal_theta_lower(1.0 / 3.0);
    EXPECT_FALSE(z.theta.has_value());
    EXPECT_EQ(z.dim, 0.0);
}

TEST(OptimalTheta, AgreesWithGridSearch) {
    for (int i = 1; i < 33; ++i) {
        const double a = i / 100.0;
        EXPECT_NEAR(grid_theta_lower(a).dim, optimal_theta_lower(a).dim, 1e-6) << "alpha " << a;
    }
}

TEST(CardinalityFamily, DeltaFiveExample) {
    const CardinalityFamily f = cardinality_family(5, 10, 4, full_shift_sft(2));
    EXPECT_EQ(f.centers, (std::vector<std::int64_t>{10, 45, 150, 465}));
    ASSERT_GE(f.gaps.size(), 1u);
    EXPECT_EQ(f.gaps[0], (std::array<std::int64_t, 2>{-54, -51}));
    for (const auto& gap : f.gaps) EXPECT_EQ(gap[1] - gap[0] + 1, 4);
    EXPECT_EQ(f.witness_count, BigInt(4096));
}

TEST(CardinalityFamily, DeltaOneHasNoFreedom) {
    const CardinalityFamily f = cardinality_family(1, 10, 5, full_shift_sft(2));
    EXPECT_EQ(f.witness_count, BigInt(1));
    for (const auto& gap : f.gaps) EXPECT_LT(gap[1], gap[0]);
}

TEST(CardinalityFamily, WitnessCountMatchesEnumeration) {
    const Sft golden = golden_mean_shift();
    for (std::int64_t delta : {2, 3, 5}) {
        for (int K = 2; K <= 4; ++K) {
            for (int s = 0; s < 2; ++s) {
                const CardinalityFamily f = cardinality_family(delta, 10, K, golden, s);
                EXPECT_EQ(f.witness_count, oracle::count_fillings(f, golden.gamma)) << delta << " " << K << " " << s;
            }
        }
    }
}
