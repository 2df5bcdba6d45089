#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "toral/algebra.hpp"
#include "toral/errors.hpp"

using namespace toral;

namespace {

std::array<QuadNum, 2> apply(const ToralAutomorphism& A, const std::array<QuadNum, 2>& v) {
    return {QuadNum(A.a) * v[0] + QuadNum(A.b) * v[1], QuadNum(A.c) * v[0] + QuadNum(A.d) * v[1]};
}

}  // namespace

TEST(Spectrum, CatMap) {
    const ToralAutomorphism A(2, 1, 1, 1);
    const Spectrum s = spectrum(A);
    EXPECT_NEAR(s.lambda_value, (3.0 + std::sqrt(5.0)) / 2.0, 1e-12);
    EXPECT_NEAR(s.lambda_value, 2.6180339887, 1e-10);
    const QuadNum l = s.lambda;
    EXPECT_EQ(s.unstable_dir[0], l - QuadNum(1));
    EXPECT_EQ(s.unstable_dir[1], QuadNum(1));
    const auto Au = apply(A, s.unstable_dir);
    EXPECT_EQ(Au[0], l * s.unstable_dir[0]);
    EXPECT_EQ(Au[1], l * s.unstable_dir[1]);
    const auto As = apply(A, s.stable_dir);
    EXPECT_EQ(As[0], s.mu * s.stable_dir[0]);
    EXPECT_EQ(As[1], s.mu * s.stable_dir[1]);
    EXPECT_EQ(s.lambda * s.lambda_inv, QuadNum(1));
}

TEST(Spectrum, ParabolicMatrixIsRejected) {
    EXPECT_THROW(spectrum(ToralAutomorphism(1, 1, 0, 1)), NotHyperbolic);
}

TEST(Spectrum, NormalizeSquaresTheMatrix) {
    const ToralAutomorphism F(1, 1, 1, 0);
    const Spectrum raw = spectrum(F);
    EXPECT_NEAR(std::abs(raw.lambda_value), (1.0 + std::sqrt(5.0)) / 2.0, 1e-12);
    const Spectrum sq = spectrum(F, true);
    EXPECT_TRUE(sq.normalized);
    EXPECT_EQ(sq.matrix, ToralAutomorphism(2, 1, 1, 1));
    EXPECT_NEAR(sq.lambda_value, 2.6180339887, 1e-10);
}

TEST(Spectrum, CharacteristicPolynomialHoldsExactly) {
    gen::Engine g(11);
    for (int i = 0; i < 200; ++i) {
        const ToralAutomorphism A = gen::hyperbolic(g);
        const Spectrum s = spectrum(A);
        const QuadNum l = s.lambda;
        EXPECT_TRUE((l * l - QuadNum(A.trace()) * l + QuadNum(A.det())).is_zero());
        EXPECT_GT(std::abs(s.lambda_value), 1.0);
        EXPECT_NEAR(std::abs(s.lambda_value * s.lambda_inv_value), 1.0, 1e-12);
        const auto Au = apply(A, s.unstable_dir);
        EXPECT_EQ(Au[0], l * s.unstable_dir[0]);
        EXPECT_EQ(Au[1], l * s.unstable_dir[1]);
    }
}

TEST(QuadSign, Examples) {
    const QuadContext cat{3, 1};
    EXPECT_EQ(quad_sign(QuadNum(-2, 1, cat)), 1);
    EXPECT_EQ(quad_sign(QuadNum(0, 0, cat)), 0);
    EXPECT_EQ(quad_sign(QuadNum(5, -2, cat)), -1);
}

TEST(QuadSign, AgreesWithHighPrecisionEvaluation) {
    gen::Engine g(12);
    const QuadContext cat{3, 1};
    const long double lambda = (3.0L + std::sqrt(5.0L)) / 2.0L;
    for (int i = 0; i < 2000; ++i) {
        const QuadNum v = gen::quad(g, cat);
        const long double approx = to_double(v.p()) + to_double(v.q()) * lambda;
        if (std::abs(approx) < 1e-9L) continue;
        EXPECT_EQ(quad_sign(v), approx > 0 ? 1 : -1);
    }
    // Fibonacci ratios straddle lambda from both sides.
    EXPECT_EQ(quad_sign(QuadNum(Rational(-4181), Rational(1597), cat)), 1);
    EXPECT_EQ(quad_sign(QuadNum(Rational(-6765), Rational(2584), cat)), -1);
}

TEST(QuadNum, RingLawsOnRandomTriples) {
    gen::Engine g(13);
    for (const QuadContext ctx : {QuadContext{3, 1}, QuadContext{1, -1}, QuadContext{-5, 1}}) {
        for (int i = 0; i < 300; ++i) {
            const QuadNum a = gen::quad(g, ctx), b = gen::quad(g, ctx), c = gen::quad(g, ctx);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            if (!b.is_zero()) {
                EXPECT_EQ((a / b) * b, a);
            }
            EXPECT_EQ(a.norm(), (a * a.conjugate()).p());
        }
    }
}

TEST(Rational, ParsesDecimalsExactly) {
    EXPECT_EQ(parse_rational("3.414214"), Rational(1707107, 500000));
    EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
    EXPECT_EQ(parse_rational("20/9"), Rational(20, 9));
    EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
    EXPECT_NE(rational_from_double(0.1), Rational(1, 10));
    EXPECT_EQ(rational_from_double(0.375), Rational(3, 8));
}

TEST(IteratePoint, Examples) {
    const ToralAutomorphism A(2, 1, 1, 1);
    const TorusPointQ zero = make_point(Rational(0), Rational(0));
    EXPECT_EQ(iterate_point(A, zero, 7), zero);
    const TorusPointQ half = make_point(Rational(1, 2), Rational(1, 2));
    EXPECT_EQ(iterate_point(A, half, 1), make_point(Rational(1, 2), Rational(0)));
    EXPECT_EQ(iterate_point(A, half, 2), make_point(Rational(0), Rational(1, 2)));
    EXPECT_EQ(iterate_point(A, half, 3), half);
    EXPECT_EQ(iterate_point(A, half, 0), half);
}

TEST(IteratePoint, ComposesExactly) {
    gen::Engine g(14);
    for (int i = 0; i < 200; ++i) {
        const ToralAutomorphism A = gen::hyperbolic(g);
        const TorusPointQ x = gen::torus_point(g);
        const auto m = gen::integer(g, -6, 6), n = gen::integer(g, -6, 6);
        EXPECT_EQ(iterate_point(A, x, m + n), iterate_point(A, iterate_point(A, x, m), n));
    }
}

TEST(TorusDistance, Examples) {
    const TorusPointF x = make_point(0.1, 0.9), y = make_point(0.9, 0.1);
    EXPECT_EQ(torus_distance(x, x), 0.0);
    EXPECT_NEAR(torus_distance(x, y), 0.2828427, 1e-7);
    EXPECT_NEAR(torus_distance(make_point(0.25, 0.0), make_point(0.75, 0.0)), 0.5, 1e-15);
}

TEST(TorusDistance, MetricAxiomsOnRandomTriples) {
    gen::Engine g(15);
    for (int i = 0; i < 5000; ++i) {
        const auto x = gen::torus_point_f(g), y = gen::torus_point_f(g), z = gen::torus_point_f(g);
        EXPECT_DOUBLE_EQ(torus_distance(x, y), torus_distance(y, x));
        EXPECT_LE(torus_distance(x, z), torus_distance(x, y) + torus_distance(y, z) + 1e-12);
        EXPECT_LE(torus_distance(x, y), std::sqrt(0.5) + 1e-15);
    }
}
