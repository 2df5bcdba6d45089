#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "toral/coding.hpp"
#include "toral/errors.hpp"

using namespace toral;

namespace {

const PreparedPartition& cat() {
    static const PreparedPartition P(catalog("cat").second);
    return P;
}

bool same_region(const Parallelogram& a, const Parallelogram& b) {
    return a.u_lo() == b.u_lo() && a.u_hi() == b.u_hi() && a.s_lo() == b.s_lo() && a.s_hi() == b.s_hi();
}

bool inside(const Parallelogram& inner, const Parallelogram& outer) {
    return outer.u_lo() <= inner.u_lo() && inner.u_hi() <= outer.u_hi() && outer.s_lo() <= inner.s_lo() &&
           inner.s_hi() <= outer.s_hi();
}

}  // namespace

TEST(CylinderRegion, SingleSymbolIsTheElement) {
    const auto& P = cat();
    for (int i = 0; i < P.size(); ++i) {
        const GeometricCylinder c = cylinder_region(P, SymbolicWindow(0, {i}));
        EXPECT_TRUE(same_region(c.region, P.partition.elements[static_cast<std::size_t>(i)]));
        EXPECT_NEAR(c.diameter, element_diameter(P.frame, P.partition.elements[static_cast<std::size_t>(i)]), 1e-15);
    }
}

TEST(CylinderRegion, ShiftConjugacy) {
    const auto& P = cat();
    gen::Engine g(41);
    for (int trial = 0; trial < 60; ++trial) {
        const int lo = static_cast<int>(gen::integer(g, -4, 0)), hi = static_cast<int>(gen::integer(g, 1, 4));
        const SymbolicWindow w = random_admissible_window(P.trans.gamma, lo, hi, g);
        const Parallelogram here = cylinder_region(P, w).region;
        const Parallelogram next = cylinder_region(P, shift_window(w, 1)).region;
        bool matched = false;
        for (const auto& n : P.trans.at(w.at(0), w.at(1))) {
            matched = matched || same_region(map_region(P.frame, here, n), next);
        }
        EXPECT_TRUE(matched) << format_window(w);
    }
}

TEST(CylinderRegion, ExtendingNeverEnlarges) {
    const auto& P = cat();
    gen::Engine g(42);
    for (int trial = 0; trial < 40; ++trial) {
        const SymbolicWindow w = random_admissible_window(P.trans.gamma, -6, 6, g);
        GeometricCylinder prev = cylinder_region(P, SymbolicWindow(0, {w.at(0)}));
        for (int m = 1; m <= 6; ++m) {
            const std::vector<int> syms(w.symbols.begin() + (6 - m), w.symbols.begin() + (6 + m + 1));
            const GeometricCylinder c = cylinder_region(P, SymbolicWindow(-m, syms));
            EXPECT_TRUE(inside(c.region, prev.region));
            EXPECT_LE(c.diameter, prev.diameter);
            prev = c;
        }
    }
}

TEST(CylinderRegion, DiameterWithinLemmaBounds) {
    const auto& P = cat();
    const GeometryConstants k = geometry_constants(P.partition);
    const double lambda = P.frame.spec.lambda_value;
    gen::Engine g(43);
    for (int m = 0; m <= 12; ++m) {
        for (int trial = 0; trial < 20; ++trial) {
            const SymbolicWindow w = random_admissible_window(P.trans.gamma, -m, m, g);
            const double scaled = cylinder_region(P, w).diameter * std::pow(lambda, m);
            EXPECT_GE(scaled, k.c_min * (1 - 1e-12));
            EXPECT_LE(scaled, k.c_max * (1 + 1e-12));
        }
    }
}

TEST(CylinderRegion, Errors) {
    const auto& P = cat();
    EXPECT_THROW(cylinder_region(P, SymbolicWindow(1, {0, 0})), DomainMismatch);
    const TransitionMatrix& G = P.trans.gamma;
    for (int i = 0; i < G.d; ++i) {
        for (int j = 0; j < G.d; ++j) {
            if (!G(i, j)) {
                EXPECT_THROW(cylinder_region(P, SymbolicWindow(0, {i, j})), InadmissibleWindow);
                return;
            }
        }
    }
    FAIL() << "cat-map transition matrix has no forbidden pair";
}

TEST(Itinerary, PeriodThreeOrbit) {
    const auto& P = cat();
    const SymbolicWindow w = itinerary(P, make_point(Rational(1, 2), Rational(1, 2)), 4);
    ASSERT_EQ(w.length(), 9);
    for (std::int64_t i = w.lo; i + 3 <= w.hi; ++i) EXPECT_EQ(w.at(i), w.at(i + 3));
    EXPECT_EQ(format_window(w), "-4 4 1 2 3 1 2 3 1 2 3");
}

TEST(Itinerary, FixedPointSitsOnTheBoundary) {
    try {
        itinerary(cat(), make_point(Rational(0), Rational(0)), 3);
        FAIL() << "expected BoundaryHit";
    } catch (const BoundaryHit& e) {
        EXPECT_EQ(e.name(), "BoundaryHit");
    }
}

TEST(Itinerary, PointLiesInItsCylinder) {
    const auto& P = cat();
    gen::Engine g(44);
    int tested = 0;
    while (tested < 40) {
        const TorusPointQ x = gen::torus_point(g, 97);
        const int m = static_cast<int>(gen::integer(g, 0, 5));
        SymbolicWindow w;
        try {
            w = itinerary(P, x, m);
        } catch (const BoundaryHit&) {
            continue;
        }
        ++tested;
        const Location loc = locate(P, x);
        EXPECT_EQ(loc.element, w.at(0));
        const Parallelogram r = cylinder_region(P, w).region;
        EXPECT_TRUE(r.u_lo() < loc.coords[0] && loc.coords[0] < r.u_hi());
        EXPECT_TRUE(r.s_lo() < loc.coords[1] && loc.coords[1] < r.s_hi());
        if (m == 0) {
            EXPECT_EQ(w.length(), 1);
        }
    }
}

TEST(DiameterRatio, SmallRunHasNoViolations) {
    const MarkovPartition& P = cat().partition;
    const DiameterReport r = diameter_ratio_check(P, 100, 6, 7);
    EXPECT_EQ(r.violations(), 0);
    ASSERT_EQ(r.rows.size(), 7u);
    EXPECT_GE(r.rows[0].min_ratio, r.constants.c_min * (1 - 1e-12));
    EXPECT_LE(r.rows[0].max_ratio, r.constants.c_max * (1 + 1e-12));
    EXPECT_LE(r.worst_lipschitz_ratio, 1.0);
}

TEST(DiameterRatio, SeedFixesTheReport) {
    const MarkovPartition& P = cat().partition;
    const DiameterReport a = diameter_ratio_check(P, 50, 4, 3), b = diameter_ratio_check(P, 50, 4, 3);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].min_ratio, b.rows[i].min_ratio);
        EXPECT_EQ(a.rows[i].max_ratio, b.rows[i].max_ratio);
    }
    EXPECT_EQ(a.worst_lipschitz_ratio, b.worst_lipschitz_ratio);
}
