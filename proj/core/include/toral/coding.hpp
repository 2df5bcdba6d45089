#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "toral/algebra.hpp"
#include "toral/partition.hpp"
#include "toral/shift.hpp"

namespace toral {

// Partition with its eigenframe and transition data computed once.
struct PreparedPartition {
    MarkovPartition partition;
    EigenFrame frame;
    Transitions trans;
    // Eigencoordinates of the lattice shift for each allowed (i, j), row-major.
    std::vector<std::array<QuadNum, 2>> offsets;

    explicit PreparedPartition(MarkovPartition P);
    int size() const { return trans.gamma.d; }

    // Integer form of the data above, used by the cylinder recursion.
    struct Scaled;
    std::shared_ptr<const Scaled> scaled;
};

struct GeometricCylinder {
    SymbolicWindow window;
    Parallelogram region;  // placed inside element x_0
    double diameter = 0;
};

// The set of points whose orbit visits P_{x_j} at time j for lo <= j <= hi.
// Throws DomainMismatch if 0 is outside the window and InadmissibleWindow if
// the set has empty interior.
GeometricCylinder cylinder_region(const PreparedPartition& P, const SymbolicWindow& w);
GeometricCylinder cylinder_region(const MarkovPartition& P, const SymbolicWindow& w);

// T(region) - n in eigencoordinates.
Parallelogram map_region(const EigenFrame& frame, const Parallelogram& region, const LatticeShift& n);

struct Location {
    int element = -1;
    std::array<QuadNum, 2> coords;  // eigencoordinates inside the placed element
};

// Throws BoundaryHit(0) when x is on the boundary of an element.
Location locate(const PreparedPartition& P, const TorusPointQ& x);

// Window on [-m, m] with symbol j the element holding T^j x.
// Throws BoundaryHit(j) for the first offending iterate.
SymbolicWindow itinerary(const PreparedPartition& P, const TorusPointQ& x, int m);
SymbolicWindow itinerary(const MarkovPartition& P, const TorusPointQ& x, int m);

struct RatioRow {
    int m = 0;
    int samples = 0;
    double min_ratio = 0;  // min of diam * lambda^m
    double max_ratio = 0;
    int diameter_violations = 0;
    int lipschitz_violations = 0;

    int violations() const { return diameter_violations + lipschitz_violations; }
};

struct DiameterReport {
    GeometryConstants constants;
    std::vector<RatioRow> rows;
    double worst_lipschitz_ratio = 0;  // max of distance / (L * d_sigma)

    int violations() const;
};

DiameterReport diameter_ratio_check(const MarkovPartition& P, int samples, int m_max, std::uint64_t seed = 1);

// Uniform-ish random admissible window on [lo, hi].
SymbolicWindow random_admissible_window(const TransitionMatrix& G, std::int64_t lo, std::int64_t hi,
                                        std::mt19937_64& rng);

}  // namespace toral
