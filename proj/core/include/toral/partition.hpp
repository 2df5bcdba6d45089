#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toral/algebra.hpp"

namespace toral {

// Rectangle in eigencoordinates: [u0, u0 + u_extent] x [s0, s0 + s_extent],
// extents measured in units of the spectrum's eigenvectors.
struct Parallelogram {
    std::array<QuadNum, 2> origin;
    QuadNum u_extent;
    QuadNum s_extent;

    QuadNum u_lo() const { return origin[0]; }
    QuadNum u_hi() const { return origin[0] + u_extent; }
    QuadNum s_lo() const { return origin[1]; }
    QuadNum s_hi() const { return origin[1] + s_extent; }
};

struct MarkovPartition {
    ToralAutomorphism automorphism;
    std::vector<Parallelogram> elements;
};

struct TransitionMatrix {
    int d = 0;
    std::vector<std::uint8_t> entries;  // row-major d x d, values 0 or 1

    TransitionMatrix() = default;
    explicit TransitionMatrix(int dim) : d(dim), entries(static_cast<std::size_t>(dim) * dim, 0) {}
    TransitionMatrix(int dim, std::vector<std::uint8_t> e);

    std::uint8_t operator()(int i, int j) const { return entries[static_cast<std::size_t>(i) * d + j]; }
    std::uint8_t& operator()(int i, int j) { return entries[static_cast<std::size_t>(i) * d + j]; }
    friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;
};

TransitionMatrix full_shift(int d);
std::vector<int> zero_rows(const TransitionMatrix& G);
std::vector<int> zero_columns(const TransitionMatrix& G);
bool irreducible(const TransitionMatrix& G);

struct ValidationReport {
    bool cover = false;           // areas sum to exactly 1
    bool disjoint = false;        // interiors pairwise disjoint mod Z^2
    bool markov = false;          // full unstable crossing, stable containment
    bool single_crossing = false; // T(P_i) meets each P_j in at most one piece
    std::vector<std::string> problems;

    bool ok() const { return cover && disjoint && markov && single_crossing; }
};

// Throws MalformedPartition for empty partitions and non-positive extents.
ValidationReport validate_partition(const MarkovPartition& P);

using LatticeShift = std::array<std::int64_t, 2>;

// a_ij together with the lattice translates n for which
// int T(P_i) meets int(P_j + n).
struct Transitions {
    TransitionMatrix gamma;
    std::vector<std::vector<LatticeShift>> shifts;  // index i * d + j

    const std::vector<LatticeShift>& at(int i, int j) const {
        return shifts[static_cast<std::size_t>(i) * gamma.d + j];
    }
};

Transitions transitions(const MarkovPartition& P);
TransitionMatrix transition_matrix(const MarkovPartition& P);

// Dominant eigenvalue modulus of a 0/1 matrix. Throws NonConvergence.
double spectral_radius(const TransitionMatrix& G);

struct GeometryConstants {
    double c_min = 0, c_max = 0;  // extreme element diameters
    double b_min = 0;             // shortest side
    double h_min = 0;             // smallest height
    std::int64_t k0 = 0;          // (ceil(2 / h_min) + 1)^2
    double L = 0;                 // Lipschitz constant of the coding map
};

// Element shape as its two ambient side vectors.
struct ElementShape {
    std::array<double, 2> side_u;
    std::array<double, 2> side_s;
};

std::int64_t k0_from_hmin(double h_min);
GeometryConstants geometry_constants(const std::vector<ElementShape>& shapes);
GeometryConstants geometry_constants(const MarkovPartition& P);

ElementShape element_shape(const EigenFrame& frame, const Parallelogram& e);
double element_diameter(const EigenFrame& frame, const Parallelogram& e);
// Squared Euclidean long diagonal, exact in Q(lambda).
QuadNum element_diameter_sq(const EigenFrame& frame, const QuadNum& u_extent, const QuadNum& s_extent);
QuadNum element_area(const EigenFrame& frame, const Parallelogram& e);

std::vector<std::string> catalog_names();
// Throws UnknownCatalogEntry.
std::pair<ToralAutomorphism, MarkovPartition> catalog(std::string_view name);

// Two eigen-aligned rectangles tiling the torus, before refinement.
MarkovPartition two_rectangle_partition(const ToralAutomorphism& A);
// Splits every element along the pieces P_i meets T^-1(P_j + n).
MarkovPartition refine(const MarkovPartition& P);

std::string partition_to_json(const MarkovPartition& P);
// Throws MalformedPartition on structural errors.
MarkovPartition partition_from_json(std::string_view text);

}  // namespace toral
