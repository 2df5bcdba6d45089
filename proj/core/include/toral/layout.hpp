#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toral/algebra.hpp"
#include "toral/shift.hpp"

namespace toral {

enum class RegimeTag { NoOverlap, OverlapDisjointLeft, Degenerate };

// The five inequalities that decide a regime, by their usual primed labels.
enum class Condition { C1, C2, C3, C4, C7 };
inline constexpr std::array<Condition, 5> kConditions{Condition::C1, Condition::C2, Condition::C3, Condition::C4,
                                                      Condition::C7};

struct Regime {
    RegimeTag tag = RegimeTag::Degenerate;
    std::array<bool, 5> conditions{};  // indexed like kConditions

    bool holds(Condition c) const { return conditions[static_cast<std::size_t>(c)]; }
};

std::string to_string(RegimeTag t);
std::string to_string(Condition c);  // "(1')", "(2')", ...

// (1')  1 < theta <= 1/alpha          (no upper bound when alpha = 0)
// (2')  1 + alpha theta < theta - alpha theta^2
// (3')  1 + alpha theta > theta - alpha theta^2
// (4')  theta > 1/(1 - alpha)
// (7')  theta > 1/(1 - 2 alpha)      (false when alpha >= 1/2)
// The right end of (1') is closed so that theta = 1/alpha, where the third
// branch of the dimension formula peaks, is a valid layout.
Regime classify_regime(const Rational& alpha, const Rational& theta);
// Evaluated exactly on the binary values of the doubles.
Regime classify_regime(double alpha, double theta);

enum class LayoutMode { Idealized, Rounded };

struct LayoutParams {
    Rational alpha;
    Rational theta;
    Rational n1;  // first center; n_k = n1 theta^(k-1)
    int K = 2;
    LayoutMode mode = LayoutMode::Idealized;
};

// Closed interval [lo, hi]. In Rounded mode endpoints are integers and the
// interval stands for the integer positions it contains.
struct Interval {
    Rational lo;
    Rational hi;

    bool empty() const { return hi < lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct BlockLayout {
    LayoutParams params;
    Regime regime;
    std::vector<Rational> centers;   // n_1 .. n_{K+2}; the last two only size blocks
    std::vector<Interval> right_blocks;  // k = 1..K
    std::vector<Interval> left_blocks;   // k = 1..K, empty outside the overlap regime
    Interval window;
    // Closures of the maximal free stretches of the window. Idealized
    // neighbours share an endpoint when the block between them is a point.
    std::vector<Interval> free_intervals;

    int K() const { return params.K; }
    Rational center(int k) const { return centers[static_cast<std::size_t>(k - 1)]; }
};

// Throws RegimeViolation naming the first failed condition (with k when a
// per-block check fails) if the parameters are degenerate.
BlockLayout build_layout(const LayoutParams& p);

// Free length (Idealized) or number of free integer positions (Rounded) in
// [-m, m], counted against the blocks of L. Throws OutOfWindow unless
// 0 <= m <= n_K + alpha n_{K+1}.
Rational free_count(const BlockLayout& L, const Rational& m);

// Checkpoint radius m_k and the free count there from the closed-form block
// sums: m_k = n_k + alpha n_{k+1} without overlap, alpha n_{k+2} with it.
// Rounded mode uses the rounded block ends and assumes the blocks the closed
// form treats as disjoint really are.
struct Checkpoint {
    int k = 0;
    Rational m;
    Rational closed_form;
};
Checkpoint checkpoint(const BlockLayout& L, int k);

// Limit of F(m_k) / m_k along the checkpoints.
double local_dimension_limit(double alpha, double theta, RegimeTag regime);

struct ThetaOptimum {
    std::optional<double> theta;  // empty when alpha >= 1/3
    double dim = 0;
};

// Closed-form maximizer of the lower bound over theta.
ThetaOptimum optimal_theta_lower(double alpha);

// Numerical maximizer of local_dimension_limit over the theta admitted by
// either regime: a grid of `steps` points on (1, 1/alpha] followed by a
// golden-section refinement. Ties go to the smaller theta.
ThetaOptimum grid_theta_lower(double alpha, int steps = 20000);

struct CardinalityFamily {
    std::int64_t delta = 0;
    std::vector<std::int64_t> centers;             // n_1 .. n_K
    std::vector<std::array<std::int64_t, 2>> right_blocks;
    std::vector<std::array<std::int64_t, 2>> left_blocks;
    std::vector<std::array<std::int64_t, 2>> gaps;  // free stretches between consecutive left blocks
    int boundary_symbol = 0;
    BigInt witness_count;
};

// The alpha = 1/3 family n_{k+1} = 3(n_k + delta). Fixed blocks are filled
// with `boundary_symbol`, so each gap of delta - 1 free positions admits
// (Gamma^delta)[s][s] fillings and witness_count is that number raised to
// the count of complete gaps (K - 1). It is 0 when s -> s is forbidden.
CardinalityFamily cardinality_family(std::int64_t delta, std::int64_t n1, int K, const Sft& S,
                                     int boundary_symbol = 0);

}  // namespace toral
