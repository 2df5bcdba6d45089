#include "toral/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "toral/errors.hpp"

namespace toral {

std::string to_string(RegimeTag t) {
    switch (t) {
        case RegimeTag::NoOverlap: return "NoOverlap";
        case RegimeTag::OverlapDisjointLeft: return "OverlapDisjointLeft";
        case RegimeTag::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string to_string(Condition c) {
    switch (c) {
        case Condition::C1: return "(1')";
        case Condition::C2: return "(2')";
        case Condition::C3: return "(3')";
        case Condition::C4: return "(4')";
        case Condition::C7: return "(7')";
    }
    return "?";
}

namespace {

RegimeTag tag_for(const std::array<bool, 5>& c) {
    if (c[0] && c[1]) return RegimeTag::NoOverlap;
    if (c[0] && c[2] && c[3] && c[4]) return RegimeTag::OverlapDisjointLeft;
    return RegimeTag::Degenerate;
}

}  // namespace

Regime classify_regime(const Rational& alpha, const Rational& theta) {
    if (alpha < 0) throw std::invalid_argument("alpha must be non-negative");
    Regime r;
    const Rational at = alpha * theta;
    const Rational lhs = 1 + at, rhs = theta - at * theta;
    r.conditions[0] = theta > 1 && (alpha == 0 || at <= 1);
    r.conditions[1] = lhs < rhs;
    r.conditions[2] = lhs > rhs;
    r.conditions[3] = alpha < 1 && (1 - alpha) * theta > 1;
    r.conditions[4] = 2 * alpha < 1 && (1 - 2 * alpha) * theta > 1;
    r.tag = tag_for(r.conditions);
    return r;
}

Regime classify_regime(double alpha, double theta) {
    if (!std::isfinite(alpha) || !std::isfinite(theta)) throw std::invalid_argument("alpha and theta must be finite");
    return classify_regime(rational_from_double(alpha), rational_from_double(theta));
}

namespace {

// Sorted, merged union of the nonempty intervals, clipped to [lo, hi].
// Rounded intervals merge when they touch at consecutive integers.
std::vector<Interval> merged(std::vector<Interval> v, const Rational& lo, const Rational& hi, bool rounded) {
    std::vector<Interval> clipped;
    for (auto& iv : v) {
        Interval c{std::max(iv.lo, lo), std::min(iv.hi, hi)};
        if (!c.empty()) clipped.push_back(std::move(c));
    }
    std::sort(clipped.begin(), clipped.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (auto& iv : clipped) {
        if (!out.empty() && iv.lo <= out.back().hi + (rounded ? 1 : 0)) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(std::move(iv));
        }
    }
    return out;
}

Rational measure(const std::vector<Interval>& v, bool rounded) {
    Rational s = 0;
    for (const auto& iv : v) s += iv.hi - iv.lo + (rounded ? 1 : 0);
    return s;
}

std::vector<Interval> all_blocks(const BlockLayout& L) {
    std::vector<Interval> v = L.right_blocks;
    v.insert(v.end(), L.left_blocks.begin(), L.left_blocks.end());
    return v;
}

[[noreturn]] void violation(Condition c, const std::string& detail) {
    throw RegimeViolation("condition " + to_string(c) + " fails: " + detail);
}

void check_blocks(const BlockLayout& L) {
    const auto& R = L.right_blocks;
    const auto& Lb = L.left_blocks;
    for (std::size_t i = 0; i + 1 < R.size(); ++i) {
        const std::string at = "at k = " + std::to_string(i + 1);
        if (L.regime.tag == RegimeTag::NoOverlap) {
            if (!(R[i].hi < R[i + 1].lo)) violation(Condition::C2, "right blocks meet " + at);
            continue;
        }
        if (!(R[i + 1].lo < R[i].hi)) violation(Condition::C3, "right blocks are disjoint " + at);
        if (!(L.center(static_cast<int>(i) + 2) > R[i].hi)) violation(Condition::C4, "center falls in the block " + at);
        if (!(R[i].lo <= R[i + 1].lo)) violation(Condition::C1, "right blocks move left " + at);
        if (!(Lb[i + 1].hi < Lb[i].lo)) violation(Condition::C7, "left blocks meet " + at);
    }
}

}  // namespace

BlockLayout build_layout(const LayoutParams& p) {
    if (p.alpha < 0 || p.alpha >= 1) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (p.theta <= 1) throw std::invalid_argument("theta must exceed 1");
    if (p.n1 <= 0) throw std::invalid_argument("n1 must be positive");
    if (p.K < 2) throw std::invalid_argument("K must be at least 2");

    BlockLayout L;
    L.params = p;
    L.regime = classify_regime(p.alpha, p.theta);
    if (L.regime.tag == RegimeTag::Degenerate) {
        const auto& c = L.regime.conditions;
        if (!c[0]) violation(Condition::C1, "theta must satisfy 1 < theta <= 1/alpha");
        if (!c[1] && !c[2]) violation(Condition::C2, "1 + alpha theta = theta - alpha theta^2 (blocks just touch)");
        if (!c[3]) violation(Condition::C4, "theta <= 1/(1 - alpha)");
        violation(Condition::C7, "theta <= 1/(1 - 2 alpha)");
    }
    const bool rounded = p.mode == LayoutMode::Rounded;

    Rational n = p.n1;
    for (int k = 1; k <= p.K + 2; ++k) {
        L.centers.push_back(rounded ? Rational(floor(n)) : n);
        n *= p.theta;
    }
    auto A = [&](int k) -> Rational {
        const Rational v = p.alpha * L.center(k);
        return rounded ? Rational(floor(v)) : v;
    };
    const bool overlap = L.regime.tag == RegimeTag::OverlapDisjointLeft;
    for (int k = 1; k <= p.K; ++k) {
        L.right_blocks.push_back({L.center(k) - A(k + 1), L.center(k) + A(k + 1)});
        if (overlap) L.left_blocks.push_back({-A(k + 2), L.center(k) - L.center(k + 1) + A(k + 1)});
    }
    if (!rounded) check_blocks(L);

    L.window = {-A(p.K + 1), L.center(p.K) + A(p.K + 1)};
    const auto covered = merged(all_blocks(L), L.window.lo, L.window.hi, rounded);
    Rational cursor = L.window.lo;
    const Rational step = rounded ? 1 : 0;
    for (const auto& iv : covered) {
        if (cursor < iv.lo) L.free_intervals.push_back({cursor, iv.lo - step});
        cursor = iv.hi + step;
    }
    if (rounded ? cursor <= L.window.hi : cursor < L.window.hi) L.free_intervals.push_back({cursor, L.window.hi});
    return L;
}

Rational free_count(const BlockLayout& L, const Rational& m) {
    if (m < 0 || m > L.window.hi) {
        throw OutOfWindow("radius " + to_string(m) + " outside [0, " + to_string(L.window.hi) + "]");
    }
    const bool rounded = L.params.mode == LayoutMode::Rounded;
    const Rational r = rounded ? Rational(floor(m)) : m;
    const Rational total = 2 * r + (rounded ? 1 : 0);
    return total - measure(merged(all_blocks(L), -r, r, rounded), rounded);
}

Checkpoint checkpoint(const BlockLayout& L, int k) {
    const bool overlap = L.regime.tag == RegimeTag::OverlapDisjointLeft;
    const int k_max = overlap ? L.K() - 1 : L.K();
    if (k < 1 || k > k_max) {
        throw OutOfWindow("checkpoint k = " + std::to_string(k) + " needs 1 <= k <= " + std::to_string(k_max));
    }
    const bool rounded = L.params.mode == LayoutMode::Rounded;
    const Rational& alpha = L.params.alpha;
    auto n = [&](int i) { return L.center(i); };
    auto A = [&](int i) -> Rational {
        const Rational v = alpha * n(i);
        return rounded ? Rational(floor(v)) : v;
    };

    Checkpoint c;
    c.k = k;
    if (!overlap) {
        c.m = n(k) + A(k + 1);
        Rational blocked = 0;
        for (int i = 1; i <= k; ++i) blocked += 2 * A(i + 1) + (rounded ? 1 : 0);
        c.closed_form = 2 * c.m + (rounded ? 1 : 0) - blocked;
        return c;
    }
    c.m = A(k + 2);
    Rational blocked = 0;
    for (int i = 1; i <= k; ++i) blocked += n(i) - n(i + 1) + A(i + 1) + A(i + 2) + (rounded ? 1 : 0);
    c.closed_form = c.m - blocked + std::max(Rational(0), n(1) - A(2));
    return c;
}

double local_dimension_limit(double alpha, double theta, RegimeTag regime) {
    switch (regime) {
        case RegimeTag::NoOverlap:
            return 2.0 - 2.0 * alpha * theta * theta / ((1.0 + alpha * theta) * (theta - 1.0));
        case RegimeTag::OverlapDisjointLeft:
            return ((1.0 - 2.0 * alpha) * theta - 1.0) / (alpha * theta * (theta - 1.0));
        case RegimeTag::Degenerate: break;
    }
    throw RegimeViolation("no local dimension for a degenerate layout");
}

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kFirstThreshold = 3.0 - 2.0 * kSqrt2;
const double kSecondThreshold = 2.0 - std::sqrt(3.0);

RegimeTag fast_tag(double alpha, double theta) {
    const double at = alpha * theta, lhs = 1 + at, rhs = theta - at * theta;
    const bool c1 = theta > 1 && (alpha == 0 || at <= 1);
    if (c1 && lhs < rhs) return RegimeTag::NoOverlap;
    if (c1 && lhs > rhs && (1 - alpha) * theta > 1 && (1 - 2 * alpha) * theta > 1) {
        return RegimeTag::OverlapDisjointLeft;
    }
    return RegimeTag::Degenerate;
}

double lower_value(double alpha, double theta) {
    const RegimeTag t = fast_tag(alpha, theta);
    if (t == RegimeTag::Degenerate) return -std::numeric_limits<double>::infinity();
    return local_dimension_limit(alpha, theta, t);
}

}  // namespace

ThetaOptimum optimal_theta_lower(double alpha) {
    if (!(alpha >= 0)) throw std::invalid_argument("alpha must be non-negative");
    if (alpha >= 1.0 / 3.0) return {std::nullopt, 0.0};
    if (alpha < kFirstThreshold) {
        const double r = (1 - alpha) / (1 + alpha);
        return {2.0 / (1.0 - alpha), 2.0 * r * r};
    }
    if (alpha < kSecondThreshold) {
        const double s = 1.0 - std::sqrt(2.0 * alpha);
        return {1.0 / s, s * s / alpha};
    }
    return {1.0 / alpha, (1.0 - 3.0 * alpha) / (1.0 - alpha)};
}

ThetaOptimum grid_theta_lower(double alpha, int steps) {
    if (!(alpha >= 0)) throw std::invalid_argument("alpha must be non-negative");
    if (steps < 3) throw std::invalid_argument("grid needs at least 3 steps");
    if (alpha >= 1.0 / 3.0) return {std::nullopt, 0.0};
    const double hi = alpha > 0 ? 1.0 / alpha : 10.0;
    const double h = (hi - 1.0) / steps;

    int best = 1;
    double best_v = lower_value(alpha, 1.0 + h);
    for (int i = 2; i <= steps; ++i) {
        const double th = i == steps ? hi : 1.0 + h * i;
        const double v = lower_value(alpha, th);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    // Golden-section refinement on the neighbouring grid cells.
    double a = 1.0 + h * std::max(best - 1, 1), b = std::min(1.0 + h * (best + 1), hi);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = lower_value(alpha, x1), f2 = lower_value(alpha, x2);
    while (b - a > 1e-12 * std::max(1.0, b)) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = lower_value(alpha, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = lower_value(alpha, x2);
        }
    }
    ThetaOptimum out{1.0 + h * best, best_v};
    if (best == steps) out.theta = hi;
    for (double th : {a, b}) {
        const double v = lower_value(alpha, th);
        if (v > out.dim || (v == out.dim && th < *out.theta)) out = {th, v};
    }
    return out;
}

namespace {

std::int64_t checked(std::int64_t v) {
    if (v > std::numeric_limits<std::int64_t>::max() / 4) throw std::overflow_error("block centers overflow 64 bits");
    return v;
}

BigInt loops(const TransitionMatrix& G, int s, std::int64_t len) {
    std::vector<BigInt> v(static_cast<std::size_t>(G.d), 0), next(v.size());
    v[static_cast<std::size_t>(s)] = 1;
    for (std::int64_t step = 0; step < len; ++step) {
        for (int j = 0; j < G.d; ++j) {
            BigInt acc = 0;
            for (int i = 0; i < G.d; ++i) {
                if (G(i, j)) acc += v[static_cast<std::size_t>(i)];
            }
            next[static_cast<std::size_t>(j)] = std::move(acc);
        }
        std::swap(v, next);
    }
    return v[static_cast<std::size_t>(s)];
}

}  // namespace

CardinalityFamily cardinality_family(std::int64_t delta, std::int64_t n1, int K, const Sft& S, int boundary_symbol) {
    if (delta < 1) throw std::invalid_argument("delta must be at least 1");
    if (n1 < 1) throw std::invalid_argument("n1 must be at least 1");
    if (K < 1) throw std::invalid_argument("K must be at least 1");
    if (boundary_symbol < 0 || boundary_symbol >= S.d) throw std::invalid_argument("boundary symbol out of range");

    CardinalityFamily f;
    f.delta = delta;
    f.boundary_symbol = boundary_symbol;
    std::vector<std::int64_t> n{n1};
    for (int k = 1; k <= K; ++k) n.push_back(checked(3 * (n.back() + delta)));
    f.centers.assign(n.begin(), n.begin() + K);
    for (int k = 0; k < K; ++k) {
        f.right_blocks.push_back({-delta, 2 * n[k] + delta});
        f.left_blocks.push_back({-n[k + 1] - delta, -n[k] - 2 * delta});
    }
    for (int k = 0; k + 1 < K; ++k) f.gaps.push_back({f.left_blocks[k + 1][1] + 1, f.left_blocks[k][0] - 1});
    // Every left block spans at least two positions, so it needs the loop s -> s.
    if (!S.gamma(boundary_symbol, boundary_symbol)) {
        f.witness_count = 0;
        return f;
    }
    const BigInt per_gap = loops(S.gamma, boundary_symbol, delta);
    f.witness_count = boost::multiprecision::pow(per_gap, static_cast<unsigned>(K - 1));
    return f;
}

}  // namespace toral
