#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "toral/algebra.hpp"
#include "toral/partition.hpp"
#include "toral/shift.hpp"

// Small hand-rolled generators for the property tests. Every test seeds its
// own engine so failures replay.
namespace gen {

using Engine = std::mt19937_64;

inline std::int64_t integer(Engine& g, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(g);
}

inline double real(Engine& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

inline toral::Rational rational(Engine& g, std::int64_t num_bound = 50, std::int64_t den_bound = 20) {
    return toral::Rational(integer(g, -num_bound, num_bound), integer(g, 1, den_bound));
}

inline toral::QuadNum quad(Engine& g, const toral::QuadContext& ctx) {
    return toral::QuadNum(rational(g), rational(g), ctx);
}

// Hyperbolic matrices with small entries, det +1 or -1.
inline toral::ToralAutomorphism hyperbolic(Engine& g) {
    for (;;) {
        const std::int64_t a = integer(g, -4, 4), b = integer(g, -4, 4), c = integer(g, -4, 4), d = integer(g, -4, 4);
        const std::int64_t det = a * d - b * c;
        if (det != 1 && det != -1) continue;
        const toral::ToralAutomorphism A(a, b, c, d);
        if (A.hyperbolic()) return A;
    }
}

inline toral::TorusPointQ torus_point(Engine& g, std::int64_t den_bound = 30) {
    const std::int64_t p = integer(g, 1, den_bound), q = integer(g, 1, den_bound);
    return toral::make_point(toral::Rational(integer(g, 0, p - 1), p), toral::Rational(integer(g, 0, q - 1), q));
}

inline toral::TorusPointF torus_point_f(Engine& g) { return toral::make_point(real(g, 0, 1), real(g, 0, 1)); }

// Uniform word over the alphabet; admissibility is not enforced.
inline std::vector<int> word(Engine& g, int d, std::size_t len) {
    std::vector<int> w(len);
    for (auto& s : w) s = static_cast<int>(integer(g, 0, d - 1));
    return w;
}

inline toral::SymbolicWindow symmetric_window(Engine& g, int d, int m) {
    return toral::SymbolicWindow(-m, word(g, d, static_cast<std::size_t>(2 * m + 1)));
}

// 0/1 matrices with no zero row, for counting tests.
inline toral::TransitionMatrix transition(Engine& g, int d) {
    for (;;) {
        toral::TransitionMatrix G(d);
        for (auto& e : G.entries) e = static_cast<std::uint8_t>(integer(g, 0, 1));
        if (toral::zero_rows(G).empty()) return G;
    }
}

}  // namespace gen
