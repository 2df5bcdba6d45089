#include "toral/oracles.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "toral/errors.hpp"

namespace toral::oracle {

long double dim_uniform(long double a) {
    if (!(a >= 0)) throw std::invalid_argument("alpha must be non-negative");
    const long double t1 = 3.0L - 2.0L * std::sqrt(2.0L);
    const long double t2 = 2.0L - std::sqrt(3.0L);
    if (a <= t1) {
        const long double r = 1.0L - 2.0L * a / (1.0L + a);
        return 2.0L * r * r;
    }
    if (a <= t2) return (1.0L + 2.0L * a - 2.0L * std::sqrt(2.0L * a)) / a;
    if (a <= 1.0L / 3.0L) return 1.0L - 2.0L * a / (1.0L - a);
    return 0.0L;
}

std::array<bool, 5> conditions(const Rational& alpha, const Rational& theta) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const BigInt an = numerator(alpha), ad = denominator(alpha);
    const BigInt tn = numerator(theta), td = denominator(theta);

    std::array<bool, 5> c{};
    c[0] = td < tn && (an == 0 || an * tn <= ad * td);
    const BigInt lhs = ad * td * td + an * tn * td;  // (1 + a t) ad td^2
    const BigInt rhs = tn * td * ad - an * tn * tn;  // (t - a t^2) ad td^2
    c[1] = lhs < rhs;
    c[2] = lhs > rhs;
    c[3] = tn * (ad - an) > td * ad;
    c[4] = 2 * an < ad && tn * (ad - 2 * an) > td * ad;
    return c;
}

BigInt count_fillings(const CardinalityFamily& f, const TransitionMatrix& G) {
    if (f.left_blocks.empty()) return 1;
    const std::int64_t lo = f.left_blocks.back()[0], hi = f.left_blocks.front()[1];
    const auto len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<int> sym(len, f.boundary_symbol);
    std::vector<bool> fixed(len, false);
    for (const auto& b : f.left_blocks) {
        for (std::int64_t p = b[0]; p <= b[1]; ++p) fixed[static_cast<std::size_t>(p - lo)] = true;
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < len; ++i) {
        if (!fixed[i]) {
            free.push_back(i);
            sym[i] = 0;
        }
    }
    const int d = G.d;
    const double assignments = std::pow(static_cast<double>(d), static_cast<double>(free.size()));
    if (assignments > 1e10) throw BudgetExceeded("too many gap fillings to enumerate");

    auto bad_at = [&](std::size_t i) { return i + 1 < len && !G(sym[i], sym[i + 1]) ? 1 : 0; };
    auto around = [&](std::size_t p) { return (p > 0 ? bad_at(p - 1) : 0) + bad_at(p); };
    long bad = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) bad += bad_at(i);

    std::uint64_t count = bad == 0 ? 1 : 0;
    const auto total = static_cast<std::uint64_t>(assignments);
    if (d == 2) {
        for (std::uint64_t step = 1; step < total; ++step) {
            const std::size_t p = free[static_cast<std::size_t>(std::countr_zero(step))];
            bad -= around(p);
            sym[p] ^= 1;
            bad += around(p);
            if (bad == 0) ++count;
        }
        return count;
    }
    for (std::uint64_t step = 1; step < total; ++step) {
        for (std::size_t k = 0;; ++k) {
            const std::size_t p = free[k];
            bad -= around(p);
            sym[p] = (sym[p] + 1) % d;
            bad += around(p);
            if (sym[p] != 0) break;
        }
        if (bad == 0) ++count;
    }
    return count;
}

}  // namespace toral::oracle
