#include "toral/shift.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "toral/errors.hpp"

namespace toral {

Sft::Sft(TransitionMatrix g, double metric_base) : d(g.d), gamma(std::move(g)), lambda(metric_base) {
    if (d < 1) throw std::invalid_argument("shift needs at least one symbol");
    if (!(lambda > 1.0)) throw std::invalid_argument("metric base must exceed 1");
}

Sft golden_mean_shift() { return Sft(TransitionMatrix(2, {1, 1, 1, 0}), (1.0 + std::sqrt(5.0)) / 2.0); }

Sft full_shift_sft(int d) { return Sft(full_shift(d), static_cast<double>(d)); }

SymbolicWindow::SymbolicWindow(std::int64_t lo_, std::vector<int> syms)
    : lo(lo_), hi(lo_ + static_cast<std::int64_t>(syms.size()) - 1), symbols(std::move(syms)) {
    if (symbols.empty()) throw std::invalid_argument("window must hold at least one symbol");
}

Cylinder symmetric_cylinder(const SymbolicWindow& w, std::int64_t n) {
    if (!w.contains(-n) || !w.contains(n)) throw DomainMismatch("window does not cover [-n, n]");
    std::vector<int> syms;
    for (auto i = -n; i <= n; ++i) syms.push_back(w.at(i));
    return {SymbolicWindow(-n, std::move(syms))};
}

bool admissible(const SymbolicWindow& w, const TransitionMatrix& G) {
    for (int s : w.symbols) {
        if (s < 0 || s >= G.d) return false;
    }
    for (std::size_t k = 0; k + 1 < w.symbols.size(); ++k) {
        if (!G(w.symbols[k], w.symbols[k + 1])) return false;
    }
    return true;
}

namespace {

// Largest k with agreement on |i| <= k (-1 if position 0 differs), and
// whether a disagreement bounded it (otherwise the data ran out at k).
struct Agreement {
    std::int64_t k;
    bool exact;
};

Agreement agreement(const SymbolicWindow& a, std::int64_t a_offset, const SymbolicWindow& b) {
    // Compares a_{i + a_offset} with b_i.
    const std::int64_t radius = std::min({a.hi - a_offset, -(a.lo - a_offset), b.hi, -b.lo});
    for (std::int64_t n = 0; n <= radius; ++n) {
        if (a.at(n + a_offset) != b.at(n) || a.at(-n + a_offset) != b.at(-n)) return {n - 1, true};
    }
    return {radius, false};
}

double metric_value(std::int64_t k, double lambda) { return k < 0 ? 1.0 : std::pow(lambda, -static_cast<double>(k)); }

}  // namespace

MetricBounds symbolic_metric(const SymbolicWindow& w1, const SymbolicWindow& w2, double lambda) {
    if (!w1.contains(0) || !w2.contains(0)) throw DomainMismatch("both windows must contain position 0");
    const Agreement ag = agreement(w1, 0, w2);
    if (ag.exact) {
        const double v = metric_value(ag.k, lambda);
        return {v, v};
    }
    return {0.0, metric_value(ag.k, lambda)};
}

SymbolicWindow shift_window(const SymbolicWindow& w, std::int64_t n) {
    SymbolicWindow out = w;
    out.lo -= n;
    out.hi -= n;
    return out;
}

BigInt count_admissible(const Sft& S, int n) {
    if (n < 1) throw std::invalid_argument("word length must be positive");
    const int d = S.d;
    std::vector<BigInt> v(d, 1), next(d);
    for (int step = 1; step < n; ++step) {
        for (int j = 0; j < d; ++j) {
            BigInt s = 0;
            for (int i = 0; i < d; ++i) {
                if (S.gamma(i, j)) s += v[i];
            }
            next[j] = std::move(s);
        }
        std::swap(v, next);
    }
    BigInt total = 0;
    for (const auto& x : v) total += x;
    return total;
}

double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log of a non-positive integer");
    const auto bits = boost::multiprecision::msb(v);
    if (bits < 1000) return std::log(v.convert_to<double>());
    const unsigned drop = static_cast<unsigned>(bits) - 60;
    BigInt top = v >> drop;
    return std::log(top.convert_to<double>()) + drop * std::log(2.0);
}

EntropyEstimate entropy_estimate(const Sft& S, int n) {
    EntropyEstimate e;
    e.value = log_big(count_admissible(S, n)) / n;
    e.limit = std::log(spectral_radius(S.gamma));
    return e;
}

std::int64_t ceil_alpha_n(double alpha, std::int64_t N) {
    const double n = static_cast<double>(N);
    const double v = alpha * n;
    if (std::abs(v) < 0x1p52 && std::abs(n) < 0x1p52) {
        // alpha N = v + r exactly; r is below half an ulp of v, so it only
        // matters when v is itself an integer.
        const double r = std::fma(alpha, n, -v);
        const double c = std::ceil(v);
        return static_cast<std::int64_t>(c == v && r > 0 ? c + 1 : c);
    }
    return ceil(rational_from_double(alpha) * N).convert_to<std::int64_t>();
}

RecurrenceResult uniform_recurrence_check(const SymbolicWindow& w, double alpha, int M, int N_max, double lambda) {
    if (alpha < 0) throw std::invalid_argument("alpha must be non-negative");
    if (M < 1 || M > N_max) throw std::invalid_argument("need 1 <= M <= N_max");
    if (!(lambda > 1)) throw std::invalid_argument("metric base must exceed 1");
    if (!w.contains(0)) throw DomainMismatch("window must contain position 0");

    // Comparisons happen on exponents: lambda^-k <= lambda^-(alpha N) iff
    // k >= alpha N, which is exact where the reals would round.
    int first_fail = 0, first_open = 0;
    for (int N = M; N <= N_max; ++N) {
        const std::int64_t need = ceil_alpha_n(alpha, N);
        if (need == 0) continue;  // threshold 1 bounds every distance
        bool witnessed = false, refuted_all = true;
        for (int n = 1; n <= N && !witnessed; ++n) {
            if (n > w.hi) {
                refuted_all = false;  // no data for this shift
                continue;
            }
            const Agreement ag = agreement(w, n, w);
            if (ag.k >= need) {
                witnessed = true;
            } else if (!ag.exact) {
                refuted_all = false;
            }
        }
        if (witnessed) continue;
        if (refuted_all) {
            if (!first_fail) first_fail = N;
        } else if (!first_open) {
            first_open = N;
        }
    }
    if (first_fail) return {Recurrence::Fails, first_fail};
    if (first_open) return {Recurrence::Undetermined, first_open};
    return {Recurrence::Holds, 0};
}

std::string to_string(Recurrence r) {
    switch (r) {
        case Recurrence::Holds: return "Holds";
        case Recurrence::Fails: return "Fails";
        case Recurrence::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string format_window(const SymbolicWindow& w) {
    std::ostringstream os;
    os << w.lo << ' ' << w.hi;
    for (int s : w.symbols) os << ' ' << s;
    return os.str();
}

SymbolicWindow parse_window(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::int64_t lo = 0, hi = 0;
    if (!(is >> lo >> hi) || hi < lo) throw std::invalid_argument("window needs 'lo hi' with lo <= hi");
    std::vector<int> syms;
    int s = 0;
    while (is >> s) syms.push_back(s);
    if (!is.eof()) throw std::invalid_argument("window symbols must be integers");
    if (static_cast<std::int64_t>(syms.size()) != hi - lo + 1) {
        throw std::invalid_argument("window lists " + std::to_string(syms.size()) + " symbols for " +
                                    std::to_string(hi - lo + 1) + " positions");
    }
    return SymbolicWindow(lo, std::move(syms));
}

}  // namespace toral
