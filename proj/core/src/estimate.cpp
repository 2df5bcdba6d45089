#include "toral/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "toral/errors.hpp"

namespace toral {

namespace {

void validate(const ConstraintSpec& c) {
    if (!(c.alpha >= 0) || !std::isfinite(c.alpha)) throw std::invalid_argument("alpha must be finite and >= 0");
    if (c.M < 1 || c.N_max < c.M) throw std::invalid_argument("need 1 <= M <= N_max");
    if (!(c.lambda > 1)) throw std::invalid_argument("lambda must exceed 1");
}

}  // namespace

std::vector<EqualityBlock> equality_blocks(const ConstraintSpec& c) {
    validate(c);
    std::vector<EqualityBlock> out;
    for (int N = c.M; N <= c.N_max; ++N) {
        const std::int64_t r = ceil_alpha_n(c.alpha, N);
        if (r > 0) out.push_back({N, r});
    }
    return out;
}

std::int64_t minimal_radius(const ConstraintSpec& c) {
    std::int64_t m = 0;
    for (const auto& b : equality_blocks(c)) m = std::max(m, b.N + b.radius);
    return m;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& p = parent[static_cast<std::size_t>(x)];
            p = parent[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }
    // Keeps the smaller index as representative, i.e. the first occurrence.
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
    }
};

// Admissible labelings of positions 0..P-1 that are constant on classes.
// Sweeps left to right keeping the symbols of classes that are still open
// (seen, with members ahead) plus the previous symbol.
template <class Count>
Count count_labelings(const TransitionMatrix& G, UnionFind& uf, int P) {
    const int d = G.d;
    std::vector<int> rep(static_cast<std::size_t>(P)), last(static_cast<std::size_t>(P), -1);
    for (int p = 0; p < P; ++p) {
        rep[static_cast<std::size_t>(p)] = uf.find(p);
        last[static_cast<std::size_t>(rep[static_cast<std::size_t>(p)])] = p;
    }
    std::vector<int> open;  // classes carried in the state, in opening order
    std::vector<Count> state(static_cast<std::size_t>(d), Count(0));
    state[0] = 1;  // empty prefix; the previous symbol is ignored at p = 0
    std::vector<std::size_t> pow_d{1};
    auto ensure_pow = [&](std::size_t k) {
        while (pow_d.size() <= k) pow_d.push_back(pow_d.back() * static_cast<std::size_t>(d));
    };

    for (int p = 0; p < P; ++p) {
        const int cls = rep[static_cast<std::size_t>(p)];
        const auto it = std::find(open.begin(), open.end(), cls);
        const bool forced = it != open.end();
        const std::size_t forced_slot = forced ? static_cast<std::size_t>(it - open.begin()) : 0;

        std::vector<int> next_open;
        for (int c : open) {
            if (last[static_cast<std::size_t>(c)] > p) next_open.push_back(c);
        }
        if (!forced && last[static_cast<std::size_t>(cls)] > p) next_open.push_back(cls);
        ensure_pow(std::max(open.size(), next_open.size()) + 1);
        if (pow_d[next_open.size() + 1] > (std::size_t{1} << 26)) {
            throw BudgetExceeded("equality classes leave too wide a frontier to sweep");
        }
        // Slot of each next_open class in the old state (or the new symbol).
        std::vector<std::ptrdiff_t> from(next_open.size());
        for (std::size_t j = 0; j < next_open.size(); ++j) {
            auto f = std::find(open.begin(), open.end(), next_open[j]);
            from[j] = f == open.end() ? -1 : f - open.begin();
        }

        std::vector<Count> next(pow_d[next_open.size() + 1], Count(0));
        std::vector<int> syms(open.size());
        for (std::size_t idx = 0; idx < state.size(); ++idx) {
            if (state[idx] == 0) continue;
            const int prev = static_cast<int>(idx % static_cast<std::size_t>(d));
            std::size_t rest = idx / static_cast<std::size_t>(d);
            for (auto& s : syms) {
                s = static_cast<int>(rest % static_cast<std::size_t>(d));
                rest /= static_cast<std::size_t>(d);
            }
            const int lo = forced ? syms[forced_slot] : 0, hi = forced ? syms[forced_slot] : d - 1;
            for (int s = lo; s <= hi; ++s) {
                if (p > 0 && !G(prev, s)) continue;
                std::size_t key = 0;
                for (std::size_t j = next_open.size(); j-- > 0;) {
                    const int v = from[j] < 0 ? s : syms[static_cast<std::size_t>(from[j])];
                    key = key * static_cast<std::size_t>(d) + static_cast<std::size_t>(v);
                }
                next[key * static_cast<std::size_t>(d) + static_cast<std::size_t>(s)] += state[idx];
            }
        }
        open = std::move(next_open);
        state = std::move(next);
    }
    Count total(0);
    for (const auto& v : state) total += v;
    return total;
}

BigInt labelings(const TransitionMatrix& G, UnionFind& uf, int P) {
    // Every count is at most d^P; stay in machine words while that fits.
    if (static_cast<double>(P) * std::log2(static_cast<double>(G.d)) < 63.0) {
        return BigInt(count_labelings<std::uint64_t>(G, uf, P));
    }
    return count_labelings<BigInt>(G, uf, P);
}

}  // namespace

BigInt count_constrained_windows(const Sft& S, const ConstraintSpec& c, int m) {
    const auto blocks = equality_blocks(c);
    const std::int64_t need_m = minimal_radius(c);
    if (m < 0 || m < need_m) {
        throw WindowTooSmall("radius " + std::to_string(m) + " is below the " + std::to_string(need_m) +
                             " needed to read every witness");
    }
    const int P = 2 * m + 1;
    if (blocks.empty()) return count_admissible(S, P);

    // For each shift n, the radii it may be asked to certify, ascending.
    std::vector<int> shifts;
    std::vector<std::vector<std::int64_t>> radii;
    for (int n = 1; n <= c.N_max; ++n) {
        std::vector<std::int64_t> r;
        for (const auto& b : blocks) {
            if (b.N >= n) r.push_back(b.radius);
        }
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        if (r.empty()) continue;
        shifts.push_back(n);
        radii.push_back(std::move(r));
    }

    // A signature gives each shift a level: 0 = no claim, l = agreement on
    // |i| <= radii[l-1]. g(sig) counts windows meeting at least the claims.
    const std::size_t k = shifts.size();
    std::vector<std::size_t> base(k), stride(k);
    std::size_t total = 1;
    for (std::size_t j = 0; j < k; ++j) {
        base[j] = radii[j].size() + 1;
        stride[j] = total;
        if (total > std::numeric_limits<std::size_t>::max() / base[j] || total * base[j] > (std::size_t{1} << 22)) {
            throw BudgetExceeded("too many witness signatures; lower N_max");
        }
        total *= base[j];
    }
    auto level = [&](std::size_t sig, std::size_t j) { return (sig / stride[j]) % base[j]; };

    std::vector<BigInt> g(total);
    for (std::size_t sig = 0; sig < total; ++sig) {
        UnionFind uf(P);
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t l = level(sig, j);
            if (l == 0) continue;
            const std::int64_t r = radii[j][l - 1];
            for (std::int64_t i = -r; i <= r; ++i) {
                uf.unite(static_cast<int>(i + m), static_cast<int>(i + shifts[j] + m));
            }
        }
        g[sig] = labelings(S.gamma, uf, P);
    }
    // Differencing along every axis turns "at least" counts into exact ones.
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t sig = 0; sig < total; ++sig) {
            if (level(sig, j) + 1 < base[j]) g[sig] -= g[sig + stride[j]];
        }
    }
    BigInt count = 0;
    for (std::size_t sig = 0; sig < total; ++sig) {
        bool holds = true;
        for (const auto& b : blocks) {
            bool witnessed = false;
            for (std::size_t j = 0; j < k && !witnessed; ++j) {
                const std::size_t l = level(sig, j);
                witnessed = shifts[j] <= b.N && l > 0 && radii[j][l - 1] >= b.radius;
            }
            if (!witnessed) {
                holds = false;
                break;
            }
        }
        if (holds) count += g[sig];
    }
    return count;
}

BigInt brute_force_oracle(const Sft& S, const ConstraintSpec& c, int m) {
    validate(c);
    if (m < 0) throw std::invalid_argument("radius must be non-negative");
    const int P = 2 * m + 1;
    if (static_cast<double>(P) * std::log10(static_cast<double>(S.d)) > 8.0 + 1e-12) {
        throw BudgetExceeded("d^(2m+1) exceeds 1e8 windows");
    }
    SymbolicWindow w(-m, std::vector<int>(static_cast<std::size_t>(P), 0));
    BigInt count = 0;
    // Depth-first over admissible words, odometer style.
    std::vector<int> next_sym(static_cast<std::size_t>(P), 0);
    int pos = 0;
    while (pos >= 0) {
        if (pos == P) {
            if (uniform_recurrence_check(w, c.alpha, c.M, c.N_max, c.lambda).status == Recurrence::Holds) ++count;
            --pos;
            continue;
        }
        auto& s = next_sym[static_cast<std::size_t>(pos)];
        while (s < S.d && pos > 0 && !S.gamma(w.symbols[static_cast<std::size_t>(pos - 1)], s)) ++s;
        if (s == S.d) {
            s = 0;
            --pos;
            continue;
        }
        w.symbols[static_cast<std::size_t>(pos)] = s++;
        ++pos;
    }
    return count;
}

CountCurve fit_dimension_logs(const std::vector<int>& radii, const std::vector<double>& log_counts, double lambda) {
    if (radii.size() != log_counts.size()) throw std::invalid_argument("radii and counts differ in length");
    if (radii.size() < 3) throw std::invalid_argument("fit needs at least 3 points");
    if (!(lambda > 1)) throw std::invalid_argument("lambda must exceed 1");
    for (double v : log_counts) {
        if (!std::isfinite(v)) throw std::invalid_argument("counts must be positive");
    }
    std::vector<std::size_t> order(radii.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return radii[a] < radii[b]; });

    CountCurve out;
    for (auto i : order) {
        out.radii.push_back(radii[i]);
        out.log_counts.push_back(log_counts[i]);
    }
    const std::size_t first = out.radii.size() / 2;
    const double ll = std::log(lambda);
    double sx = 0, sy = 0;
    const auto n = static_cast<double>(out.radii.size() - first);
    for (std::size_t i = first; i < out.radii.size(); ++i) {
        sx += out.radii[i] * ll;
        sy += out.log_counts[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = first; i < out.radii.size(); ++i) {
        const double dx = out.radii[i] * ll - mx;
        sxx += dx * dx;
        sxy += dx * (out.log_counts[i] - my);
    }
    if (sxx == 0) throw DegenerateFit("all fitted radii are equal");
    const double slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = first; i < out.radii.size(); ++i) {
        const double r = out.log_counts[i] - (my + slope * (out.radii[i] * ll - mx));
        rss += r * r;
    }
    out.residual = std::sqrt(rss / n);
    out.slope = std::clamp(slope, 0.0, 2.0);
    out.clamped = out.slope != slope;
    return out;
}

CountCurve fit_dimension(const std::vector<int>& radii, const std::vector<BigInt>& counts, double lambda) {
    std::vector<double> logs;
    for (const auto& c : counts) {
        if (c <= 0) throw std::invalid_argument("counts must be positive");
        logs.push_back(log_big(c));
    }
    return fit_dimension_logs(radii, logs, lambda);
}

}  // namespace toral
