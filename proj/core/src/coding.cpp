#include "toral/coding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toral/errors.hpp"

namespace toral {

namespace {

std::pair<QuadNum, QuadNum> ordered(QuadNum a, QuadNum b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

const std::array<QuadNum, 2>& unique_shift(const PreparedPartition& P, int i, int j, std::int64_t pos) {
    const auto& shifts = P.trans.at(i, j);
    if (shifts.empty()) {
        throw InadmissibleWindow("transition " + std::to_string(i) + " -> " + std::to_string(j) + " at position " +
                                 std::to_string(pos) + " is forbidden");
    }
    if (shifts.size() > 1) {
        throw MalformedPartition("T(P" + std::to_string(i) + ") meets P" + std::to_string(j) +
                                 " in several pieces; cylinders are not parallelograms");
    }
    return P.offsets[static_cast<std::size_t>(i * P.size() + j)];
}

}  // namespace

namespace {

// (p + q lambda) / D for the shared denominator D of a prepared partition.
// Cylinder recursions multiply only by units of Z[lambda], so D never changes
// and no gcd work is needed.
struct ZQuad {
    BigInt p, q;
};

ZQuad operator+(const ZQuad& a, const ZQuad& b) { return {a.p + b.p, a.q + b.q}; }
ZQuad operator-(const ZQuad& a, const ZQuad& b) { return {a.p - b.p, a.q - b.q}; }

ZQuad times(const ZQuad& a, const ZQuad& unit, const QuadContext& ctx) {
    BigInt qq = a.q * unit.q;
    return {a.p * unit.p - qq * ctx.det, a.p * unit.q + a.q * unit.p + qq * ctx.trace};
}

QuadNum to_quad(const ZQuad& z, const BigInt& D, const QuadContext& ctx) {
    return {Rational(z.p, D), Rational(z.q, D), ctx};
}

int zsign(const ZQuad& z, double lam, const QuadContext& ctx) {
    const double pd = z.p.convert_to<double>(), qd = z.q.convert_to<double>() * lam;
    const double sum = pd + qd;
    if (std::abs(sum) > 1e-9 * (std::abs(pd) + std::abs(qd))) return sum > 0 ? 1 : -1;
    return quad_sign(QuadNum(Rational(z.p), Rational(z.q), ctx));
}

}  // namespace

struct PreparedPartition::Scaled {
    BigInt D;
    std::vector<std::array<ZQuad, 4>> bounds;  // u_lo, u_hi, s_lo, s_hi per element
    std::vector<std::array<ZQuad, 2>> offsets;
    ZQuad lam_inv, mu;
};

namespace {

BigInt common_denominator(const std::vector<const QuadNum*>& vals) {
    BigInt D = 1;
    for (const QuadNum* v : vals) {
        for (const Rational* r : {&v->p(), &v->q()}) {
            const BigInt& den = boost::multiprecision::denominator(*r);
            D = D / boost::multiprecision::gcd(D, den) * den;
        }
    }
    return D;
}

ZQuad scale(const QuadNum& v, const BigInt& D) {
    auto whole = [&](const Rational& r) -> BigInt {
        return boost::multiprecision::numerator(r) * (D / boost::multiprecision::denominator(r));
    };
    return {whole(v.p()), whole(v.q())};
}

}  // namespace

PreparedPartition::PreparedPartition(MarkovPartition P)
    : partition(std::move(P)), frame(partition.automorphism), trans(transitions(partition)) {
    const int d = size();
    offsets.resize(static_cast<std::size_t>(d * d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const auto& sh = trans.at(i, j);
            if (!sh.empty()) offsets[static_cast<std::size_t>(i * d + j)] = frame.lattice(sh.front()[0], sh.front()[1]);
        }
    }
    const auto& el = partition.elements;
    std::vector<QuadNum> bounds;
    for (const auto& e : el) {
        for (QuadNum v : {e.u_lo(), e.u_hi(), e.s_lo(), e.s_hi()}) bounds.push_back(std::move(v));
    }
    std::vector<const QuadNum*> all;
    for (const auto& v : bounds) all.push_back(&v);
    for (const auto& o : offsets) all.insert(all.end(), {&o[0], &o[1]});

    auto z = std::make_shared<Scaled>();
    z->D = common_denominator(all);
    for (std::size_t i = 0; i < el.size(); ++i) {
        z->bounds.push_back({scale(bounds[4 * i], z->D), scale(bounds[4 * i + 1], z->D),
                             scale(bounds[4 * i + 2], z->D), scale(bounds[4 * i + 3], z->D)});
    }
    for (const auto& o : offsets) z->offsets.push_back({scale(o[0], z->D), scale(o[1], z->D)});
    // Both are units of Z[lambda] because |det| = 1.
    z->lam_inv = scale(frame.spec.lambda_inv, 1);
    z->mu = scale(frame.spec.mu, 1);
    scaled = std::move(z);
}

GeometricCylinder cylinder_region(const PreparedPartition& P, const SymbolicWindow& w) {
    if (!w.contains(0)) throw DomainMismatch("cylinder window must contain position 0");
    const int d = P.size();
    for (int s : w.symbols) {
        if (s < 0 || s >= d) throw InadmissibleWindow("symbol " + std::to_string(s) + " is not a partition element");
    }
    const auto& Z = *P.scaled;
    const auto& ctx = P.frame.spec.context;
    const double lam = P.frame.spec.lambda_value;
    auto offset = [&](int a, int b, std::int64_t pos) -> const std::array<ZQuad, 2>& {
        unique_shift(P, a, b, pos);
        return Z.offsets[static_cast<std::size_t>(a * d + b)];
    };
    auto clip = [&](ZQuad& lo, ZQuad& hi, ZQuad x, ZQuad y, const ZQuad& lo_bound, const ZQuad& hi_bound) {
        if (zsign(y - x, lam, ctx) < 0) std::swap(x, y);
        lo = zsign(x - lo_bound, lam, ctx) > 0 ? std::move(x) : lo_bound;
        hi = zsign(y - hi_bound, lam, ctx) < 0 ? std::move(y) : hi_bound;
        return zsign(hi - lo, lam, ctx) > 0;
    };

    // Future symbols cut the unstable interval, pulled back one step at a time.
    ZQuad u0 = Z.bounds[w.at(w.hi)][0], u1 = Z.bounds[w.at(w.hi)][1];
    for (std::int64_t j = w.hi - 1; j >= 0; --j) {
        const int a = w.at(j), b = w.at(j + 1);
        const auto& t = offset(a, b, j);
        if (!clip(u0, u1, times(u0 + t[0], Z.lam_inv, ctx), times(u1 + t[0], Z.lam_inv, ctx), Z.bounds[a][0],
                  Z.bounds[a][1])) {
            throw InadmissibleWindow("future symbols leave no room at position " + std::to_string(j));
        }
    }
    // Past symbols cut the stable interval, pushed forward.
    ZQuad s0 = Z.bounds[w.at(w.lo)][2], s1 = Z.bounds[w.at(w.lo)][3];
    for (std::int64_t j = w.lo; j < 0; ++j) {
        const int a = w.at(j), b = w.at(j + 1);
        const auto& t = offset(a, b, j);
        if (!clip(s0, s1, times(s0, Z.mu, ctx) - t[1], times(s1, Z.mu, ctx) - t[1], Z.bounds[b][2], Z.bounds[b][3])) {
            throw InadmissibleWindow("past symbols leave no room at position " + std::to_string(j + 1));
        }
    }
    GeometricCylinder c;
    c.window = w;
    c.region = {{to_quad(u0, Z.D, ctx), to_quad(s0, Z.D, ctx)}, to_quad(u1 - u0, Z.D, ctx), to_quad(s1 - s0, Z.D, ctx)};
    c.diameter = std::sqrt(element_diameter_sq(P.frame, c.region.u_extent, c.region.s_extent).to_double());
    return c;
}

GeometricCylinder cylinder_region(const MarkovPartition& P, const SymbolicWindow& w) {
    return cylinder_region(PreparedPartition(P), w);
}

Parallelogram map_region(const EigenFrame& frame, const Parallelogram& r, const LatticeShift& n) {
    const auto t = frame.lattice(n[0], n[1]);
    auto [u0, u1] = ordered(frame.spec.lambda * r.u_lo() - t[0], frame.spec.lambda * r.u_hi() - t[0]);
    auto [s0, s1] = ordered(frame.spec.mu * r.s_lo() - t[1], frame.spec.mu * r.s_hi() - t[1]);
    return {{u0, s0}, u1 - u0, s1 - s0};
}

namespace {

struct Hit {
    int element = -1;
    std::array<QuadNum, 2> coords;
    bool boundary = false;
};

Hit find_element(const PreparedPartition& P, const TorusPointQ& x) {
    const auto base = P.frame.to_eigen(x.x, x.y);
    const double px = to_double(x.x), py = to_double(x.y);
    Hit hit;
    const auto& el = P.partition.elements;
    for (int i = 0; i < P.size(); ++i) {
        const auto& e = el[i];
        double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
        for (double u : {e.u_lo().to_double(), e.u_hi().to_double()}) {
            for (double s : {e.s_lo().to_double(), e.s_hi().to_double()}) {
                auto a = P.frame.to_ambient(u, s);
                xlo = std::min(xlo, a[0]);
                xhi = std::max(xhi, a[0]);
                ylo = std::min(ylo, a[1]);
                yhi = std::max(yhi, a[1]);
            }
        }
        const auto m0 = static_cast<std::int64_t>(std::floor(xlo - px)) - 1;
        const auto m1 = static_cast<std::int64_t>(std::ceil(xhi - px)) + 1;
        const auto n0 = static_cast<std::int64_t>(std::floor(ylo - py)) - 1;
        const auto n1 = static_cast<std::int64_t>(std::ceil(yhi - py)) + 1;
        for (auto m = m0; m <= m1; ++m) {
            for (auto n = n0; n <= n1; ++n) {
                const auto t = P.frame.lattice(m, n);
                const QuadNum u = base[0] + t[0], s = base[1] + t[1];
                const int cu0 = compare(u, e.u_lo()), cu1 = compare(u, e.u_hi());
                const int cs0 = compare(s, e.s_lo()), cs1 = compare(s, e.s_hi());
                if (cu0 < 0 || cu1 > 0 || cs0 < 0 || cs1 > 0) continue;
                if (cu0 == 0 || cu1 == 0 || cs0 == 0 || cs1 == 0) {
                    hit.boundary = true;
                    continue;
                }
                if (hit.element >= 0) throw MalformedPartition("point lies in the interior of two elements");
                hit.element = i;
                hit.coords = {u, s};
            }
        }
    }
    return hit;
}

}  // namespace

Location locate(const PreparedPartition& P, const TorusPointQ& x) {
    const Hit h = find_element(P, x);
    if (h.boundary) throw BoundaryHit(0, "point lies on a partition boundary");
    if (h.element < 0) throw MalformedPartition("point is not covered by the partition");
    return {h.element, h.coords};
}

SymbolicWindow itinerary(const PreparedPartition& P, const TorusPointQ& x, int m) {
    if (m < 0) throw std::invalid_argument("itinerary radius must be non-negative");
    std::vector<int> syms;
    for (int j = -m; j <= m; ++j) {
        const TorusPointQ y = iterate_point(P.partition.automorphism, x, j);
        const Hit h = find_element(P, y);
        if (h.boundary) {
            throw BoundaryHit(j, "iterate T^" + std::to_string(j) + " x lies on a partition boundary");
        }
        if (h.element < 0) throw MalformedPartition("iterate T^" + std::to_string(j) + " x is not covered");
        syms.push_back(h.element);
    }
    return SymbolicWindow(-m, std::move(syms));
}

SymbolicWindow itinerary(const MarkovPartition& P, const TorusPointQ& x, int m) {
    return itinerary(PreparedPartition(P), x, m);
}

SymbolicWindow random_admissible_window(const TransitionMatrix& G, std::int64_t lo, std::int64_t hi,
                                        std::mt19937_64& rng) {
    if (hi < lo) throw std::invalid_argument("empty window");
    std::vector<std::vector<int>> succ(G.d);
    for (int i = 0; i < G.d; ++i) {
        for (int j = 0; j < G.d; ++j) {
            if (G(i, j)) succ[i].push_back(j);
        }
    }
    const auto len = static_cast<std::size_t>(hi - lo + 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> syms{static_cast<int>(rng() % static_cast<std::uint64_t>(G.d))};
        while (syms.size() < len && !succ[syms.back()].empty()) {
            const auto& s = succ[syms.back()];
            syms.push_back(s[rng() % s.size()]);
        }
        if (syms.size() == len) return SymbolicWindow(lo, std::move(syms));
    }
    throw InadmissibleWindow("could not sample an admissible window of length " + std::to_string(len));
}

int DiameterReport::violations() const {
    int v = 0;
    for (const auto& r : rows) v += r.violations();
    return v;
}

namespace {

QuadNum power(QuadNum base, int e) {
    QuadNum out(1);
    for (int k = 0; k < e; ++k) out *= base;
    return out;
}

QuadNum dist_sq(const std::array<QuadNum, 2>& a, const std::array<QuadNum, 2>& b) {
    const QuadNum dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

std::vector<std::array<QuadNum, 2>> corners(const EigenFrame& f, const Parallelogram& r) {
    std::vector<std::array<QuadNum, 2>> out;
    for (const QuadNum& u : {r.u_lo(), r.u_hi()}) {
        for (const QuadNum& s : {r.s_lo(), r.s_hi()}) out.push_back(f.to_ambient(u, s));
    }
    return out;
}

QuadNum far_sq_exact(const EigenFrame& f, const Parallelogram& a, const Parallelogram& b) {
    QuadNum far(0);
    for (const auto& p : corners(f, a)) {
        for (const auto& q : corners(f, b)) far = max(far, dist_sq(p, q));
    }
    return far;
}

double far_sq_double(const EigenFrame& f, const Parallelogram& a, const Parallelogram& b) {
    auto pts = [&](const Parallelogram& r) {
        const double u0 = r.u_lo().to_double(), s0 = r.s_lo().to_double();
        const double du = r.u_extent.to_double(), ds = r.s_extent.to_double();
        std::vector<std::array<double, 2>> out;
        for (double u : {u0, u0 + du}) {
            for (double s : {s0, s0 + ds}) out.push_back(f.to_ambient(u, s));
        }
        return out;
    };
    double far = 0;
    for (const auto& p : pts(a)) {
        for (const auto& q : pts(b)) far = std::max(far, std::hypot(p[0] - q[0], p[1] - q[1]));
    }
    return far * far;
}

}  // namespace

DiameterReport diameter_ratio_check(const MarkovPartition& partition, int samples, int m_max, std::uint64_t seed) {
    if (samples < 1 || m_max < 0) throw std::invalid_argument("need samples >= 1 and m_max >= 0");
    const PreparedPartition P(partition);
    DiameterReport rep;
    rep.constants = geometry_constants(partition);

    QuadNum cmin_sq, cmax_sq;
    for (std::size_t i = 0; i < partition.elements.size(); ++i) {
        const auto& e = partition.elements[i];
        QuadNum dsq = element_diameter_sq(P.frame, e.u_extent, e.s_extent);
        if (i == 0 || dsq < cmin_sq) cmin_sq = dsq;
        if (i == 0 || dsq > cmax_sq) cmax_sq = dsq;
    }
    const QuadNum lam_inv_sq = P.frame.spec.lambda_inv * P.frame.spec.lambda_inv;
    const double lam = std::abs(P.frame.spec.lambda_value);
    std::mt19937_64 rng(seed);
    const auto& G = P.trans.gamma;

    for (int m = 0; m <= m_max; ++m) {
        RatioRow row;
        row.m = m;
        row.samples = samples;
        row.min_ratio = std::numeric_limits<double>::infinity();
        const QuadNum scale = power(lam_inv_sq, m);
        const QuadNum lo_sq = cmin_sq * scale, hi_sq = cmax_sq * scale;

        for (int s = 0; s < samples; ++s) {
            // Cylinder comparability at level m.
            const SymbolicWindow w = random_admissible_window(G, -m, m, rng);
            const GeometricCylinder c = cylinder_region(P, w);
            const QuadNum dsq = element_diameter_sq(P.frame, c.region.u_extent, c.region.s_extent);
            if (dsq < lo_sq || dsq > hi_sq) ++row.diameter_violations;
            const double ratio = c.diameter * std::pow(lam, m);
            row.min_ratio = std::min(row.min_ratio, ratio);
            row.max_ratio = std::max(row.max_ratio, ratio);

            // Lipschitz: x, y agree on |i| <= m and differ at |i| = m + 1, so
            // d_sigma = lambda^-m and both points lie in the level-(m+1) cylinders.
            SymbolicWindow x = random_admissible_window(G, -(m + 1), m + 1, rng);
            SymbolicWindow y = x;
            bool made = false;
            const int first = static_cast<int>(rng() % 2);
            for (int side : {first, 1 - first}) {
                const std::int64_t pos = (side == 1) ? m + 1 : -(m + 1);
                const int nb = pos > 0 ? x.at(pos - 1) : x.at(pos + 1);
                for (int sym = 0; sym < G.d && !made; ++sym) {
                    if (sym == x.at(pos)) continue;
                    if (pos > 0 ? !G(nb, sym) : !G(sym, nb)) continue;
                    y.symbols[static_cast<std::size_t>(pos - y.lo)] = sym;
                    made = true;
                }
                if (made) break;
            }
            if (!made) continue;
            const Parallelogram rx = cylinder_region(P, x).region, ry = cylinder_region(P, y).region;
            const double far_d = far_sq_double(P.frame, rx, ry), hi_d = hi_sq.to_double();
            rep.worst_lipschitz_ratio = std::max(rep.worst_lipschitz_ratio, std::sqrt(far_d / hi_d));
            // Corner positions in doubles are good to about 1e-15 absolute;
            // only a near tie needs the exact corners.
            if (far_d > hi_d * (1 - 1e-6) && far_sq_exact(P.frame, rx, ry) > hi_sq) ++row.lipschitz_violations;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace toral
