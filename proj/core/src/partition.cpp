#include "toral/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "toral/errors.hpp"

namespace toral {

namespace {

struct Rect {
    QuadNum u0, u1, s0, s1;
};

struct Box {
    double xlo, xhi, ylo, yhi;
};

Rect rect_of(const Parallelogram& e) { return {e.u_lo(), e.u_hi(), e.s_lo(), e.s_hi()}; }

std::pair<QuadNum, QuadNum> scaled(const QuadNum& factor, const QuadNum& lo, const QuadNum& hi) {
    QuadNum a = factor * lo, b = factor * hi;
    if (quad_sign(factor) < 0) std::swap(a, b);
    return {a, b};
}

Rect image(const EigenFrame& f, const Rect& r) {
    auto [u0, u1] = scaled(f.spec.lambda, r.u0, r.u1);
    auto [s0, s1] = scaled(f.spec.mu, r.s0, r.s1);
    return {u0, u1, s0, s1};
}

Rect translated(const EigenFrame& f, const Rect& r, const LatticeShift& n) {
    auto t = f.lattice(n[0], n[1]);
    return {r.u0 + t[0], r.u1 + t[0], r.s0 + t[1], r.s1 + t[1]};
}

bool open_overlap(const QuadNum& a0, const QuadNum& a1, const QuadNum& b0, const QuadNum& b1) {
    return max(a0, b0) < min(a1, b1);
}

bool open_intersects(const Rect& a, const Rect& b) {
    return open_overlap(a.u0, a.u1, b.u0, b.u1) && open_overlap(a.s0, a.s1, b.s0, b.s1);
}

Box box_of(const EigenFrame& f, const Rect& r) {
    const double u[2] = {r.u0.to_double(), r.u1.to_double()};
    const double s[2] = {r.s0.to_double(), r.s1.to_double()};
    Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double uu : u) {
        for (double ss : s) {
            auto p = f.to_ambient(uu, ss);
            b.xlo = std::min(b.xlo, p[0]);
            b.xhi = std::max(b.xhi, p[0]);
            b.ylo = std::min(b.ylo, p[1]);
            b.yhi = std::max(b.yhi, p[1]);
        }
    }
    return b;
}

// Lattice shifts n for which box `b` can meet box `a` + n. A superset: every
// candidate is then tested exactly.
std::vector<LatticeShift> candidate_shifts(const Box& a, const Box& b) {
    std::vector<LatticeShift> out;
    const auto m0 = static_cast<std::int64_t>(std::floor(b.xlo - a.xhi)) - 1;
    const auto m1 = static_cast<std::int64_t>(std::ceil(b.xhi - a.xlo)) + 1;
    const auto n0 = static_cast<std::int64_t>(std::floor(b.ylo - a.yhi)) - 1;
    const auto n1 = static_cast<std::int64_t>(std::ceil(b.yhi - a.ylo)) + 1;
    for (auto m = m0; m <= m1; ++m) {
        for (auto n = n0; n <= n1; ++n) out.push_back({m, n});
    }
    return out;
}

void check_extents(const MarkovPartition& P) {
    if (P.elements.empty()) throw MalformedPartition("partition has no elements");
    for (std::size_t i = 0; i < P.elements.size(); ++i) {
        const auto& e = P.elements[i];
        if (quad_sign(e.u_extent) <= 0 || quad_sign(e.s_extent) <= 0) {
            throw MalformedPartition("element " + std::to_string(i) + " has a non-positive extent");
        }
    }
}

}  // namespace

TransitionMatrix::TransitionMatrix(int dim, std::vector<std::uint8_t> e) : d(dim), entries(std::move(e)) {
    if (dim < 0 || entries.size() != static_cast<std::size_t>(dim) * dim) {
        throw std::invalid_argument("transition matrix entries do not match its dimension");
    }
    for (auto v : entries) {
        if (v > 1) throw std::invalid_argument("transition matrix entries must be 0 or 1");
    }
}

TransitionMatrix full_shift(int d) { return TransitionMatrix(d, std::vector<std::uint8_t>(static_cast<std::size_t>(d) * d, 1)); }

std::vector<int> zero_rows(const TransitionMatrix& G) {
    std::vector<int> out;
    for (int i = 0; i < G.d; ++i) {
        bool any = false;
        for (int j = 0; j < G.d; ++j) any = any || G(i, j);
        if (!any) out.push_back(i);
    }
    return out;
}

std::vector<int> zero_columns(const TransitionMatrix& G) {
    std::vector<int> out;
    for (int j = 0; j < G.d; ++j) {
        bool any = false;
        for (int i = 0; i < G.d; ++i) any = any || G(i, j);
        if (!any) out.push_back(j);
    }
    return out;
}

bool irreducible(const TransitionMatrix& G) {
    if (G.d == 0) return false;
    // Every state reaches every other: transitive closure by repeated BFS.
    for (int s = 0; s < G.d; ++s) {
        std::vector<char> seen(G.d, 0);
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < G.d; ++j) {
                if (G(i, j) && !seen[j]) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    }
    return true;
}

QuadNum element_area(const EigenFrame& frame, const Parallelogram& e) {
    return e.u_extent * e.s_extent * abs(frame.jacobian);
}

ValidationReport validate_partition(const MarkovPartition& P) {
    check_extents(P);
    const EigenFrame frame(P.automorphism);
    ValidationReport rep;
    const std::size_t d = P.elements.size();

    QuadNum area(0);
    for (const auto& e : P.elements) area += element_area(frame, e);
    rep.cover = area == QuadNum(1);
    if (!rep.cover) rep.problems.push_back("areas sum to " + to_string(area) + " (expected 1)");

    std::vector<Rect> rects;
    std::vector<Box> boxes;
    for (const auto& e : P.elements) {
        rects.push_back(rect_of(e));
        boxes.push_back(box_of(frame, rects.back()));
    }

    rep.disjoint = true;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            for (const auto& n : candidate_shifts(boxes[j], boxes[i])) {
                if (i == j && n[0] == 0 && n[1] == 0) continue;
                if (open_intersects(rects[i], translated(frame, rects[j], n))) {
                    rep.disjoint = false;
                    rep.problems.push_back("interiors of elements " + std::to_string(i) + " and " + std::to_string(j) +
                                           " overlap (translate " + std::to_string(n[0]) + "," +
                                           std::to_string(n[1]) + ")");
                }
            }
        }
    }

    rep.markov = true;
    rep.single_crossing = true;
    for (std::size_t i = 0; i < d; ++i) {
        const Rect img = image(frame, rects[i]);
        const Box ib = box_of(frame, img);
        for (std::size_t j = 0; j < d; ++j) {
            int hits = 0;
            for (const auto& n : candidate_shifts(boxes[j], ib)) {
                const Rect target = translated(frame, rects[j], n);
                if (!open_intersects(img, target)) continue;
                ++hits;
                const bool crosses = img.u0 <= target.u0 && img.u1 >= target.u1;
                const bool contained = img.s0 >= target.s0 && img.s1 <= target.s1;
                if (!crosses || !contained) {
                    rep.markov = false;
                    rep.problems.push_back("T(P" + std::to_string(i) + ") meets P" + std::to_string(j) +
                                           (crosses ? "" : " without crossing it in the unstable direction") +
                                           (contained ? "" : " without stable containment"));
                }
            }
            if (hits > 1) {
                rep.single_crossing = false;
                rep.problems.push_back("T(P" + std::to_string(i) + ") meets P" + std::to_string(j) + " in " +
                                       std::to_string(hits) + " pieces");
            }
        }
    }
    return rep;
}

Transitions transitions(const MarkovPartition& P) {
    check_extents(P);
    const EigenFrame frame(P.automorphism);
    const int d = static_cast<int>(P.elements.size());
    Transitions out{TransitionMatrix(d), std::vector<std::vector<LatticeShift>>(static_cast<std::size_t>(d) * d)};
    std::vector<Rect> rects;
    std::vector<Box> boxes;
    for (const auto& e : P.elements) {
        rects.push_back(rect_of(e));
        boxes.push_back(box_of(frame, rects.back()));
    }
    for (int i = 0; i < d; ++i) {
        const Rect img = image(frame, rects[i]);
        const Box ib = box_of(frame, img);
        for (int j = 0; j < d; ++j) {
            for (const auto& n : candidate_shifts(boxes[j], ib)) {
                if (open_intersects(img, translated(frame, rects[j], n))) {
                    out.gamma(i, j) = 1;
                    out.shifts[static_cast<std::size_t>(i) * d + j].push_back(n);
                }
            }
        }
    }
    return out;
}

TransitionMatrix transition_matrix(const MarkovPartition& P) { return transitions(P).gamma; }

namespace {

// Characteristic polynomial coefficients c_0..c_d of det(xI - G), c_d = 1,
// by Faddeev-LeVerrier in exact rationals.
std::vector<Rational> char_poly(const TransitionMatrix& G) {
    const int d = G.d;
    std::vector<Rational> c(d + 1);
    c[d] = 1;
    std::vector<Rational> M(static_cast<std::size_t>(d) * d, Rational(0));
    std::vector<Rational> AM(M.size());
    for (int k = 1; k <= d; ++k) {
        // M_k = A M_{k-1} + c_{d-k+1} I, with M_0 = 0.
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                Rational s = 0;
                for (int l = 0; l < d; ++l) {
                    if (G(i, l)) s += M[static_cast<std::size_t>(l) * d + j];
                }
                AM[static_cast<std::size_t>(i) * d + j] = s;
            }
        }
        for (int i = 0; i < d; ++i) AM[static_cast<std::size_t>(i) * d + i] += c[d - k + 1];
        M = AM;
        // c_{d-k} = -tr(A M_k) / k
        Rational tr = 0;
        for (int i = 0; i < d; ++i) {
            for (int l = 0; l < d; ++l) {
                if (G(i, l)) tr += M[static_cast<std::size_t>(l) * d + i];
            }
        }
        c[d - k] = -tr / k;
    }
    return c;
}

}  // namespace

double spectral_radius(const TransitionMatrix& G) {
    const int d = G.d;
    if (d == 0 || std::all_of(G.entries.begin(), G.entries.end(), [](auto v) { return v == 0; })) {
        throw NonConvergence("spectral radius of the zero matrix is not defined by power iteration");
    }
    // Iterate with G + I: same Perron vector, dominant eigenvalue shifted by 1,
    // and no oscillation for periodic matrices.
    std::vector<double> x(d, 1.0), y(d);
    double est = 0, prev = -1;
    int stable = 0;
    constexpr int cap = 100000;
    int it = 0;
    for (; it < cap; ++it) {
        double norm = 0;
        for (int i = 0; i < d; ++i) {
            double s = x[i];
            for (int j = 0; j < d; ++j) {
                if (G(i, j)) s += x[j];
            }
            y[i] = s;
            norm = std::max(norm, s);
        }
        double xnorm = *std::max_element(x.begin(), x.end());
        est = norm / xnorm;
        for (int i = 0; i < d; ++i) x[i] = y[i] / norm;
        if (std::abs(est - prev) <= 1e-13 * est) {
            if (++stable >= 3) break;
        } else {
            stable = 0;
        }
        prev = est;
    }
    if (it == cap) {
        std::ostringstream os;
        os.precision(15);
        os << "power iteration did not settle after " << cap << " steps (last estimates " << prev - 1 << ", "
           << est - 1 << "); Perron block is likely defective or not unique";
        throw NonConvergence(os.str());
    }
    double rho = est - 1.0;

    if (d <= 4) {
        auto c = char_poly(G);
        std::vector<double> cd(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) cd[k] = to_double(c[k]);
        auto eval = [&](double t, double& deriv) {
            double p = 0, dp = 0;
            for (int k = d; k >= 0; --k) {
                dp = dp * t + p;
                p = p * t + cd[k];
            }
            deriv = dp;
            return p;
        };
        double r = rho;
        for (int k = 0; k < 50; ++k) {
            double dp = 0;
            double p = eval(r, dp);
            if (dp == 0) break;
            double step = p / dp;
            r -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
        }
        if (std::abs(r - rho) > 1e-9 * std::max(1.0, rho)) {
            std::ostringstream os;
            os.precision(15);
            os << "power iteration gave " << rho << " but the characteristic polynomial root nearby is " << r;
            throw NonConvergence(os.str());
        }
        rho = r;
    }
    return rho;
}

std::int64_t k0_from_hmin(double h_min) {
    const auto k = static_cast<std::int64_t>(std::ceil(2.0 / h_min)) + 1;
    return k * k;
}

GeometryConstants geometry_constants(const std::vector<ElementShape>& shapes) {
    if (shapes.empty()) throw MalformedPartition("no elements to measure");
    GeometryConstants g;
    g.c_min = g.b_min = g.h_min = std::numeric_limits<double>::infinity();
    g.c_max = 0;
    for (const auto& sh : shapes) {
        const auto& a = sh.side_u;
        const auto& b = sh.side_s;
        const double diam = std::max(std::hypot(a[0] + b[0], a[1] + b[1]), std::hypot(a[0] - b[0], a[1] - b[1]));
        const double la = std::hypot(a[0], a[1]), lb = std::hypot(b[0], b[1]);
        const double area = std::abs(a[0] * b[1] - a[1] * b[0]);
        g.c_min = std::min(g.c_min, diam);
        g.c_max = std::max(g.c_max, diam);
        g.b_min = std::min({g.b_min, la, lb});
        g.h_min = std::min({g.h_min, area / la, area / lb});
    }
    g.k0 = k0_from_hmin(g.h_min);
    g.L = g.c_max;
    return g;
}

ElementShape element_shape(const EigenFrame& frame, const Parallelogram& e) {
    const double U = e.u_extent.to_double(), S = e.s_extent.to_double();
    return {{U * frame.unstable_x, U * frame.unstable_y}, {S * frame.stable_x, S * frame.stable_y}};
}

QuadNum element_diameter_sq(const EigenFrame& frame, const QuadNum& u_extent, const QuadNum& s_extent) {
    const auto& vu = frame.spec.unstable_dir;
    const auto& vs = frame.spec.stable_dir;
    const QuadNum ax = u_extent * vu[0], ay = u_extent * vu[1];
    const QuadNum bx = s_extent * vs[0], by = s_extent * vs[1];
    const QuadNum plus = (ax + bx) * (ax + bx) + (ay + by) * (ay + by);
    const QuadNum minus = (ax - bx) * (ax - bx) + (ay - by) * (ay - by);
    return max(plus, minus);
}

double element_diameter(const EigenFrame& frame, const Parallelogram& e) {
    return std::sqrt(element_diameter_sq(frame, e.u_extent, e.s_extent).to_double());
}

GeometryConstants geometry_constants(const MarkovPartition& P) {
    check_extents(P);
    const EigenFrame frame(P.automorphism);
    std::vector<ElementShape> shapes;
    for (const auto& e : P.elements) shapes.push_back(element_shape(frame, e));
    return geometry_constants(shapes);
}

MarkovPartition two_rectangle_partition(const ToralAutomorphism& A) {
    const EigenFrame frame(A);
    // Lattice basis g1, g2 with eigencoordinates g1 = (a, d), g2 = (-c, b),
    // a, b, c, d > 0. The rectangles [0,a]x[0,b] and [a,a+c]x[0,d] then tile
    // the plane under Z^2.
    struct Cand {
        std::int64_t m, n;
        std::array<QuadNum, 2> e;
    };
    std::vector<Cand> plus_plus, minus_plus;
    constexpr std::int64_t B = 6;
    for (std::int64_t m = -B; m <= B; ++m) {
        for (std::int64_t n = -B; n <= B; ++n) {
            if (m == 0 && n == 0) continue;
            auto e = frame.lattice(m, n);
            const int su = quad_sign(e[0]), ss = quad_sign(e[1]);
            if (ss <= 0) continue;
            if (su > 0) plus_plus.push_back({m, n, e});
            if (su < 0) minus_plus.push_back({m, n, e});
        }
    }
    const Cand* best1 = nullptr;
    const Cand* best2 = nullptr;
    std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
    for (const auto& g1 : plus_plus) {
        for (const auto& g2 : minus_plus) {
            const std::int64_t det = g1.m * g2.n - g1.n * g2.m;
            if (det != 1 && det != -1) continue;
            const std::int64_t cost = g1.m * g1.m + g1.n * g1.n + g2.m * g2.m + g2.n * g2.n;
            if (cost < best_cost) {
                best_cost = cost;
                best1 = &g1;
                best2 = &g2;
            }
        }
    }
    if (!best1) throw MalformedPartition("no lattice basis with the required eigen-signs");
    const QuadNum a = best1->e[0], d = best1->e[1];
    const QuadNum c = -best2->e[0], b = best2->e[1];
    MarkovPartition P{A, {}};
    P.elements.push_back({{QuadNum(0), QuadNum(0)}, a, b});
    P.elements.push_back({{a, QuadNum(0)}, c, d});
    return P;
}

MarkovPartition refine(const MarkovPartition& P) {
    const EigenFrame frame(P.automorphism);
    const Transitions tr = transitions(P);
    const int d = tr.gamma.d;
    MarkovPartition out{P.automorphism, {}};
    for (int i = 0; i < d; ++i) {
        const auto& e = P.elements[i];
        std::vector<Parallelogram> pieces;
        for (int j = 0; j < d; ++j) {
            for (const auto& n : tr.at(i, j)) {
                const auto t = frame.lattice(n[0], n[1]);
                const auto& f = P.elements[j];
                auto [lo, hi] = scaled(frame.spec.lambda_inv, f.u_lo() + t[0], f.u_hi() + t[0]);
                QuadNum u0 = max(lo, e.u_lo()), u1 = min(hi, e.u_hi());
                pieces.push_back({{u0, e.s_lo()}, u1 - u0, e.s_extent});
            }
        }
        std::sort(pieces.begin(), pieces.end(),
                  [](const Parallelogram& x, const Parallelogram& y) { return x.origin[0] < y.origin[0]; });
        for (auto& p : pieces) out.elements.push_back(std::move(p));
    }
    return out;
}

std::vector<std::string> catalog_names() { return {"cat", "fibonacci-squared", "fibonacci", "trace-4"}; }

std::pair<ToralAutomorphism, MarkovPartition> catalog(std::string_view name) {
    ToralAutomorphism A;
    if (name == "cat") {
        A = ToralAutomorphism(2, 1, 1, 1);
    } else if (name == "fibonacci-squared") {
        A = ToralAutomorphism(1, 1, 1, 0).squared();
    } else if (name == "fibonacci") {
        A = ToralAutomorphism(1, 1, 1, 0);
    } else if (name == "trace-4") {
        A = ToralAutomorphism(3, 1, 2, 1);
    } else {
        throw UnknownCatalogEntry("no catalog entry named '" + std::string(name) + "'");
    }
    MarkovPartition P = refine(two_rectangle_partition(A));
    const auto rep = validate_partition(P);
    if (!rep.ok()) {
        throw MalformedPartition("catalog entry '" + std::string(name) + "' failed validation: " +
                                 (rep.problems.empty() ? std::string("?") : rep.problems.front()));
    }
    return {A, P};
}

}  // namespace toral
