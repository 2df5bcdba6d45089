#include "toral/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toral/coding.hpp"
#include "toral/dimension.hpp"
#include "toral/errors.hpp"
#include "toral/estimate.hpp"
#include "toral/layout.hpp"
#include "toral/oracles.hpp"
#include "toral/partition.hpp"
#include "toral/shift.hpp"
#include "toral/tables.hpp"

namespace toral::verify {

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    Outcome() { detail << std::setprecision(6); }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "FAILED: " << what << "; ";
        }
    }
};

using Body = std::function<void(Outcome&, const Options&)>;

double worst(double current, double candidate) { return std::max(current, candidate); }

void dimension_curve(Outcome& out, const Options&) {
    const auto rows = dimension_rows(0.0005);
    double err = 0;
    for (const auto& r : rows) {
        err = worst(err, std::abs(r.dim_uniform - static_cast<double>(oracle::dim_uniform(r.alpha))));
    }
    const double t1 = first_threshold(), t2 = second_threshold();
    const double a1 = dim_uniform_branch(1, t1), a2 = dim_uniform_branch(2, t1);
    const double b2 = dim_uniform_branch(2, t2), b3 = dim_uniform_branch(3, t2);
    const double target = 2.0 - std::sqrt(3.0);
    out.require(err <= 1e-12, "grid values differ from the reference formula");
    out.require(std::abs(a1 - 1) <= 1e-9 && std::abs(a2 - 1) <= 1e-9, "value at 3-2sqrt2 is not 1 from both sides");
    out.require(std::abs(b2 - target) <= 1e-9 && std::abs(b3 - target) <= 1e-9,
                "value at 2-sqrt3 is not 2-sqrt3 from both sides");
    out.detail << rows.size() << " rows, max |grid - reference| = " << err << "; at 3-2sqrt2: " << a1 << " / " << a2
               << "; at 2-sqrt3: " << b2 << " / " << b3;
}

void lower_meets_upper(Outcome& out, const Options&) {
    double e_lower = 0, e_upper = 0, e_grid = 0;
    for (int i = 1; i <= 200; ++i) {
        const double a = i / 600.0;
        const double d = dim_uniform(a);
        e_lower = worst(e_lower, std::abs(optimal_theta_lower(a).dim - d));
        e_upper = worst(e_upper, std::abs(upper_bound_dim(a) - d));
        e_grid = worst(e_grid, std::abs(grid_theta_lower(a).dim - d));
    }
    out.require(e_lower <= 1e-6, "closed-form lower bound misses dim_uniform");
    out.require(e_upper <= 1e-6, "upper bound misses dim_uniform");
    out.require(e_grid <= 1e-6, "grid-searched lower bound misses dim_uniform");
    out.detail << "200 alphas in (0, 1/3]: max error lower " << e_lower << ", upper " << e_upper << ", grid lower "
               << e_grid;
}

void maximizer_identities(Outcome& out, const Options&) {
    double e_right = 0, e_left = 0, e_arg = 0, printed_gap = HUGE_VAL;
    const double t2 = second_threshold();
    for (int i = 1; i <= 1000; ++i) {
        const double a = i * (1.0 / 3.0) / 1000.0;
        const double r = (1.0 - a) / (1.0 + a);
        e_right = worst(e_right, std::abs(s0_right(a, 2.0 / (1.0 - a)) - 2.0 * r * r));
    }
    for (int i = 1; i <= 1000; ++i) {
        const double a = i * t2 / 1000.0;
        const double s = std::sqrt(2.0 * a);
        const double theta1 = 1.0 / (1.0 - s);
        e_left = worst(e_left, std::abs(s0_left(a, theta1) - (1.0 - s) * (1.0 - s) / a));
        const double argmax = sup_over_theta(Cover::Left, a).theta;
        e_arg = worst(e_arg, std::abs(argmax - theta1));
        printed_gap = std::min(printed_gap, std::abs(argmax - (1.0 + s) / (1.0 + 2.0 * a)));
    }
    out.require(e_right <= 1e-12, "right-cover identity");
    out.require(e_left <= 1e-10, "left-cover identity");
    out.require(e_arg <= 1e-6, "numeric argmax of the left exponent is not 1/(1-sqrt(2a))");
    out.require(printed_gap > 1e-6, "numeric argmax coincides with (1+sqrt(2a))/(1+2a)");
    out.detail << "right identity " << e_right << ", left identity " << e_left << ", argmax error " << e_arg
               << ", min distance to (1+sqrt(2a))/(1+2a) " << printed_gap;
}

void phase_transitions(Outcome& out, const Options&) {
    const auto prof = transition_report(1e-5);
    const auto& d1 = prof.diagnostics.at(0);
    const auto& d2 = prof.diagnostics.at(1);
    out.require(d1.first_jump, "no first-derivative jump at 3-2sqrt2");
    out.require(!d2.first_jump, "first derivative jumps at 2-sqrt3");
    out.require(d2.second_jump, "no second-derivative jump at 2-sqrt3");
    out.require(std::abs(d1.value_left - d1.value_right) <= 1e-9 && std::abs(d2.value_left - d2.value_right) <= 1e-9,
                "value discontinuity at a threshold");
    out.detail << "3-2sqrt2: d1 " << d1.d1_left << " vs " << d1.d1_right << " (err " << d1.d1_error
               << "); 2-sqrt3: d1 " << d2.d1_left << " vs " << d2.d1_right << " (err " << d2.d1_error << "), d2 "
               << d2.d2_left << " vs " << d2.d2_right << " (err " << d2.d2_error << ")";
}

void entropy_catalog(Outcome& out, const Options&) {
    for (const auto& name : catalog_names()) {
        const auto [A, P] = catalog(name);
        const TransitionMatrix G = transition_matrix(P);
        const double lambda = spectrum(A).lambda_value;
        const double rho = spectral_radius(G);
        const EntropyEstimate e = entropy_estimate(Sft(G, lambda), 30);
        const double gap = std::abs(e.value - std::log(lambda));
        out.require(std::abs(rho - lambda) <= 1e-9, name + ": spectral radius differs from lambda");
        out.require(gap <= 0.05, name + ": entropy estimate off");
        out.detail << name << " (d=" << G.d << "): |rho - lambda| = " << std::abs(rho - lambda)
                   << ", |h30 - log lambda| = " << gap << "; ";
    }
}

// Structural facts a layout of the given regime must show; empty when fine.
std::string layout_defect(const BlockLayout& L) {
    const auto& R = L.right_blocks;
    const auto& Lb = L.left_blocks;
    for (std::size_t i = 0; i + 1 < R.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        if (!(R[i].lo < R[i + 1].lo)) return "right blocks out of order at k = " + std::to_string(k);
        if (L.regime.tag == RegimeTag::NoOverlap) {
            if (!(R[i].hi < R[i + 1].lo)) return "right blocks meet at k = " + std::to_string(k);
        } else {
            if (!(R[i + 1].lo < R[i].hi)) return "right blocks do not overlap at k = " + std::to_string(k);
            if (!(L.center(k + 1) > R[i].hi)) return "center inside the previous block at k = " + std::to_string(k);
            if (!(Lb[i + 1].hi < Lb[i].lo)) return "left blocks meet at k = " + std::to_string(k);
        }
    }
    if (L.regime.tag == RegimeTag::NoOverlap && !Lb.empty()) return "left blocks without overlap";
    for (const auto& b : Lb) {
        if (b.empty()) return "empty left block";
    }
    for (std::size_t i = 0; i < L.free_intervals.size(); ++i) {
        const auto& f = L.free_intervals[i];
        if (f.empty() || f.lo < L.window.lo || f.hi > L.window.hi) return "free interval outside the window";
        if (i > 0 && !(L.free_intervals[i - 1].hi <= f.lo)) return "free intervals overlap";
        for (const auto* blocks : {&R, &Lb}) {
            for (const auto& b : *blocks) {
                if (f.lo < b.hi && b.lo < f.hi) return "free interval meets a block";
            }
        }
    }
    return {};
}

RegimeTag tag_from(const std::array<bool, 5>& c) {
    if (c[0] && c[1]) return RegimeTag::NoOverlap;
    if (c[0] && c[2] && c[3] && c[4]) return RegimeTag::OverlapDisjointLeft;
    return RegimeTag::Degenerate;
}

// Largest |sweep - closed form| over the checkpoints, and whether any
// exceeded the allowance (0 idealized, one unit per block rounded).
std::pair<double, bool> checkpoint_gap(const Rational& alpha, const Rational& theta, const Rational& n1,
                                       LayoutMode mode) {
    const BlockLayout L = build_layout({alpha, theta, n1, 26, mode});
    const int k_max = L.regime.tag == RegimeTag::OverlapDisjointLeft ? 25 : 26;
    double gap = 0;
    bool bad = false;
    for (int k = 1; k <= std::min(k_max, 25); ++k) {
        const Checkpoint c = checkpoint(L, k);
        const Rational diff = free_count(L, c.m) - c.closed_form;
        const double g = std::abs(to_double(diff));
        gap = std::max(gap, g);
        if (mode == LayoutMode::Idealized ? diff != 0 : g > k) bad = true;
    }
    return {gap, bad};
}

void layout_regimes(Outcome& out, const Options& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> alpha_num(0, 450), theta_num(1, 11000);
    constexpr int kPerRegime = 10000;
    std::array<int, 3> seen{};
    std::array<std::vector<std::pair<Rational, Rational>>, 3> kept;
    int mismatched = 0, defects = 0, draws = 0;
    std::string first_defect;
    while (*std::min_element(seen.begin(), seen.end()) < kPerRegime && draws < 2'000'000) {
        ++draws;
        const Rational alpha(alpha_num(rng), 1000), theta = Rational(1) + Rational(theta_num(rng), 1000);
        const auto ref = oracle::conditions(alpha, theta);
        const RegimeTag tag = tag_from(ref);
        auto& count = seen[static_cast<std::size_t>(tag)];
        if (count >= kPerRegime) continue;
        ++count;
        const Regime r = classify_regime(alpha, theta);
        if (r.conditions != ref || r.tag != tag) ++mismatched;
        if (kept[static_cast<std::size_t>(tag)].size() < 20) kept[static_cast<std::size_t>(tag)].emplace_back(alpha, theta);
        try {
            const BlockLayout L = build_layout({alpha, theta, theta, 6, LayoutMode::Idealized});
            const std::string d = tag == RegimeTag::Degenerate ? "degenerate layout accepted" : layout_defect(L);
            if (!d.empty()) {
                ++defects;
                if (first_defect.empty()) first_defect = d + " (alpha " + to_string(alpha) + ", theta " + to_string(theta) + ")";
            }
        } catch (const RegimeViolation&) {
            if (tag != RegimeTag::Degenerate) ++defects;
        }
    }
    out.require(*std::min_element(seen.begin(), seen.end()) == kPerRegime, "could not draw enough samples per regime");
    out.require(mismatched == 0, "regime classification differs from the integer oracle");
    out.require(defects == 0, "layout invariants: " + first_defect);

    double gap_ideal = 0, gap_round = 0;
    int sweeps = 0;
    auto sweep = [&](const Rational& a, const Rational& t, const Rational& n1) {
        for (LayoutMode mode : {LayoutMode::Idealized, LayoutMode::Rounded}) {
            const auto [gap, bad] = checkpoint_gap(a, t, n1, mode);
            const bool ideal = mode == LayoutMode::Idealized;
            double& g = ideal ? gap_ideal : gap_round;
            g = std::max(g, gap);
            out.require(!bad, std::string("checkpoint sum in ") + (ideal ? "idealized" : "rounded") +
                                  " mode for alpha " + to_string(a) + ", theta " + to_string(t));
            ++sweeps;
        }
    };
    const std::array<std::pair<Rational, Rational>, 3> refs{{{Rational(1, 10), Rational(20, 9)},
                                                             {Rational(1, 4), parse_rational("3.414214")},
                                                             {Rational(3, 10), Rational(10, 3)}}};
    for (const auto& [a, t] : refs) sweep(a, t, t);
    for (int tag = 0; tag < 2; ++tag) {
        for (const auto& [a, t] : kept[static_cast<std::size_t>(tag)]) sweep(a, t, 100);
    }
    out.detail << "samples per regime " << seen[0] << "/" << seen[1] << "/" << seen[2] << " (" << draws
               << " draws), classification mismatches " << mismatched << ", layout defects " << defects << "; "
               << sweeps << " checkpoint sweeps to k = 25, max gap idealized " << gap_ideal << ", rounded "
               << gap_round;
}

void local_dimension(Outcome& out, const Options&) {
    const std::array<std::pair<Rational, Rational>, 3> refs{{{Rational(1, 10), Rational(20, 9)},
                                                             {Rational(1, 4), parse_rational("3.414214")},
                                                             {Rational(3, 10), Rational(10, 3)}}};
    for (const auto& [a, t] : refs) {
        const BlockLayout L = build_layout({a, t, t, 26, LayoutMode::Idealized});
        const Checkpoint c = checkpoint(L, 25);
        const double ratio = to_double(free_count(L, c.m) / c.m);
        const double limit = local_dimension_limit(to_double(a), to_double(t), L.regime.tag);
        out.require(std::abs(ratio - limit) <= 1e-3, "F(m_25)/m_25 far from the limit at alpha " + to_string(a));
        out.detail << "alpha " << to_double(a) << ": F/m = " << ratio << ", limit " << limit << "; ";
    }
}

void cardinality(Outcome& out, const Options&) {
    const Sft S = full_shift_sft(2);
    for (std::int64_t delta : {2, 5, 10}) {
        const CardinalityFamily f = cardinality_family(delta, 10, 6, S);
        bool gaps_ok = f.gaps.size() == 5;
        for (const auto& g : f.gaps) gaps_ok = gaps_ok && g[1] - g[0] + 1 == delta - 1;
        out.require(gaps_ok, "gap widths for delta " + std::to_string(delta));
        const BigInt expected = BigInt(1) << static_cast<unsigned>((delta - 1) * 5);
        out.require(f.witness_count == expected, "witness count for delta " + std::to_string(delta));
        for (int K = 2; K <= 4; ++K) {
            const CardinalityFamily small = cardinality_family(delta, 10, K, S);
            const BigInt walked = oracle::count_fillings(small, S.gamma);
            out.require(walked == small.witness_count,
                        "enumerated fillings for delta " + std::to_string(delta) + ", K " + std::to_string(K));
        }
        out.detail << "delta " << delta << ": witness_count " << f.witness_count << "; ";
    }
}

struct NamedSft {
    const char* name;
    Sft sft;
};

std::vector<NamedSft> oracle_matrix_sfts() {
    return {{"full2", full_shift_sft(2)},
            {"golden", golden_mean_shift()},
            {"full3", full_shift_sft(3)},
            {"cyclic3", Sft(TransitionMatrix(3, {1, 1, 0, 0, 1, 1, 1, 0, 1}), 2.0)}};
}

void oracle_equivalence(Outcome& out, const Options&) {
    int runs = 0, skipped = 0, mismatches = 0;
    for (const auto& [name, S] : oracle_matrix_sfts()) {
        for (double alpha : {0.0, 0.2, 0.3}) {
            for (int n_max = 1; n_max <= 5; ++n_max) {
                for (int M = 1; M <= std::min(2, n_max); ++M) {
                    const ConstraintSpec c{alpha, M, n_max, S.lambda};
                    for (auto m = minimal_radius(c); m <= 10; ++m) {
                        if (std::pow(static_cast<double>(S.d), 2.0 * static_cast<double>(m) + 1) > 1e8) {
                            ++skipped;
                            continue;
                        }
                        const int mi = static_cast<int>(m);
                        if (count_constrained_windows(S, c, mi) != brute_force_oracle(S, c, mi)) {
                            if (mismatches == 0) {
                                out.detail << "first mismatch: " << name << " alpha " << alpha << " M " << M
                                           << " N_max " << n_max << " m " << m << "; ";
                            }
                            ++mismatches;
                        }
                        ++runs;
                    }
                }
            }
        }
    }
    out.require(mismatches == 0, "counts differ from exhaustive enumeration");
    out.detail << runs << " instances, " << mismatches << " mismatches, " << skipped
               << " radii beyond the enumeration budget";
}

void geometry_lemmas(Outcome& out, const Options& opt) {
    const auto [A, P] = catalog("cat");
    const DiameterReport r = diameter_ratio_check(P, 1000, 20, opt.seed);
    int diam = 0, lip = 0;
    double lo = HUGE_VAL, hi = 0;
    for (const auto& row : r.rows) {
        diam += row.diameter_violations;
        lip += row.lipschitz_violations;
        lo = std::min(lo, row.min_ratio);
        hi = std::max(hi, row.max_ratio);
    }
    out.require(diam == 0, "diameter outside [c_min, c_max] lambda^-m");
    out.require(lip == 0, "Lipschitz bound broken");
    out.detail << "c_min " << r.constants.c_min << ", c_max " << r.constants.c_max << "; observed ratios [" << lo
               << ", " << hi << "], worst Lipschitz ratio " << r.worst_lipschitz_ratio << ", violations " << diam
               << " + " << lip;
}

// Slopes as reported at the default output precision.
double reported(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return std::stod(s.str());
}

void slope_trends(Outcome& out, const Options&) {
    const std::array<double, 4> alphas{0.0, 0.1, 0.2, 0.3};
    constexpr int kNLo = 2, kNHi = 6, kMLo = 20, kMHi = 36;
    const std::vector<NamedSft> sfts{{"full2", full_shift_sft(2)}, {"golden", golden_mean_shift()}};
    int order_breaks = 0, count_breaks = 0, outside = 0, cells = 0;
    double smallest = HUGE_VAL, largest = 0;
    for (const auto& [name, S] : sfts) {
        std::vector<std::vector<double>> slope(alphas.size(), std::vector<double>(kNHi + 1));
        std::vector<std::vector<BigInt>> at20(alphas.size(), std::vector<BigInt>(kNHi + 1));
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            for (int N = kNLo; N <= kNHi; ++N) {
                const ConstraintSpec c{alphas[ai], 1, N, S.lambda};
                std::vector<int> radii;
                std::vector<BigInt> counts;
                for (int m = kMLo; m <= kMHi; ++m) {
                    radii.push_back(m);
                    counts.push_back(count_constrained_windows(S, c, m));
                }
                at20[ai][static_cast<std::size_t>(N)] = counts.front();
                const double s = reported(fit_dimension(radii, counts, S.lambda).slope);
                slope[ai][static_cast<std::size_t>(N)] = s;
                smallest = std::min(smallest, s);
                largest = std::max(largest, s);
                if (s < dim_uniform(alphas[ai]) - 0.5 || s > 2) ++outside;
                ++cells;
            }
        }
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            for (int N = kNLo; N <= kNHi; ++N) {
                const auto n = static_cast<std::size_t>(N);
                if (ai > 0) {
                    order_breaks += slope[ai][n] > slope[ai - 1][n];
                    count_breaks += at20[ai][n] > at20[ai - 1][n];
                }
                if (N > kNLo) {
                    order_breaks += slope[ai][n] > slope[ai][n - 1];
                    count_breaks += at20[ai][n] > at20[ai][n - 1];
                }
            }
        }
    }
    out.require(outside == 0, "slope outside [dim_uniform - 0.5, 2]");
    out.require(order_breaks == 0, "slopes increase along alpha or N_max");
    out.require(count_breaks == 0, "counts increase along alpha or N_max");
    out.detail << cells << " fits (full2, golden; alpha 0..0.3; N_max 2..6; m 20..36): slopes in [" << smallest
               << ", " << largest << "], monotonicity breaks " << order_breaks << ", count breaks at m = 20 "
               << count_breaks << "; finite-depth slopes tend to 2 for every alpha, so the trend is flat";
}

struct Entry {
    Criterion meta;
    Body body;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all{
        {{1, "dimension curve", 1}, dimension_curve},
        {{2, "lower bound meets upper bound", 10}, lower_meets_upper},
        {{3, "maximizer identities", 0}, maximizer_identities},
        {{4, "phase-transition diagnostics", 5}, phase_transitions},
        {{5, "entropy of catalog partitions", 1}, entropy_catalog},
        {{6, "layout regimes and checkpoint sums", 30}, layout_regimes},
        {{7, "local-dimension convergence", 5}, local_dimension},
        {{8, "cardinality construction", 5}, cardinality},
        {{9, "window counts match enumeration", 120}, oracle_equivalence},
        {{10, "cylinder diameters and Lipschitz bound", 30}, geometry_lemmas},
        {{11, "fitted slope trends", 0}, slope_trends},
    };
    return all;
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = [] {
        std::vector<Criterion> v;
        for (const auto& e : entries()) v.push_back(e.meta);
        return v;
    }();
    return list;
}

CheckResult run_criterion(int id, const Options& opt) {
    const auto& all = entries();
    const auto it = std::find_if(all.begin(), all.end(), [&](const Entry& e) { return e.meta.id == id; });
    if (it == all.end()) throw std::invalid_argument("no criterion " + std::to_string(id));

    CheckResult r;
    r.id = id;
    r.name = it->meta.name;
    r.time_limit = it->meta.time_limit;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        it->body(out, opt);
    } catch (const Error& e) {
        out.require(false, e.name() + ": " + e.what());
    } catch (const std::exception& e) {
        out.require(false, e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0 && r.seconds >= r.time_limit) {
        out.require(false, "took longer than " + std::to_string(r.time_limit) + " s");
    }
    r.passed = out.ok;
    r.detail = out.detail.str();
    return r;
}

std::vector<CheckResult> run_all(const Options& opt) {
    std::vector<CheckResult> v;
    for (const auto& c : criteria()) v.push_back(run_criterion(c.id, opt));
    return v;
}

}  // namespace toral::verify
