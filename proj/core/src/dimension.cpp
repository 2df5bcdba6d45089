#include "toral/dimension.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "toral/errors.hpp"

namespace toral {

double first_threshold() { return 3.0 - 2.0 * std::sqrt(2.0); }
double second_threshold() { return 2.0 - std::sqrt(3.0); }

double dim_uniform_branch(int branch, double a) {
    switch (branch) {
        case 1: {
            const double r = (1.0 - a) / (1.0 + a);
            return 2.0 * r * r;
        }
        case 2: {
            const double s = 1.0 - std::sqrt(2.0 * a);
            return s * s / a;
        }
        case 3: return (1.0 - 3.0 * a) / (1.0 - a);
        case 4: return 0.0;
    }
    throw std::invalid_argument("branch must be 1..4");
}

double dim_uniform(double alpha) {
    if (!(alpha >= 0)) throw std::invalid_argument("alpha must be non-negative");
    if (alpha <= first_threshold()) return dim_uniform_branch(1, alpha);
    if (alpha <= second_threshold()) return dim_uniform_branch(2, alpha);
    if (alpha <= 1.0 / 3.0) return dim_uniform_branch(3, alpha);
    return 0.0;
}

double dim_asymptotic(double alpha) {
    if (!(alpha >= 0)) throw std::invalid_argument("alpha must be non-negative");
    return alpha <= 1.0 ? 2.0 / (alpha + 1.0) : 1.0 / alpha;
}

double s0_right(double alpha, double theta) {
    if (!(theta > 1)) throw std::invalid_argument("s0_right needs theta > 1");
    const double num = 2.0 * ((1.0 - alpha) * theta - 1.0);
    const double den = (1.0 + alpha * theta) * (theta - 1.0);
    const double v = num / den;
    return std::isfinite(v) ? v : std::copysign(HUGE_VAL, num);
}

double s0_left(double alpha, double theta) {
    if (!(theta > 1)) throw std::invalid_argument("s0_left needs theta > 1");
    if (!(alpha > 0)) throw std::invalid_argument("s0_left needs alpha > 0");
    const double num = (1.0 - 2.0 * alpha) * theta - 1.0;
    const double v = num / (alpha * theta * (theta - 1.0));
    return std::isfinite(v) ? v : std::copysign(HUGE_VAL, num);
}

ThetaSup sup_over_theta(Cover which, double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("sup_over_theta needs alpha > 0");
    const double lo = 1.0 / (1.0 - 2.0 * alpha), hi = 1.0 / alpha;
    if (alpha > 1.0 / 3.0 || lo > hi) {
        throw EmptyRange("theta range [1/(1-2a), 1/a] is empty for alpha = " + std::to_string(alpha));
    }
    auto f = [&](double th) { return which == Cover::Right ? s0_right(alpha, th) : s0_left(alpha, th); };
    if (lo >= hi) return {hi, f(hi)};

    constexpr int kSteps = 2000;
    const double h = (hi - lo) / kSteps;
    auto node = [&](int i) { return i == kSteps ? hi : lo + h * i; };
    int best = 0;
    double best_v = f(lo);
    for (int i = 1; i <= kSteps; ++i) {
        const double v = f(node(i));
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    double a = node(std::max(best - 1, 0)), b = node(std::min(best + 1, kSteps));
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-11) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    ThetaSup out{node(best), best_v};
    for (double th : {a, 0.5 * (a + b), b}) {
        const double v = f(th);
        if (v > out.value || (v == out.value && th < out.theta)) out = {th, v};
    }
    return out;
}

double upper_bound_dim(double alpha) {
    if (!(alpha > 0) || alpha > 1.0 / 3.0) throw std::invalid_argument("upper_bound_dim needs 0 < alpha <= 1/3");
    return std::min(sup_over_theta(Cover::Right, alpha).value, sup_over_theta(Cover::Left, alpha).value);
}

CoverBudget cover_budget(const CoverParams& p, long n) {
    if (n < 2) throw std::invalid_argument("cover_budget needs n >= 2");
    if (!(p.alpha >= 0) || !(p.epsilon >= 0)) throw std::invalid_argument("alpha and epsilon must be non-negative");
    if (!(p.theta_j > 1)) throw std::invalid_argument("theta_j must exceed 1");
    if (p.alpha > 0 && (2.0 * p.alpha >= 1.0 || p.theta_j < 1.0 / (1.0 - 2.0 * p.alpha) || p.theta_j > 1.0 / p.alpha)) {
        throw std::invalid_argument("theta_j must lie in [1/(1-2 alpha), 1/alpha]");
    }
    if (!(p.c1 > 0 && p.c2 > 0 && p.c3 > 0 && p.c4 > 0)) throw std::invalid_argument("constants must be positive");
    if (!(p.lambda > 1)) throw std::invalid_argument("lambda must exceed 1");

    const double a = p.alpha, th = p.theta_j, e = p.epsilon, N = static_cast<double>(n);
    CoverBudget b;
    b.P = 1.0 + 2.0 * (1.0 + a * th + 2.0 * e) * N - 2.0 * (a - e) * (th + th / (th - 1.0) - p.c3 * e) * N;
    b.Q = 1.0 + (1.0 - 2.0 * a - 2.0 * a / (th + 2.0 * e - 1.0) + p.c4 * e) * N;
    const double logn = std::log(N);
    const double combinatorial = std::log(p.c2 * logn) + p.c2 * logn * logn;
    b.log_cylinder_count_right = combinatorial + b.P * std::log(p.lambda);
    b.log_cylinder_count_left = combinatorial + b.Q * std::log(p.lambda);
    return b;
}

namespace {

int branch_below(double t) { return t == first_threshold() ? 1 : 2; }

ThresholdDiagnostic diagnose(double t, double h) {
    const int lb = branch_below(t), rb = lb + 1;
    auto fl = [&](double x) { return dim_uniform_branch(lb, x); };
    auto fr = [&](double x) { return dim_uniform_branch(rb, x); };
    ThresholdDiagnostic d;
    d.alpha = t;
    d.value_left = fl(t);
    d.value_right = fr(t);
    // Each side uses its own branch, which is what the one-sided limits see.
    auto d1l = [&](double s) { return (fl(t) - fl(t - s)) / s; };
    auto d1r = [&](double s) { return (fr(t + s) - fr(t)) / s; };
    auto d2l = [&](double s) { return (fl(t) - 2.0 * fl(t - s) + fl(t - 2.0 * s)) / (s * s); };
    auto d2r = [&](double s) { return (fr(t + 2.0 * s) - 2.0 * fr(t + s) + fr(t)) / (s * s); };
    const double eps = std::numeric_limits<double>::epsilon();

    d.d1_left = d1l(h);
    d.d1_right = d1r(h);
    d.d1_error = std::abs(d1l(h) - d1l(2.0 * h)) + std::abs(d1r(h) - d1r(2.0 * h)) + 8.0 * eps / h;
    d.d2_left = d2l(h);
    d.d2_right = d2r(h);
    d.d2_error = std::abs(d2l(h) - d2l(2.0 * h)) + std::abs(d2r(h) - d2r(2.0 * h)) + 16.0 * eps / (h * h);
    d.first_jump = std::abs(d.d1_right - d.d1_left) > 10.0 * d.d1_error;
    d.second_jump = !d.first_jump && std::abs(d.d2_right - d.d2_left) > 10.0 * d.d2_error;
    return d;
}

}  // namespace

DimensionProfile transition_report(double grid_step) {
    if (!(grid_step > 0) || grid_step > 1e-3) throw std::invalid_argument("grid_step must lie in (0, 1e-3]");
    DimensionProfile prof;
    prof.thresholds = {first_threshold(), second_threshold(), 1.0 / 3.0};
    const double end = 1.0 / 3.0;
    for (long i = 1;; ++i) {
        const double a = grid_step * static_cast<double>(i);
        if (a >= end) break;
        prof.alpha_grid.push_back(a);
        prof.values.push_back(dim_uniform(a));
    }
    for (double t : {first_threshold(), second_threshold()}) {
        const ThresholdDiagnostic d = diagnose(t, grid_step);
        if (d.first_jump) prof.kinks.push_back(t);
        if (d.second_jump) prof.second_kinks.push_back(t);
        prof.diagnostics.push_back(d);
    }
    return prof;
}

}  // namespace toral
