#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "toral/algebra.hpp"
#include "toral/partition.hpp"

namespace toral {

struct Sft {
    int d = 0;
    TransitionMatrix gamma;
    double lambda = 2.0;  // base of the metric

    Sft() = default;
    // Throws std::invalid_argument unless d >= 1 and lambda > 1.
    Sft(TransitionMatrix g, double metric_base);
};

Sft golden_mean_shift();
Sft full_shift_sft(int d);  // metric base d

// Symbols x_lo .. x_hi of a two-sided sequence.
struct SymbolicWindow {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
    std::vector<int> symbols;

    SymbolicWindow() = default;
    SymbolicWindow(std::int64_t lo_, std::vector<int> syms);

    std::int64_t length() const { return hi - lo + 1; }
    bool contains(std::int64_t i) const { return lo <= i && i <= hi; }
    int at(std::int64_t i) const { return symbols[static_cast<std::size_t>(i - lo)]; }
    friend bool operator==(const SymbolicWindow&, const SymbolicWindow&) = default;
};

struct Cylinder {
    SymbolicWindow window;
};

Cylinder symmetric_cylinder(const SymbolicWindow& w, std::int64_t n);

bool admissible(const SymbolicWindow& w, const TransitionMatrix& G);

// Interval enclosing d(x, y) for all points x, y extending the windows.
struct MetricBounds {
    double lower = 0;
    double upper = 1;
    bool exact() const { return lower == upper; }
};

// Throws DomainMismatch unless both windows contain position 0.
MetricBounds symbolic_metric(const SymbolicWindow& w1, const SymbolicWindow& w2, double lambda);

// (sigma^n x) restricted to the shifted index range.
SymbolicWindow shift_window(const SymbolicWindow& w, std::int64_t n);

BigInt count_admissible(const Sft& S, int n);
double log_big(const BigInt& v);

struct EntropyEstimate {
    double value = 0;  // log(#A_n) / n
    double limit = 0;  // log of the spectral radius of gamma
};

EntropyEstimate entropy_estimate(const Sft& S, int n);

enum class Recurrence { Holds, Fails, Undetermined };

struct RecurrenceResult {
    Recurrence status = Recurrence::Holds;
    int N = 0;  // first refuted (or undecided) N; 0 when Holds
};

// Smallest integer k with k >= alpha * N, computed exactly from the double.
std::int64_t ceil_alpha_n(double alpha, std::int64_t N);

RecurrenceResult uniform_recurrence_check(const SymbolicWindow& w, double alpha, int M, int N_max, double lambda);

std::string to_string(Recurrence r);
std::string format_window(const SymbolicWindow& w);
// "lo hi s_lo ... s_hi"; throws std::invalid_argument.
SymbolicWindow parse_window(std::string_view text);

}  // namespace toral
