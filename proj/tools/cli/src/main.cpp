#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "table.hpp"
#include "toral/algebra.hpp"
#include "toral/dimension.hpp"
#include "toral/errors.hpp"
#include "toral/estimate.hpp"
#include "toral/layout.hpp"
#include "toral/partition.hpp"
#include "toral/shift.hpp"
#include "toral/tables.hpp"
#include "toral/verify.hpp"

namespace {

using namespace toral;
using cli::Cell;
using cli::Table;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Global {
    std::string format = "csv";
    int precision = 12;
    std::uint64_t seed = 1;
    std::string output;
};

// What a subcommand produced: the table to print and whether the checks it
// ran all held.
struct Result {
    Table table;
    bool ok = true;
};

MarkovPartition load_partition(const std::string& catalog_name, const std::string& file) {
    if (file.empty()) return catalog(catalog_name).second;
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot read " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return partition_from_json(ss.str());
}

Sft named_sft(const std::string& name) {
    if (name == "golden") return golden_mean_shift();
    if (name.rfind("full", 0) == 0) {
        const int d = std::stoi(name.substr(4));
        return full_shift_sft(d);
    }
    const auto [A, P] = catalog(name);
    return Sft(transition_matrix(P), spectrum(A).lambda_value);
}

Cell big_or_int(const BigInt& v) { return v; }

// "p + q lambda" with unit and zero coefficients dropped.
std::string quad_text(const QuadNum& v) {
    if (v.q() == 0) return to_string(v.p());
    std::string q = v.q() == 1 ? "lambda" : v.q() == -1 ? "-lambda" : to_string(v.q()) + " lambda";
    if (v.p() == 0) return q;
    if (q[0] == '-') return to_string(v.p()) + " - " + q.substr(1);
    return to_string(v.p()) + " + " + q;
}

// Root of x^2 - t x + det with the larger modulus, in radicals.
std::string lambda_text(const QuadContext& c) {
    const std::int64_t disc = c.trace * c.trace - 4 * c.det;
    return "(" + std::to_string(c.trace) + (c.trace < 0 ? " - " : " + ") + "sqrt(" + std::to_string(disc) + "))/2";
}

Result run_spectrum(const std::vector<std::int64_t>& m, bool normalize) {
    const ToralAutomorphism A(m[0], m[1], m[2], m[3]);
    const Spectrum s = spectrum(A, normalize);
    const EigenFrame frame(A);
    Result r;
    r.table.columns = {"quantity", "exact", "value"};
    auto add = [&](const std::string& q, const QuadNum& v) { r.table.add({q, quad_text(v), v.to_double()}); };
    r.table.add({"matrix", std::to_string(s.matrix.a) + " " + std::to_string(s.matrix.b) + " " +
                               std::to_string(s.matrix.c) + " " + std::to_string(s.matrix.d),
                 std::monostate{}});
    r.table.add({"trace", std::to_string(s.context.trace), static_cast<double>(s.context.trace)});
    r.table.add({"det", std::to_string(s.context.det), static_cast<double>(s.context.det)});
    r.table.add({"lambda", lambda_text(s.context), s.lambda.to_double()});
    add("lambda_inv", s.lambda_inv);
    add("mu", s.mu);
    add("unstable_dir_x", s.unstable_dir[0]);
    add("unstable_dir_y", s.unstable_dir[1]);
    add("stable_dir_x", s.stable_dir[0]);
    add("stable_dir_y", s.stable_dir[1]);
    if (!normalize) {
        r.table.add({"unstable_frame_x", std::monostate{}, frame.unstable_x});
        r.table.add({"unstable_frame_y", std::monostate{}, frame.unstable_y});
        r.table.add({"stable_frame_x", std::monostate{}, frame.stable_x});
        r.table.add({"stable_frame_y", std::monostate{}, frame.stable_y});
    }
    return r;
}

Result run_partition(const std::string& action, const std::string& name, const std::string& file) {
    const MarkovPartition P = load_partition(name, file);
    Result r;
    if (action == "validate") {
        const ValidationReport v = validate_partition(P);
        r.table.columns = {"check", "passed", "note"};
        r.table.add({"cover", std::int64_t{v.cover}, std::monostate{}});
        r.table.add({"disjoint", std::int64_t{v.disjoint}, std::monostate{}});
        r.table.add({"markov", std::int64_t{v.markov}, std::monostate{}});
        r.table.add({"single_crossing", std::int64_t{v.single_crossing}, std::monostate{}});
        for (const auto& p : v.problems) r.table.add({"problem", std::monostate{}, p});
        r.ok = v.ok();
    } else if (action == "matrix") {
        const TransitionMatrix G = transition_matrix(P);
        r.table.columns = {"row"};
        for (int j = 0; j < G.d; ++j) r.table.columns.push_back("col" + std::to_string(j));
        for (int i = 0; i < G.d; ++i) {
            std::vector<Cell> row{std::int64_t{i}};
            for (int j = 0; j < G.d; ++j) row.emplace_back(std::int64_t{G(i, j)});
            r.table.add(std::move(row));
        }
    } else {
        const GeometryConstants g = geometry_constants(P);
        const TransitionMatrix G = transition_matrix(P);
        r.table.columns = {"quantity", "value"};
        r.table.add({"elements", std::int64_t{G.d}});
        r.table.add({"c_min", g.c_min});
        r.table.add({"c_max", g.c_max});
        r.table.add({"b_min", g.b_min});
        r.table.add({"h_min", g.h_min});
        r.table.add({"k0", g.k0});
        r.table.add({"L", g.L});
        r.table.add({"spectral_radius", spectral_radius(G)});
        r.table.add({"lambda", spectrum(P.automorphism).lambda_value});
    }
    return r;
}

Result run_entropy(const std::string& sft, int n) {
    if (n < 1) throw std::invalid_argument("--n must be at least 1");
    const Sft S = named_sft(sft);
    Result r;
    r.table.columns = {"n", "count", "estimate", "limit"};
    for (int k = 1; k <= n; ++k) {
        const EntropyEstimate e = entropy_estimate(S, k);
        r.table.add({std::int64_t{k}, big_or_int(count_admissible(S, k)), e.value, e.limit});
    }
    return r;
}

Result run_dim(std::optional<double> alpha, std::optional<double> grid) {
    Result r;
    r.table.columns = {"alpha", "dim_uniform", "dim_asymptotic", "lower", "upper"};
    std::vector<DimensionRow> rows;
    if (alpha) {
        rows.push_back(dimension_row(*alpha));
    } else {
        rows = dimension_rows(*grid);
    }
    for (const auto& d : rows) {
        r.table.add({d.alpha, d.dim_uniform, d.dim_asymptotic, d.lower,
                     d.upper ? Cell(*d.upper) : Cell(std::monostate{})});
    }
    return r;
}

Cell endpoint(const Rational& v, bool rounded) {
    if (rounded) return BigInt(floor(v));
    return to_double(v);
}

Result run_layout(const std::string& alpha, const std::string& theta, const std::string& n1, int K, bool rounded) {
    LayoutParams p;
    p.alpha = parse_rational(alpha);
    p.theta = parse_rational(theta);
    p.n1 = n1.empty() ? p.theta : parse_rational(n1);
    p.K = K;
    p.mode = rounded ? LayoutMode::Rounded : LayoutMode::Idealized;
    const BlockLayout L = build_layout(p);
    Result r;
    r.table.columns = {"kind", "k", "left_end", "right_end"};
    for (int k = 1; k <= L.K(); ++k) {
        const auto& b = L.right_blocks[static_cast<std::size_t>(k - 1)];
        r.table.add({"right", std::int64_t{k}, endpoint(b.lo, rounded), endpoint(b.hi, rounded)});
    }
    for (int k = 1; k <= static_cast<int>(L.left_blocks.size()); ++k) {
        const auto& b = L.left_blocks[static_cast<std::size_t>(k - 1)];
        r.table.add({"left", std::int64_t{k}, endpoint(b.lo, rounded), endpoint(b.hi, rounded)});
    }
    for (std::size_t i = 0; i < L.free_intervals.size(); ++i) {
        const auto& f = L.free_intervals[i];
        r.table.add({"free", static_cast<std::int64_t>(i + 1), endpoint(f.lo, rounded), endpoint(f.hi, rounded)});
    }
    return r;
}

Result run_cardinality(std::int64_t delta, std::int64_t n1, int K, const std::string& sft, int symbol) {
    const CardinalityFamily f = cardinality_family(delta, n1, K, named_sft(sft), symbol);
    Result r;
    r.table.columns = {"kind", "k", "lo", "hi", "size"};
    auto add = [&](const char* kind, std::size_t i, const std::array<std::int64_t, 2>& b) {
        r.table.add({kind, static_cast<std::int64_t>(i + 1), b[0], b[1], b[1] - b[0] + 1});
    };
    for (std::size_t i = 0; i < f.right_blocks.size(); ++i) add("right", i, f.right_blocks[i]);
    for (std::size_t i = 0; i < f.left_blocks.size(); ++i) add("left", i, f.left_blocks[i]);
    for (std::size_t i = 0; i < f.gaps.size(); ++i) add("gap", i, f.gaps[i]);
    r.table.add({"witness_count", std::int64_t{K}, std::monostate{}, std::monostate{}, f.witness_count});
    return r;
}

Result run_estimate(double alpha, int M, int n_max, std::optional<int> m_min, int m_max, const std::string& sft) {
    const Sft S = named_sft(sft);
    const ConstraintSpec c{alpha, M, n_max, S.lambda};
    const int lo = m_min ? *m_min : static_cast<int>(minimal_radius(c));
    if (m_max < lo) throw std::invalid_argument("--m-max is below the first radius");
    Result r;
    r.table.columns = {"m", "count", "log_count", "slope_running"};
    std::vector<int> radii;
    std::vector<double> logs;
    for (int m = lo; m <= m_max; ++m) {
        const BigInt count = count_constrained_windows(S, c, m);
        radii.push_back(m);
        logs.push_back(log_big(count));
        Cell slope = std::monostate{};
        if (radii.size() >= 3) slope = fit_dimension_logs(radii, logs, S.lambda).slope;
        r.table.add({std::int64_t{m}, count, logs.back(), slope});
    }
    return r;
}

Result run_verify(const std::vector<int>& only, std::uint64_t seed) {
    verify::Options opt;
    opt.seed = seed;
    Result r;
    r.table.columns = {"id", "name", "status", "seconds", "detail"};
    std::vector<int> ids = only;
    if (ids.empty()) {
        for (const auto& c : verify::criteria()) ids.push_back(c.id);
    }
    for (int id : ids) {
        const auto res = verify::run_criterion(id, opt);
        std::cerr << (res.passed ? "PASS" : "FAIL") << " criterion " << res.id << ": " << res.name << '\n';
        r.table.add({std::int64_t{res.id}, res.name, res.passed ? "PASS" : "FAIL", res.seconds, res.detail});
        r.ok = r.ok && res.passed;
    }
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform-recurrence dimension toolkit for hyperbolic toral automorphisms"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--precision", g.precision, "Significant digits for real numbers")->check(CLI::Range(1, 17));
    app.add_option("--seed", g.seed, "Seed for sampled checks");
    app.add_option("--output", g.output, "Write to this file instead of stdout");

    std::function<Result()> job;

    auto* spec = app.add_subcommand("spectrum", "Eigenvalues and eigendirections of a matrix a b c d");
    std::vector<std::int64_t> matrix;
    bool normalize = false;
    spec->add_option("entries", matrix, "Row-major entries a b c d")->required()->expected(4);
    spec->add_flag("--normalize", normalize, "Analyse A^2 instead of A");
    spec->callback([&] { job = [&] { return run_spectrum(matrix, normalize); }; });

    auto* part = app.add_subcommand("partition", "Validate a Markov partition or print its data");
    std::string action, cat_name = "cat", part_file;
    part->add_option("action", action, "validate, matrix or constants")
        ->required()
        ->check(CLI::IsMember({"validate", "matrix", "constants"}));
    auto* cat_opt = part->add_option("--catalog", cat_name, "Catalog entry");
    part->add_option("--file", part_file, "Partition JSON file")->excludes(cat_opt);
    part->callback([&] { job = [&] { return run_partition(action, cat_name, part_file); }; });

    auto* ent = app.add_subcommand("entropy", "Admissible-word counts and entropy estimates");
    std::string ent_sft = "cat";
    int ent_n = 30;
    ent->add_option("--sft", ent_sft, "golden, fullD, or a catalog entry");
    ent->add_option("--n", ent_n, "Largest word length");
    ent->callback([&] { job = [&] { return run_entropy(ent_sft, ent_n); }; });

    auto* dim = app.add_subcommand("dim", "Dimension formulas and the matching bounds");
    std::optional<double> dim_alpha, dim_grid;
    auto* a_opt = dim->add_option("--alpha", dim_alpha, "Single alpha");
    auto* g_opt = dim->add_option("--grid", dim_grid, "Grid step on [0, 1/3]");
    a_opt->excludes(g_opt);
    dim->require_option(1);
    dim->callback([&] { job = [&] { return run_dim(dim_alpha, dim_grid); }; });

    auto* lay = app.add_subcommand("layout", "Fixed-block layout for given alpha and theta");
    std::string lay_alpha, lay_theta, lay_n1;
    int lay_k = 5;
    bool rounded = false;
    lay->add_option("--alpha", lay_alpha, "Exponent, decimal or p/q")->required();
    lay->add_option("--theta", lay_theta, "Growth ratio, decimal or p/q")->required();
    lay->add_option("--k", lay_k, "Number of blocks")->required();
    lay->add_option("--n1", lay_n1, "First center (defaults to theta)");
    lay->add_flag("--rounded", rounded, "Integer positions");
    lay->callback([&] { job = [&] { return run_layout(lay_alpha, lay_theta, lay_n1, lay_k, rounded); }; });

    auto* card = app.add_subcommand("cardinality", "Block family with n_{k+1} = 3(n_k + delta)");
    std::int64_t delta = 0, card_n1 = 0;
    int card_k = 0, symbol = 0;
    std::string card_sft = "full2";
    card->add_option("--delta", delta, "Separation parameter")->required();
    card->add_option("--n1", card_n1, "First center")->required();
    card->add_option("--k", card_k, "Number of blocks")->required();
    card->add_option("--sft", card_sft, "golden, fullD, or a catalog entry");
    card->add_option("--symbol", symbol, "Symbol filling the fixed blocks");
    card->callback([&] { job = [&] { return run_cardinality(delta, card_n1, card_k, card_sft, symbol); }; });

    auto* est = app.add_subcommand("estimate", "Constrained window counts and fitted slopes");
    double est_alpha = 0;
    int m_max = 0, n_max = 0, est_M = 1;
    std::optional<int> m_min;
    std::string est_sft = "golden";
    est->add_option("--alpha", est_alpha, "Recurrence exponent")->required();
    est->add_option("--m-max", m_max, "Largest window radius")->required();
    est->add_option("--n-max", n_max, "Deepest recurrence condition")->required();
    est->add_option("--m-min", m_min, "Smallest radius (defaults to the minimal one)");
    est->add_option("--M", est_M, "Shallowest recurrence condition");
    est->add_option("--sft", est_sft, "golden, fullD, or a catalog entry");
    est->callback([&] { job = [&] { return run_estimate(est_alpha, est_M, n_max, m_min, m_max, est_sft); }; });

    auto* ver = app.add_subcommand("verify", "Run the acceptance checks");
    std::vector<int> only;
    ver->add_option("--criterion", only, "Run only these criteria (comma separated)")->delimiter(',')->check(CLI::Range(1, 11));
    ver->callback([&] { job = [&] { return run_verify(only, g.seed); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const Result res = job();
        const auto fmt = g.format == "json" ? cli::Format::Json : cli::Format::Csv;
        if (g.output.empty()) {
            cli::write(res.table, std::cout, fmt, g.precision);
        } else {
            std::ofstream out(g.output, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot write " + g.output);
            cli::write(res.table, out, fmt, g.precision);
        }
        return res.ok ? kExitOk : kExitFailed;
    } catch (const BoundaryHit& e) {
        std::cerr << "error: " << e.name() << " at iterate " << e.index() << ": " << e.what() << '\n';
        return kExitFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
        return kExitFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}
