#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace toral {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double.
Rational rational_from_double(double v);

// Parses "p/q", integers and decimal literals ("-0.25", "3.414214", "1e-3")
// into the exact rational they denote. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);
BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);
// r - floor(r), in [0, 1).
Rational frac(const Rational& r);
std::string to_string(const Rational& r);

// Defines lambda as the root of x^2 - trace*x + det of larger modulus.
struct QuadContext {
    std::int64_t trace = 0;
    std::int64_t det = 0;

    bool valid() const noexcept { return trace != 0 || det != 0; }
    friend bool operator==(const QuadContext&, const QuadContext&) = default;
};

// p + q*lambda in Q(lambda). A value without context is a plain rational and
// adopts the context of whatever it is combined with.
class QuadNum {
public:
    QuadNum() = default;
    QuadNum(Rational p) : p_(std::move(p)) {}  // NOLINT: rationals embed
    QuadNum(std::int64_t p) : p_(p) {}         // NOLINT
    QuadNum(Rational p, Rational q, QuadContext ctx);

    static QuadNum lambda(QuadContext ctx) { return {0, 1, ctx}; }

    const Rational& p() const noexcept { return p_; }
    const Rational& q() const noexcept { return q_; }
    const QuadContext& context() const noexcept { return ctx_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    // Image under lambda -> trace - lambda.
    QuadNum conjugate() const;
    // Field norm (p + q lambda)(p + q lambda'), a rational.
    Rational norm() const;
    double to_double() const;

    QuadNum operator-() const;
    QuadNum& operator+=(const QuadNum& o);
    QuadNum& operator-=(const QuadNum& o);
    QuadNum& operator*=(const QuadNum& o);
    QuadNum& operator/=(const QuadNum& o);

    friend QuadNum operator+(QuadNum a, const QuadNum& b) { return a += b; }
    friend QuadNum operator-(QuadNum a, const QuadNum& b) { return a -= b; }
    friend QuadNum operator*(QuadNum a, const QuadNum& b) { return a *= b; }
    friend QuadNum operator/(QuadNum a, const QuadNum& b) { return a /= b; }
    friend bool operator==(const QuadNum& a, const QuadNum& b);

private:
    void adopt(const QuadNum& o);

    Rational p_{0};
    Rational q_{0};
    QuadContext ctx_{};
};

// Sign of p + q*lambda under the real embedding; exact.
int quad_sign(const QuadNum& v);
int compare(const QuadNum& a, const QuadNum& b);
inline bool operator<(const QuadNum& a, const QuadNum& b) { return compare(a, b) < 0; }
inline bool operator>(const QuadNum& a, const QuadNum& b) { return compare(a, b) > 0; }
inline bool operator<=(const QuadNum& a, const QuadNum& b) { return compare(a, b) <= 0; }
inline bool operator>=(const QuadNum& a, const QuadNum& b) { return compare(a, b) >= 0; }
QuadNum abs(const QuadNum& v);
const QuadNum& min(const QuadNum& a, const QuadNum& b);
const QuadNum& max(const QuadNum& a, const QuadNum& b);
std::string to_string(const QuadNum& v);

// Integer matrix [[a, b], [c, d]] acting on column vectors.
struct ToralAutomorphism {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    ToralAutomorphism() = default;
    // Throws std::invalid_argument unless |ad - bc| = 1.
    ToralAutomorphism(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    std::int64_t det() const noexcept { return a * d - b * c; }
    std::int64_t trace() const noexcept { return a + d; }
    bool hyperbolic() const noexcept;
    ToralAutomorphism squared() const;
    ToralAutomorphism inverse() const;
    QuadContext context() const noexcept { return {trace(), det()}; }

    friend bool operator==(const ToralAutomorphism&, const ToralAutomorphism&) = default;
};

ToralAutomorphism operator*(const ToralAutomorphism& x, const ToralAutomorphism& y);

struct Spectrum {
    ToralAutomorphism matrix;  // the analysed matrix (A^2 when normalized)
    bool normalized = false;
    QuadContext context;
    QuadNum lambda;      // expanding eigenvalue, |lambda| > 1
    QuadNum lambda_inv;  // 1 / lambda
    QuadNum mu;          // contracting eigenvalue det / lambda
    double lambda_value = 0;
    double lambda_inv_value = 0;
    std::array<QuadNum, 2> unstable_dir;  // (lambda - d, c)
    std::array<QuadNum, 2> stable_dir;    // (a - lambda, c)
};

// Throws NotHyperbolic when an eigenvalue lies on the unit circle.
Spectrum spectrum(const ToralAutomorphism& A, bool normalize = false);

// Coordinates (u, s) with x = u * unstable_dir + s * stable_dir.
struct EigenFrame {
    Spectrum spec;
    QuadNum jacobian;                  // det[unstable_dir stable_dir]
    std::array<QuadNum, 2> unit_x;     // eigencoordinates of (1, 0)
    std::array<QuadNum, 2> unit_y;     // eigencoordinates of (0, 1)

    explicit EigenFrame(const ToralAutomorphism& A);

    std::array<QuadNum, 2> to_eigen(const Rational& x, const Rational& y) const;
    std::array<QuadNum, 2> lattice(std::int64_t m, std::int64_t n) const;
    std::array<QuadNum, 2> to_ambient(const QuadNum& u, const QuadNum& s) const;
    std::array<double, 2> to_ambient(double u, double s) const;

    double unstable_x = 0, unstable_y = 0, stable_x = 0, stable_y = 0;
};

template <class T>
struct TorusPoint {
    T x{}, y{};
    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};
using TorusPointQ = TorusPoint<Rational>;
using TorusPointF = TorusPoint<double>;

TorusPointQ make_point(const Rational& x, const Rational& y);
TorusPointF make_point(double x, double y);

// T^n x mod 1; negative n iterates the inverse.
TorusPointQ iterate_point(const ToralAutomorphism& A, const TorusPointQ& x, std::int64_t n);
TorusPointF iterate_point(const ToralAutomorphism& A, const TorusPointF& x, std::int64_t n);

double torus_distance(const TorusPointF& x, const TorusPointF& y);
double torus_distance(const TorusPointQ& x, const TorusPointQ& y);

}  // namespace toral
