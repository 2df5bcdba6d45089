#include "toral/algebra.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "toral/errors.hpp"

namespace toral {

namespace mp = boost::multiprecision;

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
    int exp = 0;
    double mant = std::frexp(v, &exp);
    // mant * 2^53 is an integer for any double.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r = Rational(BigInt(scaled));
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << (-exp));
    }
    return r;
}

Rational parse_rational(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("not a rational literal: " + std::string(text)); };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw fail();
        return num / den;
    }

    bool negative = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    BigInt digits = 0;
    long long scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            digits = digits * 10 + (ch - '0');
            if (seen_point) --scale;
            seen_digit = true;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw fail();
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw fail();
        ++i;
        std::string rest(text.substr(i));
        if (rest.empty()) throw fail();
        std::size_t used = 0;
        long long e = 0;
        try {
            e = std::stoll(rest, &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != rest.size() || std::llabs(e) > 4000) throw fail();
        scale += e;
    }
    Rational r{digits};
    BigInt ten_pow = mp::pow(BigInt(10), static_cast<unsigned>(std::llabs(scale)));
    if (scale > 0) r *= Rational(ten_pow);
    if (scale < 0) r /= Rational(ten_pow);
    return negative ? Rational(-r) : r;
}

double to_double(const Rational& r) {
    const BigInt& n = mp::numerator(r);
    const BigInt& d = mp::denominator(r);
    if (n == 0) return 0.0;
    // Correctly rounded conversion divides big integers; within double range
    // the quotient of two rounded values is off by a few ulp at most.
    if (mp::msb(abs(n)) < 1000 && mp::msb(d) < 1000) return n.convert_to<double>() / d.convert_to<double>();
    return r.convert_to<double>();
}

BigInt floor(const Rational& r) {
    const BigInt& n = mp::numerator(r);
    const BigInt& d = mp::denominator(r);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

BigInt ceil(const Rational& r) { return -floor(Rational(-r)); }

Rational frac(const Rational& r) { return r - Rational(floor(r)); }

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << mp::numerator(r);
    if (mp::denominator(r) != 1) os << '/' << mp::denominator(r);
    return os.str();
}

// ---------------------------------------------------------------- QuadNum

QuadNum::QuadNum(Rational p, Rational q, QuadContext ctx)
    : p_(std::move(p)), q_(std::move(q)), ctx_(ctx) {
    if (q_ != 0 && !ctx_.valid()) throw std::invalid_argument("irrational QuadNum needs a context");
}

void QuadNum::adopt(const QuadNum& o) {
    if (ctx_ == o.ctx_) return;
    if (!o.ctx_.valid()) {
        if (o.q_ != 0) throw std::invalid_argument("QuadNum without context");
        return;
    }
    if (!ctx_.valid() && q_ == 0) {
        ctx_ = o.ctx_;
        return;
    }
    if (o.q_ == 0) return;
    throw std::invalid_argument("QuadNum context mismatch");
}

QuadNum QuadNum::conjugate() const {
    // lambda' = t - lambda, so p + q lambda' = (p + q t) - q lambda.
    return {p_ + q_ * ctx_.trace, -q_, ctx_};
}

Rational QuadNum::norm() const {
    // (p + q l)(p + q l') = p^2 + p q t + q^2 s.
    return p_ * p_ + p_ * q_ * ctx_.trace + q_ * q_ * ctx_.det;
}

double QuadNum::to_double() const {
    if (q_ == 0) return toral::to_double(p_);
    double t = static_cast<double>(ctx_.trace);
    double disc = t * t - 4.0 * static_cast<double>(ctx_.det);
    double lam = (t + std::copysign(std::sqrt(disc), t == 0 ? 1.0 : t)) / 2.0;
    const double pd = toral::to_double(p_), qd = toral::to_double(q_) * lam;
    const double direct = pd + qd;
    if (std::abs(direct) > 1e-3 * (std::abs(pd) + std::abs(qd))) return direct;
    // Heavy cancellation: divide the exact norm by the conjugate, which is large.
    const double lam_conj = t - lam;
    return toral::to_double(norm()) / (pd + toral::to_double(q_) * lam_conj);
}

QuadNum QuadNum::operator-() const { return {-p_, -q_, ctx_}; }

QuadNum& QuadNum::operator+=(const QuadNum& o) {
    adopt(o);
    p_ += o.p_;
    q_ += o.q_;
    return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
    adopt(o);
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
    adopt(o);
    // (p + q l)(p' + q' l) with l^2 = t l - s.
    Rational qq = q_ * o.q_;
    Rational np = p_ * o.p_ - qq * ctx_.det;
    Rational nq = p_ * o.q_ + q_ * o.p_ + qq * ctx_.trace;
    p_ = std::move(np);
    q_ = std::move(nq);
    return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& o) {
    adopt(o);
    Rational n = o.norm();
    if (n == 0) throw std::domain_error("QuadNum division by zero");
    QuadNum inv = o.conjugate();
    inv.p_ /= n;
    inv.q_ /= n;
    return *this *= inv;
}

bool operator==(const QuadNum& a, const QuadNum& b) {
    if (a.q_ == 0 && b.q_ == 0) return a.p_ == b.p_;
    return a.ctx_ == b.ctx_ && a.p_ == b.p_ && a.q_ == b.q_;
}

namespace {

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

}  // namespace

int quad_sign(const QuadNum& v) {
    if (v.q() == 0) return sign_of(v.p());
    const auto& ctx = v.context();
    // lambda = (t + e sqrt(D)) / 2 with e = sign(t), so
    // 2 (p + q lambda) = (2p + q t) + (q e) sqrt(D).
    const std::int64_t disc = ctx.trace * ctx.trace - 4 * ctx.det;
    const int e = ctx.trace >= 0 ? 1 : -1;
    Rational a = 2 * v.p() + v.q() * ctx.trace;
    Rational b = v.q() * e;

    // Floating screen, trusted only with a wide margin.
    double ad = to_double(a), bd = to_double(b) * std::sqrt(static_cast<double>(disc));
    double sum = ad + bd;
    if (std::abs(sum) > 1e-6 * (std::abs(ad) + std::abs(bd)) && std::isfinite(sum)) return sum > 0 ? 1 : -1;

    int sa = sign_of(a), sb = sign_of(b);
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 D.
    int cmp = sign_of(Rational(a * a - b * b * disc));
    return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
}

int compare(const QuadNum& a, const QuadNum& b) { return quad_sign(a - b); }

QuadNum abs(const QuadNum& v) { return quad_sign(v) < 0 ? -v : v; }
const QuadNum& min(const QuadNum& a, const QuadNum& b) { return compare(b, a) < 0 ? b : a; }
const QuadNum& max(const QuadNum& a, const QuadNum& b) { return compare(b, a) > 0 ? b : a; }

std::string to_string(const QuadNum& v) {
    if (v.q() == 0) return to_string(v.p());
    return to_string(v.p()) + " + " + to_string(v.q()) + "*l";
}

// ------------------------------------------------------ ToralAutomorphism

ToralAutomorphism::ToralAutomorphism(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
    : a(a_), b(b_), c(c_), d(d_) {
    const std::int64_t dt = det();
    if (dt != 1 && dt != -1) throw std::invalid_argument("determinant must be +1 or -1");
}

bool ToralAutomorphism::hyperbolic() const noexcept {
    const std::int64_t t = trace();
    return det() == 1 ? (t > 2 || t < -2) : t != 0;
}

ToralAutomorphism ToralAutomorphism::squared() const { return *this * *this; }

ToralAutomorphism ToralAutomorphism::inverse() const {
    const std::int64_t s = det();
    return {d * s, -b * s, -c * s, a * s};
}

ToralAutomorphism operator*(const ToralAutomorphism& x, const ToralAutomorphism& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Spectrum spectrum(const ToralAutomorphism& input, bool normalize) {
    if (!input.hyperbolic()) {
        throw NotHyperbolic("matrix [" + std::to_string(input.a) + " " + std::to_string(input.b) + "; " +
                            std::to_string(input.c) + " " + std::to_string(input.d) +
                            "] has an eigenvalue on the unit circle");
    }
    Spectrum out;
    out.matrix = normalize ? input.squared() : input;
    out.normalized = normalize;
    const auto& A = out.matrix;
    out.context = A.context();
    const auto& ctx = out.context;
    const std::int64_t s = ctx.det;

    out.lambda = QuadNum::lambda(ctx);
    // 1/lambda = (t - lambda)/s and s = +-1.
    out.lambda_inv = QuadNum(Rational(s * ctx.trace), Rational(-s), ctx);
    out.mu = QuadNum(Rational(ctx.trace), Rational(-1), ctx);
    out.lambda_value = out.lambda.to_double();
    out.lambda_inv_value = out.lambda_inv.to_double();
    // c != 0 for every hyperbolic matrix with |det| = 1.
    out.unstable_dir = {out.lambda - QuadNum(A.d), QuadNum(A.c)};
    out.stable_dir = {QuadNum(A.a) - out.lambda, QuadNum(A.c)};
    return out;
}

// --------------------------------------------------------------- EigenFrame

EigenFrame::EigenFrame(const ToralAutomorphism& A) : spec(spectrum(A)) {
    const auto& vu = spec.unstable_dir;
    const auto& vs = spec.stable_dir;
    jacobian = vu[0] * vs[1] - vu[1] * vs[0];
    unit_x = to_eigen(1, 0);
    unit_y = to_eigen(0, 1);
    unstable_x = vu[0].to_double();
    unstable_y = vu[1].to_double();
    stable_x = vs[0].to_double();
    stable_y = vs[1].to_double();
}

std::array<QuadNum, 2> EigenFrame::to_eigen(const Rational& x, const Rational& y) const {
    const auto& vu = spec.unstable_dir;
    const auto& vs = spec.stable_dir;
    QuadNum u = (QuadNum(x) * vs[1] - QuadNum(y) * vs[0]) / jacobian;
    QuadNum s = (vu[0] * QuadNum(y) - vu[1] * QuadNum(x)) / jacobian;
    return {u, s};
}

std::array<QuadNum, 2> EigenFrame::lattice(std::int64_t m, std::int64_t n) const {
    return {unit_x[0] * QuadNum(m) + unit_y[0] * QuadNum(n), unit_x[1] * QuadNum(m) + unit_y[1] * QuadNum(n)};
}

std::array<QuadNum, 2> EigenFrame::to_ambient(const QuadNum& u, const QuadNum& s) const {
    const auto& vu = spec.unstable_dir;
    const auto& vs = spec.stable_dir;
    return {u * vu[0] + s * vs[0], u * vu[1] + s * vs[1]};
}

std::array<double, 2> EigenFrame::to_ambient(double u, double s) const {
    return {u * unstable_x + s * stable_x, u * unstable_y + s * stable_y};
}

// ------------------------------------------------------------ torus points

TorusPointQ make_point(const Rational& x, const Rational& y) { return {frac(x), frac(y)}; }

TorusPointF make_point(double x, double y) {
    auto wrap = [](double v) {
        double f = v - std::floor(v);
        return f >= 1.0 ? 0.0 : f;
    };
    return {wrap(x), wrap(y)};
}

TorusPointQ iterate_point(const ToralAutomorphism& A, const TorusPointQ& p, std::int64_t n) {
    const ToralAutomorphism M = n >= 0 ? A : A.inverse();
    TorusPointQ x = make_point(p.x, p.y);
    for (std::int64_t k = 0; k < (n >= 0 ? n : -n); ++k) {
        x = make_point(x.x * M.a + x.y * M.b, x.x * M.c + x.y * M.d);
    }
    return x;
}

TorusPointF iterate_point(const ToralAutomorphism& A, const TorusPointF& p, std::int64_t n) {
    const ToralAutomorphism M = n >= 0 ? A : A.inverse();
    TorusPointF x = make_point(p.x, p.y);
    for (std::int64_t k = 0; k < (n >= 0 ? n : -n); ++k) {
        x = make_point(static_cast<double>(M.a) * x.x + static_cast<double>(M.b) * x.y,
                       static_cast<double>(M.c) * x.x + static_cast<double>(M.d) * x.y);
    }
    return x;
}

double torus_distance(const TorusPointF& x, const TorusPointF& y) {
    const TorusPointF a = make_point(x.x, x.y), b = make_point(y.x, y.y);
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            best = std::min(best, std::hypot(a.x - b.x + i, a.y - b.y + j));
        }
    }
    return best;
}

double torus_distance(const TorusPointQ& x, const TorusPointQ& y) {
    // Reduce the difference exactly before leaving the rationals.
    Rational dx = frac(x.x - y.x), dy = frac(x.y - y.y);
    return torus_distance(TorusPointF{0.0, 0.0}, TorusPointF{to_double(dx), to_double(dy)});
}

}  // namespace toral
