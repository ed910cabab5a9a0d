#include "trirec/series.hpp"

#include <algorithm>
#include <cmath>

#include "trirec/error.hpp"
#include "trirec/roots.hpp"

namespace trirec {

namespace {

Polynomial trim(Polynomial p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

Polynomial poly_mul(const Polynomial& x, const Polynomial& y) {
    if (x.empty() || y.empty()) return {};
    Polynomial out(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    }
    return trim(std::move(out));
}

Polynomial poly_add(const Polynomial& x, const Polynomial& y) {
    Polynomial out(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
    return trim(std::move(out));
}

TruncatedSeries as_series(const Polynomial& p, std::size_t order) {
    std::vector<Rational> c(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(std::min(p.size(), order + 1)));
    return TruncatedSeries(std::move(c), order);
}

Rational pw(const Rational& x, long e) { return rat_pow(x, e); }

}  // namespace

std::string polynomial_to_string(const Polynomial& p) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        const bool negative = p[i].sign() < 0;
        const Rational mag = negative ? -p[i] : p[i];
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const bool unit = mag == Rational(1);
        if (!unit || i == 0) out += mag.to_string();
        if (i > 0) {
            if (!unit) out += "*";
            out += "h";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(trim(std::move(numerator))), den_(trim(std::move(denominator))) {
    if (den_.empty() || den_[0].is_zero()) {
        fail(ErrorCode::NonInvertibleSeries, "denominator has zero constant term");
    }
}

TruncatedSeries RationalFunction::expand(std::size_t order) const {
    return series_mul(as_series(num_, order), series_inverse(as_series(den_, order)));
}

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    if (x.den_ == y.den_) return {poly_add(x.num_, y.num_), x.den_};
    return {poly_add(poly_mul(x.num_, y.den_), poly_mul(y.num_, x.den_)), poly_mul(x.den_, y.den_)};
}

RationalFunction operator-(const RationalFunction& x) {
    Polynomial neg = x.num_;
    for (auto& c : neg) c = -c;
    return {std::move(neg), x.den_};
}

std::string RationalFunction::to_string() const {
    return "(" + polynomial_to_string(num_) + ") / (" + polynomial_to_string(den_) + ")";
}

RationalFunction gf_ap(const RationalParams& p, long n, long m) {
    const Sequence<Rational> w(p);
    const Sequence<Rational> v(basis_params(Basis::v, p.r, p.s, p.t));
    const Rational tm = pw(p.t, m);
    const Rational vm = v(m);
    const Rational wn = w(n);
    return {{wn, -(vm * wn - w(n + m)), tm * w(n - m)}, {Rational(1), -vm, tm * v(-m), -tm}};
}

namespace {

// The two pieces of the v-squares generating function; `stray` is the index
// that the corrected form reads as 2n-2m.
RationalFunction v_squares_gf(const Rational& r, const Rational& s, const Rational& t, long n, long m, long stray,
                              bool printed_sign) {
    const Sequence<Rational> v(basis_params(Basis::v, r, s, t));
    const Rational t2m = pw(t, 2 * m);
    const Rational tm = pw(t, m);
    const Rational vm = v(m);
    const Rational v2m = v(2 * m);
    const auto P = [&v](long i) {
        const Rational vi = v(i);
        return vi * vi - v(2 * i);
    };
    const RationalFunction first({-v(2 * n), v2m * v(2 * n) - v(2 * n + 2 * m), -t2m * v(2 * n - 2 * m)},
                                 {Rational(-1), v2m, -t2m * v(-2 * m), t2m});
    const Rational vnm = v(n - m);
    const Rational pp = P(n) * P(m);
    const RationalFunction second({Rational(-2) * P(n), (printed_sign ? -pp : pp) - Rational(2) * P(n + m),
                                   Rational(-2) * t2m * (vnm * vnm - v(stray))},
                                  {Rational(-2), P(m), Rational(-2) * tm * vm, Rational(2) * t2m});
    return first + second;
}

}  // namespace

RationalFunction gf_v_squares(const Rational& r, const Rational& s, const Rational& t, long n, long m) {
    return v_squares_gf(r, s, t, n, m, 2 * n - 2 * m, false);
}

RationalFunction gf_v_squares_printed(const Rational& r, const Rational& s, const Rational& t, long n, long m,
                                      long k) {
    return v_squares_gf(r, s, t, n, m, 2 * n - 2 * k * m, true);
}

RationalFunction gf_uv(const Rational& r, const Rational& s, const Rational& t, long n, long m) {
    const Sequence<Rational> u(basis_params(Basis::u, r, s, t));
    const Sequence<Rational> v(basis_params(Basis::v, r, s, t));
    const Rational t2m = pw(t, 2 * m);
    const Rational tm = pw(t, m);
    const Rational v2m = v(2 * m);
    const Rational tm_vneg = tm * v(-m);
    const auto Q = [&](long i) { return u(2 * i) - u(i) * v(i); };
    const RationalFunction first({-u(2 * n), v2m * u(2 * n) - u(2 * n + 2 * m), -t2m * u(2 * n - 2 * m)},
                                 {Rational(-1), v2m, -t2m * v(-2 * m), t2m});
    const RationalFunction second({Q(n), -(tm_vneg * Q(n) - Q(n + m)), t2m * Q(n - m)},
                                  {Rational(-1), tm_vneg, -tm * v(m), t2m});
    return first + second;
}

bool gf_expand_check(const RationalFunction& rf, std::span<const Rational> expected, std::size_t order) {
    if (expected.size() < order + 1) {
        fail(ErrorCode::BindingMismatch, "expected " + std::to_string(order + 1) + " coefficients");
    }
    const TruncatedSeries got = rf.expand(order);
    for (std::size_t i = 0; i <= order; ++i) {
        if (got[i] != expected[i]) return false;
    }
    return true;
}

std::vector<Rational> ap_terms(const RationalParams& p, SummandKind kind, long n, long m, std::size_t order) {
    const Sequence<Rational> w(p);
    const Sequence<Rational> u(basis_params(Basis::u, p.r, p.s, p.t));
    const Sequence<Rational> v(basis_params(Basis::v, p.r, p.s, p.t));
    std::vector<Rational> out;
    out.reserve(order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        const long i = n + static_cast<long>(j) * m;
        switch (kind) {
            case SummandKind::w: out.push_back(w(i)); break;
            case SummandKind::v_squares: {
                const Rational vi = v(i);
                out.push_back(vi * vi);
                break;
            }
            case SummandKind::uv: out.push_back(u(i) * v(i)); break;
        }
    }
    return out;
}

double egf_check(const RationalParams& p, long n, long m, std::size_t order) {
    if (order > 20) fail(ErrorCode::BindingMismatch, "egf_check supports L <= 20");
    const CubicRoots cr = solve_cubic(p.r, p.s, p.t);
    const BinetCoefficients k = binet_coefficients(p, cr);
    const Sequence<Rational> w(p);
    double worst = 0.0;
    double factorial = 1.0;
    for (std::size_t j = 0; j <= order; ++j) {
        if (j > 0) factorial *= static_cast<double>(j);
        const long i = n + m * static_cast<long>(j);
        const Complex64 floating = binet_term(k, cr, i) / factorial;
        const double exact = w(i).to_double() / factorial;
        worst = std::max(worst, std::abs(floating - exact));
    }
    return worst;
}

}  // namespace trirec
