#include "trirec/roots.hpp"

#include <algorithm>
#include <cmath>

#include "trirec/error.hpp"

namespace trirec {

namespace {

double cubic(double x, double r, double s, double t) { return ((x - r) * x - s) * x - t; }

Complex64 cubic(Complex64 x, double r, double s, double t) { return ((x - r) * x - s) * x - t; }
Complex64 cubic_slope(Complex64 x, double r, double s) { return (3.0 * x - 2.0 * r) * x - s; }

Complex64 polish(Complex64 x, double r, double s, double t) {
    for (int i = 0; i < 8; ++i) {
        const Complex64 d = cubic_slope(x, r, s);
        if (std::abs(d) == 0.0) break;
        const Complex64 step = cubic(x, r, s, t) / d;
        x -= step;
        if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

double real_root(double r, double s, double t) {
    // Cauchy bound: every root has |x| < 1 + max |coefficient|.
    double hi = 1.0 + std::max({std::abs(r), std::abs(s), std::abs(t)});
    double lo = -hi;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cubic(mid, r, s, t) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return polish(Complex64(0.5 * (lo + hi), 0.0), r, s, t).real();
}

}  // namespace

double VietaResiduals::worst() const { return std::max({sum, pairs, product}); }

CubicRoots solve_cubic(const Rational& r, const Rational& s, const Rational& t) {
    if (t.is_zero()) fail(ErrorCode::NonInvertibleT, "t must be nonzero");
    const double rd = r.to_double(), sd = s.to_double(), td = t.to_double();
    const double x0 = real_root(rd, sd, td);

    // x^3 - r x^2 - s x - t = (x - x0)(x^2 + p x + q)
    const double p = x0 - rd;
    const double q = std::abs(x0) > 1.0 ? td / x0 : x0 * p - sd;
    const double disc = p * p - 4.0 * q;
    std::array<Complex64, 3> roots;
    roots[0] = Complex64(x0, 0.0);
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        const double big = p >= 0.0 ? -0.5 * (p + root) : -0.5 * (p - root);
        const double small = big != 0.0 ? q / big : 0.0;
        roots[1] = Complex64(polish(Complex64(big, 0.0), rd, sd, td).real(), 0.0);
        roots[2] = Complex64(polish(Complex64(small, 0.0), rd, sd, td).real(), 0.0);
    } else {
        const Complex64 z = polish(Complex64(-0.5 * p, 0.5 * std::sqrt(-disc)), rd, sd, td);
        roots[1] = Complex64(z.real(), std::abs(z.imag()));
        roots[2] = std::conj(roots[1]);
    }
    std::sort(roots.begin(), roots.end(), [](const Complex64& x, const Complex64& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });

    // Discriminant of x^3 + B x^2 + C x + D with B = -r, C = -s, D = -t, exactly.
    // A zero discriminant catches clustered roots that rounding pulls apart.
    const Rational B = -r, C = -s, D = -t;
    const Rational disc3 = Rational(18) * B * C * D - Rational(4) * B * B * B * D + B * B * C * C -
                           Rational(4) * C * C * C - Rational(27) * D * D;
    if (disc3.is_zero()) fail(ErrorCode::RepeatedRoots, "discriminant is zero");

    double sep = std::abs(roots[0] - roots[1]);
    sep = std::min(sep, std::abs(roots[0] - roots[2]));
    sep = std::min(sep, std::abs(roots[1] - roots[2]));
    if (sep < kRootSeparation) fail(ErrorCode::RepeatedRoots, "root separation " + std::to_string(sep));
    for (const auto& z : roots) require_finite(z, "root");
    return {roots, disc3.to_double(), sep};
}

VietaResiduals vieta_residuals(const CubicRoots& cr, const Rational& r, const Rational& s, const Rational& t) {
    const auto& [a, b, c] = cr.roots;
    const double rd = r.to_double(), sd = s.to_double(), td = t.to_double();
    return {std::abs(a + b + c - rd), std::abs(a * b + a * c + b * c + sd), std::abs(a * b * c - td),
            std::max({1.0, std::abs(rd), std::abs(sd), std::abs(td)})};
}

BinetCoefficients binet_coefficients(const RationalParams& p, const CubicRoots& cr) {
    const auto& [al, be, ga] = cr.roots;
    const Complex64 a(p.a.to_double()), b(p.b.to_double()), c(p.c.to_double());
    return {(be * (a * ga - b) + c - b * ga) / ((al - be) * (al - ga)),
            (ga * (a * al - b) + c - b * al) / ((be - al) * (be - ga)),
            (al * (a * be - b) + c - b * be) / ((ga - al) * (ga - be))};
}

Complex64 complex_pow(Complex64 z, long n) {
    const bool invert = n < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Complex64 acc(1.0, 0.0);
    while (e != 0) {
        if (e & 1UL) acc *= z;
        e >>= 1U;
        if (e != 0) z *= z;
    }
    return invert ? 1.0 / acc : acc;
}

Complex64 binet_term(const BinetCoefficients& k, const CubicRoots& cr, long n) {
    return k.A * complex_pow(cr.roots[0], n) + k.B * complex_pow(cr.roots[1], n) + k.C * complex_pow(cr.roots[2], n);
}

Complex64 binet_term(const RationalParams& p, long n) {
    const CubicRoots cr = solve_cubic(p.r, p.s, p.t);
    return require_finite(binet_term(binet_coefficients(p, cr), cr, n), "Binet value");
}

std::vector<Diagnostic> float_diagnostics(const RationalParams& p, long n) {
    const CubicRoots cr = solve_cubic(p.r, p.s, p.t);
    const auto& [al, be, ga] = cr.roots;
    const Sequence<Rational> u(basis_params(Basis::u, p.r, p.s, p.t));
    const Sequence<Rational> v(basis_params(Basis::v, p.r, p.s, p.t));
    const Sequence<Rational> z(basis_params(Basis::z, p.r, p.s, p.t));
    const double rd = p.r.to_double(), td = p.t.to_double();
    const auto mag = [](std::initializer_list<double> xs) { return std::max(1.0, std::max(xs)); };

    std::vector<Diagnostic> out;
    const double f = u(n - 1).to_double();
    const double g = u(n).to_double() - rd * f;
    const double h = td * u(n - 2).to_double();
    for (const auto& [name, x] : {std::pair{"power expansion (root 1)", al}, std::pair{"power expansion (root 2)", be},
                                  std::pair{"power expansion (root 3)", ga}}) {
        const Complex64 xn = complex_pow(x, n);
        const Complex64 rhs = f * x * x + g * x + h;
        out.push_back({name, std::abs(xn - rhs), mag({std::abs(xn), std::abs(f * x * x), std::abs(g * x), std::abs(h)})});
    }

    const Complex64 an = complex_pow(al, n), bn = complex_pow(be, n), gn = complex_pow(ga, n);
    const double vn = v(n).to_double();
    out.push_back({"power sum = v_n", std::abs(an + bn + gn - vn), mag({std::abs(an), std::abs(bn), std::abs(gn), std::abs(vn)})});

    const double tn = rat_pow(p.t, n).to_double();
    out.push_back({"(abc)^n = t^n", std::abs(an * bn * gn - tn), mag({std::abs(tn)})});

    const Complex64 pairs = an * bn + an * gn + bn * gn;
    const double tv = (rat_pow(p.t, n) * v(-n)).to_double();
    out.push_back({"pair powers = t^n v_{-n}", std::abs(pairs - tv),
                   mag({std::abs(an * bn), std::abs(an * gn), std::abs(bn * gn), std::abs(tv)})});

    const Complex64 A2 = (ga - 1.0) * (be - 1.0) / ((al - be) * (al - ga));
    const Complex64 B2 = (ga - 1.0) * (al - 1.0) / ((be - al) * (be - ga));
    const Complex64 C2 = (al - 1.0) * (be - 1.0) / ((ga - al) * (ga - be));
    const double zn = z(n).to_double();
    out.push_back({"z coefficients", std::abs(A2 * an + B2 * bn + C2 * gn - zn),
                   mag({std::abs(A2 * an), std::abs(B2 * bn), std::abs(C2 * gn), std::abs(zn)})});

    const BinetCoefficients k = binet_coefficients(p, cr);
    const double wn = term_iter(p, n).to_double();
    out.push_back({"Binet w_n", std::abs(binet_term(k, cr, n) - wn),
                   mag({std::abs(k.A * an), std::abs(k.B * bn), std::abs(k.C * gn), std::abs(wn)})});
    return out;
}

}  // namespace trirec
