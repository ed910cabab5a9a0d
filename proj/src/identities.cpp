#include "trirec/identities.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <tuple>
#include <random>
#include <thread>

#include "trirec/error.hpp"
#include "trirec/fast_eval.hpp"
#include "trirec/sums.hpp"

namespace trirec {

namespace {

using Reason = std::optional<std::string>;

Rational pw(const Rational& x, long e) { return rat_pow(x, e); }

// Lazily built sequences over the bound (r, s, t).
struct Ctx {
    const Bindings& b;
    Rational r, s, t;
    Sequence<Rational> u, v;

    explicit Ctx(const Bindings& bind)
        : b(bind), r(*bind.r), s(*bind.s), t(*bind.t), u(basis_params(Basis::u, r, s, t)),
          v(basis_params(Basis::v, r, s, t)) {}
};

struct WCtx : Ctx {
    RationalParams p;
    Sequence<Rational> w;

    explicit WCtx(const Bindings& bind) : Ctx(bind), p(bind.params()), w(p) {}
};

std::vector<std::vector<Rational>> pascal(long k) {
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(k + 1));
    for (long j = 0; j <= k; ++j) {
        auto& row = rows[static_cast<std::size_t>(j)];
        row.assign(static_cast<std::size_t>(j + 1), Rational(1));
        for (long i = 1; i < j; ++i) {
            const auto& up = rows[static_cast<std::size_t>(j - 1)];
            row[static_cast<std::size_t>(i)] = up[static_cast<std::size_t>(i - 1)] + up[static_cast<std::size_t>(i)];
        }
    }
    return rows;
}

// sum_{j=0..k} sum_{i=0..j} C(k,j) C(j,i) term(j, i)
template <class Term>
Rational double_binomial(long k, Term&& term) {
    const auto c = pascal(k);
    Rational total;
    for (long j = 0; j <= k; ++j) {
        const Rational& kj = c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        for (long i = 0; i <= j; ++i) {
            total += kj * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] * term(j, i);
        }
    }
    return total;
}

Rational sign(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

// u-product: t^n in terms of U2 = u_{n-2}, f = u_{n-1}, g = u_n - r u_{n-1}.
Rational u_product(const Ctx& x, long n, bool printed) {
    const Rational& r = x.r;
    const Rational& s = x.s;
    const Rational& t = x.t;
    const Rational u2 = x.u(n - 2);
    const Rational f = x.u(n - 1);
    const Rational g = x.u(n) - r * f;
    Rational out = t * t * t * u2 * u2 * u2 + t * g * g * g + t * t * f * f * f + t * f * g * (r * g - s * f) +
                   t * t * (r * r + Rational(2) * s) * f * u2 * u2 + t * (s * s - Rational(2) * r * t) * u2 * f * f;
    if (printed) {
        out += r * u2 * g * (t * f + u2) - t * (r * r * r + Rational(3) * r * s + Rational(3) * t) * f * u2 * g -
               s * u2 * g * g;
    } else {
        out += r * t * t * u2 * u2 * g - t * (r * s + Rational(3) * t) * f * u2 * g - s * t * u2 * g * g;
    }
    return out;
}

struct Generic {
    std::array<Rational, 3> x;
    std::array<Rational, 3> c;

    explicit Generic(const Bindings& b) : x{*b.x1, *b.x2, *b.x3}, c{*b.c1, *b.c2, *b.c3} {}

    // c1 x1^e + c2 x2^e + c3 x3^e
    Rational comb(long e) const {
        Rational out;
        for (std::size_t i = 0; i < 3; ++i) out += c[i] * pw(x[i], e);
        return out;
    }
    Rational power_sum(long e) const { return pw(x[0], e) + pw(x[1], e) + pw(x[2], e); }
    Rational pair_sum(long e) const {
        return pw(x[0] * x[1], e) + pw(x[0] * x[2], e) + pw(x[1] * x[2], e);
    }
    bool any_zero() const { return x[0].is_zero() || x[1].is_zero() || x[2].is_zero(); }
};

Reason need_nonzero_x(const Generic& g, std::initializer_list<long> exponents) {
    const bool negative = std::any_of(exponents.begin(), exponents.end(), [](long e) { return e < 0; });
    if (negative && g.any_zero()) return "x_i = 0 under a negative exponent";
    return std::nullopt;
}

Rational geo_sum_rhs(const Generic& g, long n, long m, long k, const Rational& h, bool printed) {
    const Rational e1 = g.power_sum(m);
    const Rational e2 = g.pair_sum(m);
    const Rational e3 = pw(g.x[0] * g.x[1] * g.x[2], m);
    const Rational den = e3 * pw(h, 3) - e2 * h * h + e1 * h - Rational(1);
    const long km = k * m;
    const long shifted = printed ? n - m : n + m;
    const Rational num = e3 * g.comb(km + n) * pw(h, k + 3) - e1 * g.comb(km + m + n) * pw(h, k + 2) +
                         g.comb(km + 2 * m + n) * pw(h, k + 2) + g.comb(km + m + n) * pw(h, k + 1) -
                         e3 * g.comb(n - m) * h * h + (e1 * g.comb(n) - g.comb(shifted)) * h - g.comb(n);
    return num / den;
}

Reason geo_sum_pre(const Bindings& b) {
    const Generic g(b);
    const long n = *b.n, m = *b.m, k = *b.k;
    if (auto why = need_nonzero_x(g, {n, m, n - m, n + k * m, n + k * m + 2 * m})) return why;
    for (const auto& xi : g.x) {
        if (pw(xi, m) * *b.h == Rational(1)) return "x_i^m h = 1";
    }
    return std::nullopt;
}

Sides geo_sum_eval(const Bindings& b, bool printed) {
    const Generic g(b);
    const long n = *b.n, m = *b.m, k = *b.k;
    const Rational& h = *b.h;
    Rational lhs;
    Rational hp(1);
    for (long j = 0; j <= k; ++j) {
        lhs += g.comb(m * j + n) * hp;
        hp *= h;
    }
    return {lhs, geo_sum_rhs(g, n, m, k, h, printed)};
}

Reason v_squares_pre(const Bindings& b) {
    if (!v_squares_closed_form(*b.r, *b.s, *b.t, *b.n, *b.m, *b.k, *b.h)) return "closed-form denominator is zero";
    return std::nullopt;
}

Sides v_squares_eval(const Bindings& b, VSquaresForm form) {
    return {sum_brute_v_squares(*b.r, *b.s, *b.t, *b.n, *b.m, *b.k, *b.h),
            *v_squares_closed_form(*b.r, *b.s, *b.t, *b.n, *b.m, *b.k, *b.h, form)};
}

Reason recip_pre(const Bindings& b, int variant) {
    if (const auto j = reciprocal_singular_index(variant, *b.r, *b.s, *b.t, *b.n, *b.k)) {
        return "zero summand denominator at j = " + std::to_string(*j);
    }
    return std::nullopt;
}

Sides recip_eval(const Bindings& b, int variant) {
    const auto sides = reciprocal_sum(variant, *b.r, *b.s, *b.t, *b.n, *b.k);
    return {sides.lhs, sides.rhs};
}

// Double-binomial identities over the recurrence itself (f = (r,s,t), shifts 1,2,3).
Sides dbin(const Bindings& b, int which) {
    const WCtx x(b);
    const long n = *b.n, k = *b.k;
    const Rational& r = x.r;
    const Rational& s = x.s;
    const Rational& t = x.t;
    const auto& w = x.w;
    switch (which) {
        case 1:
            return {double_binomial(k, [&](long j, long i) {
                        return pw(t, k - j) * pw(s, k + j - i) * pw(r, i) * w(n - 3 * k + j + i);
                    }),
                    pw(s, k) * w(n)};
        case 2:
            return {double_binomial(k, [&](long j, long i) {
                        return pw(s, k - j) * pw(t, k + j - i) * pw(r, i) * w(n - 2 * k - j + 2 * i);
                    }),
                    pw(t, k) * w(n)};
        case 3:
            return {double_binomial(k, [&](long j, long i) {
                        return pw(r, k - j) * pw(t, k + j - i) * pw(s, i) * w(n - k - 2 * j + i);
                    }),
                    pw(t, k) * w(n)};
        case 4:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(i) * pw(t, k - j) * pw(s, j - i) * w(n - 2 * k + j + 2 * i);
                    }),
                    pw(-r, k) * w(n)};
        case 5:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(i) * pw(t, k - j) * pw(r, j - i) * w(n - k + 2 * j + i);
                    }),
                    pw(-s, k) * w(n)};
        default:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(i) * pw(s, k - j) * pw(r, j - i) * w(n + k + j + i);
                    }),
                    pw(-t, k) * w(n)};
    }
}

// Double-binomial identities from the addition formula, with
// H = u_{m+1} - r u_m, U = u_m, T = t u_{m-1}.
Sides dbin_u(const Bindings& b, int which) {
    const WCtx x(b);
    const long n = *b.n, m = *b.m, k = *b.k;
    const auto& w = x.w;
    const Rational U = x.u(m);
    const Rational T = x.t * x.u(m - 1);
    const Rational H = x.u(m + 1) - x.r * U;
    switch (which) {
        case 1:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(i) * pw(T, k - j) * pw(U, k + j - i) * w(n - k + 2 * j + (m - 1) * i);
                    }),
                    pw(H, k) * pw(-U, k) * w(n)};
        case 2:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(i) * pw(U, k - j) * pw(T, k + j - i) * w(n + k - 2 * j + (m + 1) * i);
                    }),
                    pw(H, k) * pw(-T, k) * w(n)};
        case 3:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(j) * pw(T, k + j - i) * pw(U, i) * w(n + m * k - (m + 1) * j + 2 * i);
                    }),
                    pw(H, k) * pw(T, k) * w(n)};
        case 4:
            return {double_binomial(k, [&](long j, long i) {
                        return pw(T, k - j) * pw(U, j - i) * pw(H, i) * w(n - (m + 1) * k + 2 * j - i);
                    }),
                    w(n)};
        case 5:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(i + j) * pw(T, k - j) * pw(H, i) * w(n - 2 * k + (m + 1) * j - m * i);
                    }),
                    sign(k) * pw(U, k) * w(n)};
        default:
            return {double_binomial(k, [&](long j, long i) {
                        return sign(i + j) * pw(U, k - j) * pw(H, i) * w(n + 2 * k + (m - 1) * j - m * i);
                    }),
                    sign(k) * pw(T, k) * w(n)};
    }
}

std::vector<IdentityDescriptor> build_registry() {
    std::vector<IdentityDescriptor> reg;
    const auto add = [&reg](std::string id, std::string citation, unsigned signature,
                            std::function<Reason(const Bindings&)> pre, std::function<Sides(const Bindings&)> eval,
                            bool expected_fail = false) {
        if (!pre) pre = [](const Bindings&) -> Reason { return std::nullopt; };
        reg.push_back({std::move(id), std::move(citation), signature, std::move(pre), std::move(eval), expected_fail});
    };

    add("ADD_W", "addition formula: w_{n+m} = u_n w_{m+1} + (u_{n+1} - r u_n) w_m + t u_{n-1} w_{m-1}",
        kParams | kN | kM, nullptr, [](const Bindings& b) -> Sides {
            const WCtx x(b);
            const long n = *b.n, m = *b.m;
            return {x.w(n + m),
                    x.u(n) * x.w(m + 1) + (x.u(n + 1) - x.r * x.u(n)) * x.w(m) + x.t * x.u(n - 1) * x.w(m - 1)};
        });
    add("W_FROM_U", "w_n = b u_n + (c - b r) u_{n-1} + a t u_{n-2}", kParams | kN, nullptr,
        [](const Bindings& b) -> Sides {
            const WCtx x(b);
            const long n = *b.n;
            const auto& p = x.p;
            return {x.w(n), p.b * x.u(n) + (p.c - p.b * p.r) * x.u(n - 1) + p.a * p.t * x.u(n - 2)};
        });
    add("V_FROM_U", "v_n = r u_n + 2 s u_{n-1} + 3 t u_{n-2}", kRst | kN, nullptr, [](const Bindings& b) -> Sides {
        const Ctx x(b);
        const long n = *b.n;
        return {x.v(n), x.r * x.u(n) + Rational(2) * x.s * x.u(n - 1) + Rational(3) * x.t * x.u(n - 2)};
    });
    add("Z_FROM_U", "z_n = u_n + (1 - r) u_{n-1} + t u_{n-2}", kRst | kN, nullptr, [](const Bindings& b) -> Sides {
        const Ctx x(b);
        const long n = *b.n;
        const Sequence<Rational> z(basis_params(Basis::z, x.r, x.s, x.t));
        return {z(n), x.u(n) + (Rational(1) - x.r) * x.u(n - 1) + x.t * x.u(n - 2)};
    });
    add("U_NEG", "u_{-n} = (u_{n-1}^2 - u_n u_{n-2}) / t^{n-1}", kRst | kN, nullptr, [](const Bindings& b) -> Sides {
        const Ctx x(b);
        const long n = *b.n;
        const Rational um1 = x.u(n - 1);
        return {x.u(-n), (um1 * um1 - x.u(n) * x.u(n - 2)) / pw(x.t, n - 1)};
    });
    add("V_NEG", "v_{-n} = (v_n^2 - v_{2n}) / (2 t^n)", kRst | kN, nullptr, [](const Bindings& b) -> Sides {
        const Ctx x(b);
        const long n = *b.n;
        const Rational vn = x.v(n);
        return {x.v(-n), (vn * vn - x.v(2 * n)) / (Rational(2) * pw(x.t, n))};
    });
    add(
        "W_NEG_RATIO", "w_{-n} as a ratio of u-quadratics over (b u_n + (c - b r) u_{n-1} + a t u_{n-2}) t^n, times w_n",
        kParams | kN,
        [](const Bindings& b) -> Reason {
            if (Sequence<Rational>(b.params())(*b.n).is_zero()) return "w_n = 0";
            return std::nullopt;
        },
        [](const Bindings& b) -> Sides {
            const WCtx x(b);
            const long n = *b.n;
            const auto& p = x.p;
            const auto& u = x.u;
            const Rational cbr = p.c - p.b * p.r;
            const Rational um1 = u(n - 1), u0 = u(n), u1 = u(n + 1);
            const Rational num = p.b * p.t * (um1 * um1 - u0 * u(n - 2)) + cbr * (u0 * u0 - u1 * um1) +
                                 p.a * (u1 * u1 - u(n + 2) * u0);
            const Rational den = (p.b * u0 + cbr * um1 + p.a * p.t * u(n - 2)) * pw(p.t, n);
            return {x.w(-n), num / den * x.w(n)};
        });
    add("W_NEG_SIMPLE", "w_{-n} = (2 w_{2n} - 2 v_n w_n + a (v_n^2 - v_{2n})) / (2 t^n)", kParams | kN, nullptr,
        [](const Bindings& b) -> Sides {
            const WCtx x(b);
            const long n = *b.n;
            const Rational vn = x.v(n);
            const Rational num = Rational(2) * x.w(2 * n) - Rational(2) * vn * x.w(n) + x.p.a * (vn * vn - x.v(2 * n));
            return {x.w(-n), num / (Rational(2) * pw(x.t, n))};
        });
    add("HOWARD_H", "w_{n+m} = v_m w_n - t^m v_{-m} w_{n-m} + t^m w_{n-2m}", kParams | kN | kM, nullptr,
        [](const Bindings& b) -> Sides {
            const WCtx x(b);
            const long n = *b.n, m = *b.m;
            const Rational tm = pw(x.t, m);
            return {x.w(n + m), x.v(m) * x.w(n) - tm * x.v(-m) * x.w(n - m) + tm * x.w(n - 2 * m)};
        });
    add("HOWARD_H2", "2 w_{n+m} = 2 v_m w_n - (v_m^2 - v_{2m}) w_{n-m} + 2 t^m w_{n-2m}", kParams | kN | kM, nullptr,
        [](const Bindings& b) -> Sides {
            const WCtx x(b);
            const long n = *b.n, m = *b.m;
            const Rational vm = x.v(m);
            return {Rational(2) * x.w(n + m), Rational(2) * vm * x.w(n) - (vm * vm - x.v(2 * m)) * x.w(n - m) +
                                                  Rational(2) * pw(x.t, m) * x.w(n - 2 * m)};
        });
    add("U_ADD3", "u_{n+m} = v_m u_n - t^m v_{-m} u_{n-m} + t^m u_{n-2m}", kRst | kN | kM, nullptr,
        [](const Bindings& b) -> Sides {
            const Ctx x(b);
            const long n = *b.n, m = *b.m;
            const Rational tm = pw(x.t, m);
            return {x.u(n + m), x.v(m) * x.u(n) - tm * x.v(-m) * x.u(n - m) + tm * x.u(n - 2 * m)};
        });
    add("U_NEG_UV", "u_{-n} = (u_{2n} - u_n v_n) / t^n", kRst | kN, nullptr, [](const Bindings& b) -> Sides {
        const Ctx x(b);
        const long n = *b.n;
        return {x.u(-n), (x.u(2 * n) - x.u(n) * x.v(n)) / pw(x.t, n)};
    });
    add("U_NEG_UV2", "u_{-n} = (u_{2n-3} - u_{n-2} v_{n-1}) / t^{n-1}", kRst | kN, nullptr,
        [](const Bindings& b) -> Sides {
            const Ctx x(b);
            const long n = *b.n;
            return {x.u(-n), (x.u(2 * n - 3) - x.u(n - 2) * x.v(n - 1)) / pw(x.t, n - 1)};
        });
    add(
        "V_NEG_Q1", "v_{-n} = (u_{2n} v_n - u_{3n}) / (t^n u_n), n not in {-1, 0}", kRst | kN,
        [](const Bindings& b) -> Reason {
            if (*b.n == -1 || *b.n == 0) return "n in {-1, 0}";
            if (basis_term(Basis::u, *b.r, *b.s, *b.t, *b.n).is_zero()) return "u_n = 0";
            return std::nullopt;
        },
        [](const Bindings& b) -> Sides {
            const Ctx x(b);
            const long n = *b.n;
            return {x.v(-n), (x.u(2 * n) * x.v(n) - x.u(3 * n)) / (pw(x.t, n) * x.u(n))};
        });
    add(
        "V_NEG_Q2", "v_{-n} = (u_{2n-1} v_n - u_{3n-1}) / (t^n u_{n-1}), n not in {0, 1}", kRst | kN,
        [](const Bindings& b) -> Reason {
            if (*b.n == 0 || *b.n == 1) return "n in {0, 1}";
            if (basis_term(Basis::u, *b.r, *b.s, *b.t, *b.n - 1).is_zero()) return "u_{n-1} = 0";
            return std::nullopt;
        },
        [](const Bindings& b) -> Sides {
            const Ctx x(b);
            const long n = *b.n;
            return {x.v(-n), (x.u(2 * n - 1) * x.v(n) - x.u(3 * n - 1)) / (pw(x.t, n) * x.u(n - 1))};
        });
    for (const auto& [id, mult, text] : std::array<std::tuple<const char*, int, const char*>, 3>{{
             {"V_DOUBLE", 2, "v_{2n} = u_n v_{n+1} + (u_{n+1} - r u_n) v_n + t u_{n-1} v_{n-1}"},
             {"V_TRIPLE", 3, "2 v_{3n} = 6 t^n - v_n^3 + 3 u_n v_n v_{n+1} + 3 (u_{n+1} - r u_n) v_n^2 + 3 t u_{n-1} v_{n-1} v_n"},
             {"V_QUAD", 4, "2 v_{4n} as a quartic in v_n with u/v coefficients at n-1, n, n+1"},
         }}) {
        add(id, text, kRst | kN, nullptr, [mult](const Bindings& b) -> Sides {
            const Ctx x(b);
            const long n = *b.n;
            return {x.v(mult * n), v_multi_argument(x.r, x.s, x.t, n, mult)};
        });
    }
    add("U_PRODUCT_TN", "t^n as a cubic form in u_{n-2}, u_{n-1}, u_n - r u_{n-1} (product of the three root powers)",
        kRst | kN, nullptr, [](const Bindings& b) -> Sides {
            const Ctx x(b);
            return {pw(x.t, *b.n), u_product(x, *b.n, false)};
        });
    add(
        "U_PRODUCT_TN_PRINTED", "t^n cubic form with the uncorrected coefficients (r u_{n-2} g (t u_{n-1} + u_{n-2}), r^3 term)",
        kRst | kN, nullptr,
        [](const Bindings& b) -> Sides {
            const Ctx x(b);
            return {pw(x.t, *b.n), u_product(x, *b.n, true)};
        },
        true);
    add("V_CUBE_SYM", "t^{-n} (v_n^3 - v_{3n}) = t^n (v_{-n}^3 - v_{-3n})", kRst | kN, nullptr,
        [](const Bindings& b) -> Sides {
            const Ctx x(b);
            const long n = *b.n;
            const Rational vn = x.v(n), vneg = x.v(-n);
            return {pw(x.t, -n) * (vn * vn * vn - x.v(3 * n)), pw(x.t, n) * (vneg * vneg * vneg - x.v(-3 * n))};
        });
    add("POWSUM2", "x1^2 + x2^2 + x3^2 = p1^2 - 2 e2", kXs, nullptr, [](const Bindings& b) -> Sides {
        const Rational &x1 = *b.x1, &x2 = *b.x2, &x3 = *b.x3;
        const Rational p1 = x1 + x2 + x3, e2 = x1 * x2 + x1 * x3 + x2 * x3;
        return {x1 * x1 + x2 * x2 + x3 * x3, p1 * p1 - Rational(2) * e2};
    });
    add("POWSUM3", "x1^3 + x2^3 + x3^3 = p1^3 - 3 p1 e2 + 3 e3", kXs, nullptr, [](const Bindings& b) -> Sides {
        const Rational &x1 = *b.x1, &x2 = *b.x2, &x3 = *b.x3;
        const Rational p1 = x1 + x2 + x3, e2 = x1 * x2 + x1 * x3 + x2 * x3;
        return {x1 * x1 * x1 + x2 * x2 * x2 + x3 * x3 * x3,
                p1 * p1 * p1 - Rational(3) * p1 * e2 + Rational(3) * x1 * x2 * x3};
    });
    add("POWSUM4", "x1^4 + x2^4 + x3^4 = p1^4 - 4 p2 e2 - 6 sum (x_i x_j)^2 - 8 e3 p1", kXs, nullptr,
        [](const Bindings& b) -> Sides {
            const Generic g(b);
            const Rational p1 = g.power_sum(1), e2 = g.pair_sum(1), e3 = g.x[0] * g.x[1] * g.x[2];
            return {g.power_sum(4), pw(p1, 4) - Rational(4) * g.power_sum(2) * e2 - Rational(6) * g.pair_sum(2) -
                                        Rational(8) * e3 * p1};
        });
    add(
        "TRI_ADD_GEN", "sum c_i x_i^{n+m} = p_m(x) sum c_i x_i^n - e_m(x) sum c_i x_i^{n-m} + sum c_i x_i^{n-m} (x_j x_l)^m",
        kXs | kCs | kN | kM,
        [](const Bindings& b) -> Reason {
            const long n = *b.n, m = *b.m;
            return need_nonzero_x(Generic(b), {n + m, n, n - m, m});
        },
        [](const Bindings& b) -> Sides {
            const Generic g(b);
            const long n = *b.n, m = *b.m;
            const auto& x = g.x;
            const auto& c = g.c;
            const Rational cross = c[0] * pw(x[0], n - m) * pw(x[1] * x[2], m) +
                                   c[1] * pw(x[1], n - m) * pw(x[0] * x[2], m) +
                                   c[2] * pw(x[2], n - m) * pw(x[0] * x[1], m);
            return {g.comb(n + m), g.power_sum(m) * g.comb(n) - g.pair_sum(m) * g.comb(n - m) + cross};
        });
    add("GEO_SUM_GEN", "sum_{j=0..k} sum_i c_i x_i^{mj+n} h^j over prod (x_i^m h - 1); h-term uses the index n+m",
        kXs | kCs | kN | kM | kK | kH, geo_sum_pre, [](const Bindings& b) { return geo_sum_eval(b, false); });
    add("GEO_SUM_GEN_PRINTED", "generic geometric sum with the uncorrected h-term index n-m", kXs | kCs | kN | kM | kK | kH,
        geo_sum_pre, [](const Bindings& b) { return geo_sum_eval(b, true); }, true);
    add(
        "SUM_AP", "sum_{j=0..k} w_{n+jm} h^j over t^m h^3 - t^m v_{-m} h^2 + v_m h - 1", kParams | kN | kM | kK | kH,
        [](const Bindings& b) -> Reason {
            if (!ap_closed_form(b.params(), *b.n, *b.m, *b.k, *b.h)) return "closed-form denominator is zero";
            return std::nullopt;
        },
        [](const Bindings& b) -> Sides {
            const auto p = b.params();
            return {sum_brute(p, *b.n, *b.m, *b.k, *b.h), *ap_closed_form(p, *b.n, *b.m, *b.k, *b.h)};
        });
    add(
        "SUM_SIMPLE_H", "sum_{j=0..k} w_j h^j over t h^3 + s h^2 + r h - 1", kParams | kK | kH,
        [](const Bindings& b) -> Reason {
            if (!simple_sum_h_closed_form(b.params(), *b.k, *b.h)) return "closed-form denominator is zero";
            return std::nullopt;
        },
        [](const Bindings& b) -> Sides {
            const auto p = b.params();
            return {sum_brute(p, 0, 1, *b.k, *b.h), *simple_sum_h_closed_form(p, *b.k, *b.h)};
        });
    add(
        "SUM_SIMPLE", "sum_{j=0..k} w_j over r + s + t - 1", kParams | kK,
        [](const Bindings& b) -> Reason {
            if (*b.r + *b.s + *b.t == Rational(1)) return "r + s + t = 1";
            return std::nullopt;
        },
        [](const Bindings& b) -> Sides {
            const auto p = b.params();
            return {sum_brute(p, 0, 1, *b.k, Rational(1)), *simple_sum_closed_form(p, *b.k)};
        });
    add("SUM_V_SQ", "sum_{j=0..k} v_{n+jm}^2 h^j, corrected closed form (index 2n-2m, +P(n)P(m)h)",
        kRst | kN | kM | kK | kH, v_squares_pre,
        [](const Bindings& b) { return v_squares_eval(b, VSquaresForm::corrected); });
    add("SUM_V_SQ_PRINTED", "sum of v squares with the uncorrected index 2n-2km and sign", kRst | kN | kM | kK | kH,
        v_squares_pre, [](const Bindings& b) { return v_squares_eval(b, VSquaresForm::printed); }, true);
    add(
        "SUM_UV", "sum_{j=0..k} u_{n+jm} v_{n+jm} h^j", kRst | kN | kM | kK | kH,
        [](const Bindings& b) -> Reason {
            if (!uv_closed_form(*b.r, *b.s, *b.t, *b.n, *b.m, *b.k, *b.h)) return "closed-form denominator is zero";
            return std::nullopt;
        },
        [](const Bindings& b) -> Sides {
            return {sum_brute_uv(*b.r, *b.s, *b.t, *b.n, *b.m, *b.k, *b.h),
                    *uv_closed_form(*b.r, *b.s, *b.t, *b.n, *b.m, *b.k, *b.h)};
        });
    add("RECIP1", "u_{n+1} u_{n-k} sum t^j u_{k-n-j-1} / (u_{n-k+j} u_{n-k+j+1}) = t^{k-n} (u_n u_{n-k} - u_{n+1} u_{n-k-1})",
        kRst | kN | kK, [](const Bindings& b) { return recip_pre(b, 1); },
        [](const Bindings& b) { return recip_eval(b, 1); });
    add("RECIP2", "u_n u_{n-k-1} sum t^j u_{k-n-j-1} / (u_{n-k+j} u_{n-k+j-1}) = t^{k-n} (u_n u_{n-k} - u_{n+1} u_{n-k-1})",
        kRst | kN | kK, [](const Bindings& b) { return recip_pre(b, 2); },
        [](const Bindings& b) { return recip_eval(b, 2); });

    const std::array<const char*, 6> dbin_text{
        "sum C(k,j) C(j,i) t^{k-j} s^{k+j-i} r^i w_{n-3k+j+i} = s^k w_n",
        "sum C(k,j) C(j,i) s^{k-j} t^{k+j-i} r^i w_{n-2k-j+2i} = t^k w_n",
        "sum C(k,j) C(j,i) r^{k-j} t^{k+j-i} s^i w_{n-k-2j+i} = t^k w_n",
        "sum (-1)^i C(k,j) C(j,i) t^{k-j} s^{j-i} w_{n-2k+j+2i} = (-r)^k w_n",
        "sum (-1)^i C(k,j) C(j,i) t^{k-j} r^{j-i} w_{n-k+2j+i} = (-s)^k w_n",
        "sum (-1)^i C(k,j) C(j,i) s^{k-j} r^{j-i} w_{n+k+j+i} = (-t)^k w_n",
    };
    const std::array<const char*, 6> dbin_u_text{
        "sum (-1)^i C(k,j) C(j,i) T^{k-j} U^{k+j-i} w_{n-k+2j+(m-1)i} = H^k (-U)^k w_n",
        "sum (-1)^i C(k,j) C(j,i) U^{k-j} T^{k+j-i} w_{n+k-2j+(m+1)i} = H^k (-T)^k w_n",
        "sum (-1)^j C(k,j) C(j,i) T^{k+j-i} U^i w_{n+mk-(m+1)j+2i} = H^k T^k w_n",
        "sum C(k,j) C(j,i) T^{k-j} U^{j-i} H^i w_{n-(m+1)k+2j-i} = w_n",
        "sum (-1)^{i+j} C(k,j) C(j,i) T^{k-j} H^i w_{n-2k+(m+1)j-mi} = (-1)^k U^k w_n",
        "sum (-1)^{i+j} C(k,j) C(j,i) U^{k-j} H^i w_{n+2k+(m-1)j-mi} = (-1)^k T^k w_n",
    };
    for (int i = 1; i <= 6; ++i) {
        add("DBIN" + std::to_string(i), dbin_text[static_cast<std::size_t>(i - 1)], kParams | kN | kK, nullptr,
            [i](const Bindings& b) { return dbin(b, i); });
        add("DBIN_U" + std::to_string(i),
            std::string(dbin_u_text[static_cast<std::size_t>(i - 1)]) +
                "; H = u_{m+1} - r u_m, U = u_m, T = t u_{m-1}",
            kParams | kN | kM | kK, nullptr, [i](const Bindings& b) { return dbin_u(b, i); });
    }
    add("DELTA_DET", "det [f_{n+2} f_{n+1} f_n; g..; h..] = t^n with f_n = u_{n-1}, g_n = u_n - r u_{n-1}, h_n = t u_{n-2}",
        kRst | kN, nullptr, [](const Bindings& b) -> Sides {
            const Ctx x(b);
            const long n = *b.n;
            std::array<std::array<Rational, 3>, 3> a;
            for (long col = 0; col < 3; ++col) {
                const long i = n + 2 - col;
                const auto c = static_cast<std::size_t>(col);
                a[0][c] = x.u(i - 1);
                a[1][c] = x.u(i) - x.r * x.u(i - 1);
                a[2][c] = x.t * x.u(i - 2);
            }
            const Rational det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                                 a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                                 a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
            return {det, pw(x.t, n)};
        });

    std::sort(reg.begin(), reg.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    return reg;
}

struct FieldName {
    Var bit;
    const char* name;
};

constexpr std::array<FieldName, 16> kFields{{
    {kA, "a"}, {kB, "b"}, {kC, "c"}, {kR, "r"}, {kS, "s"}, {kT, "t"}, {kN, "n"}, {kM, "m"},
    {kK, "k"}, {kH, "h"}, {kX1, "x1"}, {kX2, "x2"}, {kX3, "x3"}, {kC1, "c1"}, {kC2, "c2"}, {kC3, "c3"},
}};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

class Sampler {
public:
    Sampler(const SuiteConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {}

    Rational rational() {
        const long num = uniform(-cfg_.numerator_bound, cfg_.numerator_bound);
        const long den = uniform(1, cfg_.denominator_bound);
        return Rational(num, den);
    }

    Rational nonzero() {
        for (;;) {
            Rational x = rational();
            if (!x.is_zero()) return x;
        }
    }

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Bindings draw(unsigned sig) {
        Bindings b;
        const auto opt = [&](unsigned bit, std::optional<Rational>& slot) {
            if (sig & bit) slot = rational();
        };
        opt(kA, b.a);
        opt(kB, b.b);
        opt(kC, b.c);
        opt(kR, b.r);
        opt(kS, b.s);
        if (sig & kT) b.t = nonzero();
        if (sig & kN) b.n = uniform(cfg_.n_lo, cfg_.n_hi);
        if (sig & kM) b.m = uniform(cfg_.m_lo, cfg_.m_hi);
        if (sig & kK) b.k = uniform(cfg_.k_lo, cfg_.k_hi);
        opt(kH, b.h);
        opt(kX1, b.x1);
        opt(kX2, b.x2);
        opt(kX3, b.x3);
        opt(kC1, b.c1);
        opt(kC2, b.c2);
        opt(kC3, b.c3);
        return b;
    }

private:
    const SuiteConfig& cfg_;
    std::mt19937_64 rng_;
};

Verdict evaluate(const IdentityDescriptor& d, const Bindings& b) {
    Verdict out;
    out.id = d.id;
    out.bindings = b;
    if (b.t && b.t->is_zero()) {
        out.skipped = true;
        out.skip_reason = "t = 0";
        return out;
    }
    try {
        if (auto why = d.precondition(b)) {
            out.skipped = true;
            out.skip_reason = std::move(*why);
            return out;
        }
        Sides sides = d.evaluate(b);
        out.equal = sides.lhs == sides.rhs;
        out.lhs = std::move(sides.lhs);
        out.rhs = std::move(sides.rhs);
    } catch (const DomainError& e) {
        out.error = e.what();
    }
    return out;
}

IdentityReport run_identity(const IdentityDescriptor& d, const SuiteConfig& cfg) {
    IdentityReport rep;
    rep.id = d.id;
    rep.expected_fail = d.expected_fail;
    Sampler sampler(cfg, identity_seed(cfg.seed, d.id));
    for (long trial = 0; trial < cfg.trials; ++trial) {
        ++rep.trials;
        Verdict v;
        for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
            v = evaluate(d, sampler.draw(d.signature));
            if (!v.skipped) break;
        }
        if (v.skipped) {
            ++rep.skips;
        } else if (v.equal) {
            ++rep.passes;
        } else {
            ++rep.fails;
            rep.failures.push_back(std::move(v));
        }
    }
    return rep;
}

void validate(const SuiteConfig& cfg) {
    if (cfg.trials < 0 || cfg.numerator_bound < 1 || cfg.denominator_bound < 1 || cfg.n_lo > cfg.n_hi ||
        cfg.m_lo > cfg.m_hi || cfg.k_lo > cfg.k_hi || cfg.k_lo < 0) {
        fail(ErrorCode::BindingMismatch, "suite bounds must be positive and ranges nonempty");
    }
}

}  // namespace

unsigned Bindings::mask() const {
    unsigned out = 0;
    const auto bit = [&out](bool bound, unsigned b) {
        if (bound) out |= b;
    };
    bit(a.has_value(), kA);
    bit(b.has_value(), kB);
    bit(c.has_value(), kC);
    bit(r.has_value(), kR);
    bit(s.has_value(), kS);
    bit(t.has_value(), kT);
    bit(n.has_value(), kN);
    bit(m.has_value(), kM);
    bit(k.has_value(), kK);
    bit(h.has_value(), kH);
    bit(x1.has_value(), kX1);
    bit(x2.has_value(), kX2);
    bit(x3.has_value(), kX3);
    bit(c1.has_value(), kC1);
    bit(c2.has_value(), kC2);
    bit(c3.has_value(), kC3);
    return out;
}

std::vector<std::pair<std::string, std::string>> Bindings::rendered() const {
    std::vector<std::pair<std::string, std::string>> out;
    const auto rat = [&out](const char* name, const std::optional<Rational>& x) {
        if (x) out.emplace_back(name, x->to_string());
    };
    const auto idx = [&out](const char* name, const std::optional<long>& x) {
        if (x) out.emplace_back(name, std::to_string(*x));
    };
    rat("a", a);
    rat("b", b);
    rat("c", c);
    rat("r", r);
    rat("s", s);
    rat("t", t);
    idx("n", n);
    idx("m", m);
    idx("k", k);
    rat("h", h);
    rat("x1", x1);
    rat("x2", x2);
    rat("x3", x3);
    rat("c1", c1);
    rat("c2", c2);
    rat("c3", c3);
    return out;
}

RationalParams Bindings::params() const { return make_rational_params(*a, *b, *c, *r, *s, *t); }

std::string signature_string(unsigned signature) {
    std::string out;
    for (const auto& f : kFields) {
        if (!(signature & f.bit)) continue;
        if (!out.empty()) out += ',';
        out += f.name;
    }
    return out;
}

const std::vector<IdentityDescriptor>& identity_registry() {
    static const std::vector<IdentityDescriptor> reg = build_registry();
    return reg;
}

std::vector<IdentitySummary> list_identities() {
    std::vector<IdentitySummary> out;
    for (const auto& d : identity_registry()) {
        out.push_back({d.id, d.citation, signature_string(d.signature), d.expected_fail});
    }
    return out;
}

const IdentityDescriptor& find_identity(std::string_view id) {
    const auto& reg = identity_registry();
    const auto it = std::lower_bound(reg.begin(), reg.end(), id, [](const auto& d, std::string_view key) {
        return d.id < key;
    });
    if (it == reg.end() || it->id != id) fail(ErrorCode::UnknownIdentity, std::string(id));
    return *it;
}

Verdict check(std::string_view id, const Bindings& bindings) {
    const auto& d = find_identity(id);
    if (bindings.mask() != d.signature) {
        fail(ErrorCode::BindingMismatch, d.id + " binds " + signature_string(d.signature) + ", got " +
                                             signature_string(bindings.mask()));
    }
    return evaluate(d, bindings);
}

std::uint64_t identity_seed(std::uint64_t seed, std::string_view id) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char ch : id) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 0x100000001b3ULL;
    }
    return splitmix64(seed ^ splitmix64(hash));
}

long Report::unexpected_failures() const {
    long total = 0;
    for (const auto& r : results) {
        if (!r.expected_fail) total += r.fails;
    }
    return total;
}

Report run_suite(const SuiteConfig& config) {
    validate(config);
    std::vector<const IdentityDescriptor*> chosen;
    if (config.ids.empty()) {
        for (const auto& d : identity_registry()) chosen.push_back(&d);
    } else {
        for (const auto& id : config.ids) chosen.push_back(&find_identity(id));
        std::sort(chosen.begin(), chosen.end(), [](auto* x, auto* y) { return x->id < y->id; });
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    }

    Report report{config, std::vector<IdentityReport>(chosen.size())};
    unsigned workers = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(chosen.size()));
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < chosen.size(); i = next++) {
            report.results[i] = run_identity(*chosen[i], config);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return report;
}

}  // namespace trirec
