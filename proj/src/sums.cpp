#include "trirec/sums.hpp"

#include <cstdlib>
#include <string>

#include "trirec/error.hpp"

namespace trirec {

namespace {

Rational pow(const Rational& x, long e) { return rat_pow(x, e); }

void require_summable(long k) {
    if (k < 0) fail(ErrorCode::EmptyRange, "k must be non-negative, got " + std::to_string(k));
    const long cap = brute_force_max_k();
    if (k > cap) {
        fail(ErrorCode::SumLengthExceeded, "k = " + std::to_string(k) + " exceeds TRIREC_MAX_K = " + std::to_string(cap));
    }
}

struct Basics {
    Sequence<Rational> u;
    Sequence<Rational> v;

    Basics(const Rational& r, const Rational& s, const Rational& t)
        : u(basis_params(Basis::u, r, s, t)), v(basis_params(Basis::v, r, s, t)) {}
};

template <class Closed, class Brute>
SumResult with_fallback(Closed&& closed, Brute&& brute) {
    if (auto value = closed()) return {std::move(*value), SumMethod::closed_form, false};
    return {brute(), SumMethod::direct_fallback, true};
}

}  // namespace

std::string_view sum_method_name(SumMethod method) {
    return method == SumMethod::closed_form ? "closed-form" : "direct-fallback";
}

std::string_view summand_kind_name(SummandKind kind) {
    switch (kind) {
        case SummandKind::w: return "w";
        case SummandKind::v_squares: return "v2";
        case SummandKind::uv: return "uv";
    }
    return "?";
}

long brute_force_max_k() {
    if (const char* env = std::getenv("TRIREC_MAX_K")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 0) return value;
    }
    return 10000;
}

std::optional<Rational> ap_closed_form(const RationalParams& p, long n, long m, long k, const Rational& h) {
    const Sequence<Rational> w(p);
    const Sequence<Rational> v(basis_params(Basis::v, p.r, p.s, p.t));
    const Rational tm = pow(p.t, m);
    const Rational vm = v(m);
    const Rational den = tm * pow(h, 3) - tm * v(-m) * h * h + vm * h - Rational(1);
    if (den.is_zero()) return std::nullopt;
    const long km = k * m;
    const Rational num = tm * w(n + km) * pow(h, k + 3) -
                         (vm * w(n + m + km) - w(n + 2 * m + km)) * pow(h, k + 2) +
                         w(n + m + km) * pow(h, k + 1) - tm * w(n - m) * h * h +
                         (vm * w(n) - w(n + m)) * h - w(n);
    return num / den;
}

std::optional<Rational> simple_sum_h_closed_form(const RationalParams& p, long k, const Rational& h) {
    const Rational den = p.t * pow(h, 3) + p.s * h * h + p.r * h - Rational(1);
    if (den.is_zero()) return std::nullopt;
    const Sequence<Rational> w(p);
    const Rational num = p.t * w(k) * pow(h, k + 3) - (p.r * w(k + 1) - w(k + 2)) * pow(h, k + 2) +
                         w(k + 1) * pow(h, k + 1) - (p.c - p.r * p.b - p.s * p.a) * h * h +
                         (p.r * p.a - p.b) * h - p.a;
    return num / den;
}

std::optional<Rational> simple_sum_closed_form(const RationalParams& p, long k) {
    const Rational den = p.r + p.s + p.t - Rational(1);
    if (den.is_zero()) return std::nullopt;
    const Sequence<Rational> w(p);
    const Rational num = p.t * w(k) + (p.r - Rational(1)) * (p.a + p.b - w(k + 1)) + w(k + 2) + p.a * p.s - p.c;
    return num / den;
}

std::optional<Rational> v_squares_closed_form(const Rational& r, const Rational& s, const Rational& t, long n,
                                              long m, long k, const Rational& h, VSquaresForm form) {
    const Basics seq(r, s, t);
    const auto& v = seq.v;
    const Rational t2m = pow(t, 2 * m);
    const Rational tm = pow(t, m);
    const Rational v2m = v(2 * m);
    const Rational vm = v(m);
    const Rational pm = vm * vm - v2m;  // 2 t^m v_{-m}
    const Rational den1 = t2m * pow(h, 3) - t2m * v(-2 * m) * h * h + v2m * h - Rational(1);
    const Rational den2 = Rational(2) * t2m * pow(h, 3) - Rational(2) * tm * vm * h * h + pm * h - Rational(2);
    if (den1.is_zero() || den2.is_zero()) return std::nullopt;

    // P(i) = v_i^2 - v_{2i} = 2 t^i v_{-i}
    const auto sq = [&v](long i) {
        const Rational vi = v(i);
        return vi * vi - v(2 * i);
    };
    const long km = k * m;
    const Rational num1 = t2m * v(2 * n + 2 * km) * pow(h, k + 3) -
                          (v2m * v(2 * n + 2 * m + 2 * km) - v(2 * n + 4 * m + 2 * km)) * pow(h, k + 2) +
                          v(2 * n + 2 * m + 2 * km) * pow(h, k + 1) - t2m * v(2 * n - 2 * m) * h * h +
                          (v2m * v(2 * n) - v(2 * n + 2 * m)) * h - v(2 * n);

    const bool printed = form == VSquaresForm::printed;
    const long low_index = printed ? 2 * n - 2 * km : 2 * n - 2 * m;
    const Rational vnm = v(n - m);
    const Rational low = vnm * vnm - v(low_index);
    const Rational pn_pm = sq(n) * pm * h;
    const Rational num2 = Rational(2) * t2m * sq(n + km) * pow(h, k + 3) -
                          pm * sq(n + m + km) * pow(h, k + 2) + Rational(2) * sq(n + 2 * m + km) * pow(h, k + 2) +
                          Rational(2) * sq(n + m + km) * pow(h, k + 1) - Rational(2) * t2m * low * h * h +
                          (printed ? -pn_pm : pn_pm) - Rational(2) * sq(n + m) * h - Rational(2) * sq(n);
    return num1 / den1 + num2 / den2;
}

std::optional<Rational> uv_closed_form(const Rational& r, const Rational& s, const Rational& t, long n, long m,
                                       long k, const Rational& h) {
    const Basics seq(r, s, t);
    const auto& u = seq.u;
    const auto& v = seq.v;
    const Rational t2m = pow(t, 2 * m);
    const Rational tm = pow(t, m);
    const Rational v2m = v(2 * m);
    const Rational tm_vneg = tm * v(-m);
    const Rational den1 = t2m * pow(h, 3) - t2m * v(-2 * m) * h * h + v2m * h - Rational(1);
    const Rational den3 = t2m * pow(h, 3) - tm * v(m) * h * h + tm_vneg * h - Rational(1);
    if (den1.is_zero() || den3.is_zero()) return std::nullopt;

    // Q(i) = u_{2i} - u_i v_i = t^i u_{-i}
    const auto q = [&](long i) { return u(2 * i) - u(i) * v(i); };
    const long km = k * m;
    const Rational num1 = t2m * u(2 * n + 2 * km) * pow(h, k + 3) -
                          (v2m * u(2 * n + 2 * m + 2 * km) - u(2 * n + 4 * m + 2 * km)) * pow(h, k + 2) +
                          u(2 * n + 2 * m + 2 * km) * pow(h, k + 1) - t2m * u(2 * n - 2 * m) * h * h +
                          (v2m * u(2 * n) - u(2 * n + 2 * m)) * h - u(2 * n);
    const Rational num3 = -t2m * q(n + km) * pow(h, k + 3) + tm_vneg * q(n + m + km) * pow(h, k + 2) -
                          q(n + 2 * m + km) * pow(h, k + 2) - q(n + m + km) * pow(h, k + 1) +
                          t2m * q(n - m) * h * h - (tm_vneg * q(n) - u(2 * n + 2 * m) + u(n + m) * v(n + m)) * h +
                          q(n);
    return num1 / den1 + num3 / den3;
}

Rational sum_brute(const RationalParams& p, long n, long m, long k, const Rational& h) {
    require_summable(k);
    const Sequence<Rational> w(p);
    Rational total;
    Rational hp(1);
    for (long j = 0; j <= k; ++j) {
        total += w(n + j * m) * hp;
        hp *= h;
    }
    return total;
}

Rational sum_brute_v_squares(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                             const Rational& h) {
    require_summable(k);
    const Sequence<Rational> v(basis_params(Basis::v, r, s, t));
    Rational total;
    Rational hp(1);
    for (long j = 0; j <= k; ++j) {
        const Rational x = v(m * j + n);
        total += x * x * hp;
        hp *= h;
    }
    return total;
}

Rational sum_brute_uv(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                      const Rational& h) {
    require_summable(k);
    const Basics seq(r, s, t);
    Rational total;
    Rational hp(1);
    for (long j = 0; j <= k; ++j) {
        total += seq.u(n + m * j) * seq.v(n + m * j) * hp;
        hp *= h;
    }
    return total;
}

SumResult sum_ap_closed(const RationalParams& p, long n, long m, long k, const Rational& h) {
    require_summable(k);
    return with_fallback([&] { return ap_closed_form(p, n, m, k, h); },
                         [&] { return sum_brute(p, n, m, k, h); });
}

SumResult sum_v_squares(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                        const Rational& h) {
    require_summable(k);
    return with_fallback([&] { return v_squares_closed_form(r, s, t, n, m, k, h); },
                         [&] { return sum_brute_v_squares(r, s, t, n, m, k, h); });
}

SumResult sum_uv(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                 const Rational& h) {
    require_summable(k);
    return with_fallback([&] { return uv_closed_form(r, s, t, n, m, k, h); },
                         [&] { return sum_brute_uv(r, s, t, n, m, k, h); });
}

std::optional<long> reciprocal_singular_index(int variant, const Rational& r, const Rational& s,
                                              const Rational& t, long n, long k) {
    if (variant != 1 && variant != 2) fail(ErrorCode::BindingMismatch, "variant must be 1 or 2");
    if (k < 0) fail(ErrorCode::EmptyRange, "k must be non-negative");
    const Sequence<Rational> u(basis_params(Basis::u, r, s, t));
    const long shift = variant == 1 ? 1 : -1;
    for (long j = 0; j <= k; ++j) {
        if (u(n - k + j).is_zero() || u(n - k + j + shift).is_zero()) return j;
    }
    return std::nullopt;
}

ReciprocalSides reciprocal_sum(int variant, const Rational& r, const Rational& s, const Rational& t, long n,
                               long k) {
    if (const auto j = reciprocal_singular_index(variant, r, s, t, n, k)) {
        fail(ErrorCode::SingularSummand, "zero u-value in the summand denominator at j = " + std::to_string(*j));
    }
    const Sequence<Rational> u(basis_params(Basis::u, r, s, t));
    const long shift = variant == 1 ? 1 : -1;
    Rational sum;
    Rational tj(1);
    for (long j = 0; j <= k; ++j) {
        sum += tj * u(k - n - j - 1) / (u(n - k + j) * u(n - k + j + shift));
        tj *= t;
    }
    const Rational prefactor = variant == 1 ? u(n + 1) * u(n - k) : u(n) * u(n - k - 1);
    const Rational rhs = pow(t, k - n) * (u(n) * u(n - k) - u(n + 1) * u(n - k - 1));
    return {prefactor * sum, rhs};
}

}  // namespace trirec
