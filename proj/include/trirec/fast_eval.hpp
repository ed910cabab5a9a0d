#pragma once

#include <array>
#include <bit>
#include <cstdlib>
#include <string_view>
#include <optional>

#include "trirec/error.hpp"
#include "trirec/ring.hpp"
#include "trirec/sequence.hpp"

namespace trirec {

/// Three consecutive u-values (u_{n-1}, u_n, u_{n+1}) centred at n.
template <RingElement T>
struct UTriple {
    long center;
    T prev, cur, next;
};

namespace detail {

/// From the triple at n, the triple at 2n + bit. The addition formula with
/// w = u gives u_{2n}, u_{2n+1}, u_{2n+2} without division; u_{2n-1} needs one
/// multiplication by t^-1.
template <RingElement T>
UTriple<T> double_triple(const UTriple<T>& x, int bit, const T& r, const T& s, const T& t,
                         const T& t_inv) {
    const T& um1 = x.prev;
    const T& u0 = x.cur;
    const T& u1 = x.next;
    const T u2 = r * u1 + s * u0 + t * um1;
    const T g0 = u1 - r * u0;   // u_{n+1} - r u_n
    const T g1 = u2 - r * u1;   // u_{n+2} - r u_{n+1}
    const T t_um1 = t * um1;
    // u_{a+b} = u_a u_{b+1} + (u_{a+1} - r u_a) u_b + t u_{a-1} u_{b-1}
    T d0 = u0 * u1 + g0 * u0 + t_um1 * um1;          // a = b = n
    T d1 = u0 * u2 + g0 * u1 + t_um1 * u0;           // a = n, b = n+1
    T d2 = u1 * u2 + g1 * u1 + t * (u0 * u0);        // a = b = n+1
    if (bit != 0) return {2 * x.center + 1, std::move(d0), std::move(d1), std::move(d2)};
    T dm1 = (d2 - r * d1 - s * d0) * t_inv;
    return {2 * x.center, std::move(dm1), std::move(d0), std::move(d1)};
}

}  // namespace detail

/// Triple centred at n >= 0 by binary doubling: O(log n) multiplications.
template <RingElement T>
UTriple<T> u_triple(const T& r, const T& s, const T& t, long n) {
    const T zero = ring_from_int(r, 0);
    UTriple<T> x{0, zero, zero, ring_one(r)};
    if (n <= 0) return x;
    const T t_inv = t.inverse();
    const auto un = static_cast<unsigned long>(n);
    for (int bit = std::bit_width(un) - 1; bit >= 0; --bit) {
        x = detail::double_triple(x, static_cast<int>((un >> bit) & 1UL), r, s, t, t_inv);
    }
    return x;
}

/// Addition formula:
/// w_{n+m} = u_n w_{m+1} + (u_{n+1} - r u_n) w_m + t u_{n-1} w_{m-1}.
template <RingElement T>
T add_formula(const SequenceParams<T>& p, long n, long m) {
    const Sequence<T> u(basis_params(Basis::u, p.r, p.s, p.t));
    const Sequence<T> w(p);
    const T un = u(n);
    return un * w(m + 1) + (u(n + 1) - p.r * un) * w(m) + p.t * u(n - 1) * w(m - 1);
}

/// w_n in O(log |n|) ring multiplications: double the u-triple, then
/// w_n = b u_n + (c - b r) u_{n-1} + a t u_{n-2}. Negative n uses
/// u_{-k} = (u_{k-1}^2 - u_k u_{k-2}) / t^{k-1}; no backward stepping.
template <RingElement T>
T term_fast(const SequenceParams<T>& p, long n) {
    const T& r = p.r;
    const T& s = p.s;
    const T& t = p.t;
    if (n == 0) return p.a;
    if (n == 1) return p.b;
    if (n == 2) return p.c;
    if (n > 0) {
        const UTriple<T> x = u_triple(r, s, t, n);
        // t u_{n-2} = u_{n+1} - r u_n - s u_{n-1}
        return p.b * x.cur + (p.c - p.b * r) * x.prev + p.a * (x.next - r * x.cur - s * x.prev);
    }
    const long k = -n;
    const T t_inv = t.inverse();
    const UTriple<T> x = u_triple(r, s, t, k);
    const T& um1 = x.prev;
    const T& u0 = x.cur;
    const T& u1 = x.next;
    const T um2 = (u1 - r * u0 - s * um1) * t_inv;
    const T u2 = r * u1 + s * u0 + t * um1;
    T scale = ring_pow(t_inv, k - 1);
    const T neg0 = (um1 * um1 - u0 * um2) * scale;  // u_{-k}
    scale = scale * t_inv;
    const T neg1 = (u0 * u0 - u1 * um1) * scale;    // u_{-k-1}
    scale = scale * t_inv;
    const T neg2 = (u1 * u1 - u2 * u0) * scale;     // u_{-k-2}
    return p.b * neg0 + (p.c - p.b * r) * neg1 + p.a * t * neg2;
}

/// Companion-matrix oracle, deliberately sharing nothing with term_fast:
/// M^n (c, b, a)^T = (w_{n+2}, w_{n+1}, w_n)^T.
template <RingElement T>
T term_matrix(const SequenceParams<T>& p, long n) {
    using Matrix = std::array<std::array<T, 3>, 3>;
    const T zero = ring_from_int(p.t, 0);
    const T one = ring_one(p.t);
    auto multiply = [&zero](const Matrix& x, const Matrix& y) {
        Matrix z{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                T acc = zero;
                for (std::size_t l = 0; l < 3; ++l) acc = acc + x[i][l] * y[l][j];
                z[i][j] = acc;
            }
        }
        return z;
    };
    const auto companion = [&]() -> Matrix {
        if (n >= 0) return {{{p.r, p.s, p.t}, {one, zero, zero}, {zero, one, zero}}};
        // Inverse companion: (w_{k+2}, w_{k+1}, w_k) -> (w_{k+1}, w_k, w_{k-1}).
        const T ti = one / p.t;
        return {{{zero, one, zero}, {zero, zero, one}, {ti, -(p.r * ti), -(p.s * ti)}}};
    };
    if (n == 0) return p.a;
    Matrix step = companion();
    std::optional<Matrix> acc;  // empty stands for the identity
    unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
    while (e != 0) {
        if (e & 1UL) acc = acc ? multiply(*acc, step) : step;
        e >>= 1U;
        if (e != 0) step = multiply(step, step);
    }
    return (*acc)[2][0] * p.c + (*acc)[2][1] * p.b + (*acc)[2][2] * p.a;
}

enum class NegativeKind { u, v, w_simple, w_ratio };

std::string_view negative_kind_name(NegativeKind kind);
std::optional<NegativeKind> parse_negative_kind(std::string_view name);

/// w_{-n} (or u_{-n}, v_{-n} for the basis kinds, which read only r,s,t) from
/// positive-index values through closed forms.
///   u:        (u_{n-1}^2 - u_n u_{n-2}) / t^{n-1}
///   v:        (v_n^2 - v_{2n}) / (2 t^n)
///   w-simple: (2 w_{2n} - 2 v_n w_n + a (v_n^2 - v_{2n})) / (2 t^n)
///   w-ratio:  the u-expansion over (w_n t^n), times w_n; requires w_n != 0
template <RingElement T>
T negative_via_identity(NegativeKind kind, const SequenceParams<T>& p, long n) {
    if (n < 1) fail(ErrorCode::EmptyRange, "negative_via_identity expects n >= 1");
    const T& r = p.r;
    const T& s = p.s;
    const T& t = p.t;
    const T two = ring_from_int(t, 2);
    const auto u = [&](long i) { return term_fast(basis_params(Basis::u, r, s, t), i); };
    const auto v = [&](long i) { return term_fast(basis_params(Basis::v, r, s, t), i); };
    const auto w = [&](long i) { return term_fast(p, i); };
    switch (kind) {
        case NegativeKind::u: {
            const T um1 = u(n - 1);
            return (um1 * um1 - u(n) * u(n - 2)) * ring_pow(t, -(n - 1));
        }
        case NegativeKind::v: {
            require_invertible_two(t, "v_{-n} closed form divides by 2");
            const T vn = v(n);
            return (vn * vn - v(2 * n)) * (two * ring_pow(t, n)).inverse();
        }
        case NegativeKind::w_simple: {
            require_invertible_two(t, "w_{-n} simple closed form divides by 2");
            const T vn = v(n);
            const T num = two * w(2 * n) - two * vn * w(n) + p.a * (vn * vn - v(2 * n));
            return num * (two * ring_pow(t, n)).inverse();
        }
        case NegativeKind::w_ratio: break;
    }
    const T wn = w(n);
    if (wn.is_zero()) fail(ErrorCode::ZeroDenominator, "w_n = 0 in the w_{-n} ratio form");
    const T um2 = u(n - 2), um1 = u(n - 1), u0 = u(n), u1 = u(n + 1), u2 = u(n + 2);
    const T num = p.b * t * (um1 * um1 - u0 * um2) + (p.c - p.b * r) * (u0 * u0 - u1 * um1) +
                  p.a * (u1 * u1 - u2 * u0);
    const T den = (p.b * u0 + (p.c - p.b * r) * um1 + p.a * t * um2) * ring_pow(t, n);
    if (den.is_zero()) fail(ErrorCode::ZeroDenominator, "u-expansion of w_n vanished");
    return num * den.inverse() * wn;
}

/// v_{2n}, v_{3n} or v_{4n} from u and v values at n-1, n, n+1.
template <RingElement T>
T v_multi_argument(const T& r, const T& s, const T& t, long n, int multiple) {
    const Sequence<T> u(basis_params(Basis::u, r, s, t));
    const Sequence<T> v(basis_params(Basis::v, r, s, t));
    const T um1 = u(n - 1), u0 = u(n), u1 = u(n + 1);
    const T vm1 = v(n - 1), v0 = v(n), v1 = v(n + 1);
    const T g = u1 - r * u0;
    const auto c = [&](long k) { return ring_from_int(t, k); };
    switch (multiple) {
        case 2: return u0 * v1 + g * v0 + t * um1 * vm1;
        case 3: {
            require_invertible_two(t, "v_{3n} formula divides by 2");
            const T twice = c(6) * ring_pow(t, n) - v0 * v0 * v0 + c(3) * u0 * v0 * v1 +
                            c(3) * g * v0 * v0 + c(3) * t * um1 * vm1 * v0;
            return twice * c(2).inverse();
        }
        case 4: {
            require_invertible_two(t, "v_{4n} formula divides by 2");
            const T v0sq = v0 * v0;
            const T twice = c(2) * g * v0sq * v0 +
                            (c(2) * t * um1 * vm1 + g * g + c(2) * u0 * v1) * v0sq +
                            c(2) * (g * u0 * v1 + c(4) * ring_pow(t, n) + t * um1 * vm1 * g) * v0 +
                            t * t * um1 * um1 * vm1 * vm1 + c(2) * t * u0 * v1 * um1 * vm1 +
                            u0 * u0 * v1 * v1 - v0sq * v0sq;
            return twice * c(2).inverse();
        }
        default: break;
    }
    fail(ErrorCode::BindingMismatch, "multiple must be 2, 3 or 4");
}

}  // namespace trirec
