#pragma once

#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trirec/error.hpp"
#include "trirec/mod_residue.hpp"
#include "trirec/rational.hpp"
#include "trirec/ring.hpp"

namespace trirec {

/// Parameters of w_n(a,b,c; r,s,t): w_0 = a, w_1 = b, w_2 = c and
/// w_n = r w_{n-1} + s w_{n-2} + t w_{n-3}. Only make_params builds a
/// validated record (t invertible).
template <RingElement T>
struct SequenceParams {
    T a, b, c;
    T r, s, t;
};

template <RingElement T>
SequenceParams<T> make_params(T a, T b, T c, T r, T s, T t) {
    // Mixing residues from different rings throws ModulusMismatch here.
    (void)(a + b + c + r + s + t);
    if (t.is_zero()) fail(ErrorCode::NonInvertibleT, "t must be invertible");
    return {std::move(a), std::move(b), std::move(c), std::move(r), std::move(s), std::move(t)};
}

enum class Basis { u, v, z };

std::string_view basis_name(Basis kind);
std::optional<Basis> parse_basis(std::string_view name);

/// u = w(0,1,r), v = w(3,r,r^2+2s), z = w(1,1,1), all with recurrence (r,s,t).
template <RingElement T>
SequenceParams<T> basis_params(Basis kind, const T& r, const T& s, const T& t) {
    const T zero = ring_from_int(r, 0);
    const T one = ring_one(r);
    switch (kind) {
        case Basis::u: return make_params(zero, one, r, r, s, t);
        case Basis::v: return make_params(ring_from_int(r, 3), r, r * r + ring_from_int(r, 2) * s, r, s, t);
        case Basis::z: break;
    }
    return make_params(one, one, one, r, s, t);
}

template <RingElement T>
SequenceParams<T> basis_params_of(Basis kind, const SequenceParams<T>& p) {
    return basis_params(kind, p.r, p.s, p.t);
}

/// w_n by stepping the recurrence from (a,b,c); O(|n|) ring operations.
template <RingElement T>
T term_iter(const SequenceParams<T>& p, long n) {
    if (n >= 0) {
        T w0 = p.a, w1 = p.b, w2 = p.c;
        if (n == 0) return w0;
        if (n == 1) return w1;
        for (long i = 3; i <= n; ++i) {
            T next = p.r * w2 + p.s * w1 + p.t * w0;
            w0 = std::move(w1);
            w1 = std::move(w2);
            w2 = std::move(next);
        }
        return w2;
    }
    // Backward: w_{k-1} = (w_{k+2} - r w_{k+1} - s w_k) / t.
    const T t_inv = p.t.inverse();
    T hi = p.c, mid = p.b, lo = p.a;
    for (long i = -1; i >= n; --i) {
        T prev = (hi - p.r * mid - p.s * lo) * t_inv;
        hi = std::move(mid);
        mid = std::move(lo);
        lo = std::move(prev);
    }
    return lo;
}

template <RingElement T>
T basis_term(Basis kind, const T& r, const T& s, const T& t, long n) {
    return term_iter(basis_params(kind, r, s, t), n);
}

/// Contiguous window of computed terms w_lo..w_hi, extended on demand in either
/// direction. Queries are serialized by an internal mutex, so one cache may be
/// shared between threads; concurrent queries see the same values as
/// sequential ones.
template <RingElement T>
class Sequence {
public:
    explicit Sequence(SequenceParams<T> params)
        : params_(std::move(params)), t_inv_(params_.t.inverse()), terms_{params_.a, params_.b, params_.c} {}

    Sequence(const Sequence& other) : params_(other.params_), t_inv_(other.t_inv_) {
        std::lock_guard lock(other.mutex_);
        terms_ = other.terms_;
        lo_ = other.lo_;
    }
    Sequence& operator=(const Sequence&) = delete;

    const SequenceParams<T>& params() const noexcept { return params_; }

    T term(long n) const {
        std::lock_guard lock(mutex_);
        extend_to(n);
        return terms_[static_cast<std::size_t>(n - lo_)];
    }

    T operator()(long n) const { return term(n); }

    /// Throws EmptyRange when lo > hi.
    std::vector<T> range(long lo, long hi) const {
        if (lo > hi) {
            fail(ErrorCode::EmptyRange, std::to_string(lo) + " > " + std::to_string(hi));
        }
        std::lock_guard lock(mutex_);
        extend_to(lo);
        extend_to(hi);
        const auto first = terms_.begin() + (lo - lo_);
        return {first, first + (hi - lo + 1)};
    }

    std::pair<long, long> window() const {
        std::lock_guard lock(mutex_);
        return {lo_, lo_ + static_cast<long>(terms_.size()) - 1};
    }

private:
    void extend_to(long n) const {
        while (n < lo_) {
            const T& w0 = terms_[0];
            const T& w1 = terms_[1];
            const T& w2 = terms_[2];
            terms_.push_front((w2 - params_.r * w1 - params_.s * w0) * t_inv_);
            --lo_;
        }
        while (n > lo_ + static_cast<long>(terms_.size()) - 1) {
            const std::size_t k = terms_.size();
            terms_.push_back(params_.r * terms_[k - 1] + params_.s * terms_[k - 2] +
                             params_.t * terms_[k - 3]);
        }
    }

    SequenceParams<T> params_;
    T t_inv_;
    mutable std::mutex mutex_;
    mutable std::deque<T> terms_;
    mutable long lo_ = 0;
};

template <RingElement T>
std::vector<T> term_range(const SequenceParams<T>& p, long lo, long hi) {
    return Sequence<T>(p).range(lo, hi);
}

using RationalParams = SequenceParams<Rational>;
using ModParams = SequenceParams<ModResidue>;

/// Reduces rational parameters into Z/pZ.
ModParams to_mod_params(const RationalParams& p, const ModRing& ring);

RationalParams make_rational_params(const Rational& a, const Rational& b, const Rational& c,
                                    const Rational& r, const Rational& s, const Rational& t);

enum class PresetKind {
    tribonacci,
    tribonacci_lucas,
    padovan,
    perrin,
    generalized_tribonacci,
    generalized_padovan,
    u,
    v,
    z,
};

/// A named parameter row. The generalized rows read (a,b,c); the basis rows
/// read (r,s,t); the fixed rows ignore both.
struct Preset {
    PresetKind kind;
    Rational a{0}, b{1}, c{1};
    Rational r{1}, s{1}, t{1};
};

std::string_view preset_name(PresetKind kind);
std::optional<PresetKind> parse_preset_kind(std::string_view name);
RationalParams preset_params(const Preset& preset);
inline RationalParams preset_params(PresetKind kind) { return preset_params(Preset{kind}); }

}  // namespace trirec
