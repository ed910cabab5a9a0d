#pragma once

#include <concepts>

#include "trirec/error.hpp"
#include "trirec/mod_residue.hpp"
#include "trirec/rational.hpp"

namespace trirec {

/// A coefficient ring usable by the sequence and fast-evaluation code.
/// Constants are produced relative to an existing element ("like") so that a
/// residue inherits its modulus.
template <class T>
concept RingElement = std::copyable<T> && requires(const T& a, const T& b, long k) {
    { a + b } -> std::same_as<T>;
    { a - b } -> std::same_as<T>;
    { a * b } -> std::same_as<T>;
    { -a } -> std::same_as<T>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::same_as<T>;
    { ring_one(a) } -> std::same_as<T>;
    { ring_from_int(a, k) } -> std::same_as<T>;
};

/// Square-and-multiply power with signed exponent.
template <RingElement T>
T ring_pow(const T& x, long exponent) {
    if (exponent < 0 && x.is_zero()) {
        fail(ErrorCode::ZeroToNegativePower, "zero to a negative power");
    }
    T base = exponent < 0 ? x.inverse() : x;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-(exponent + 1)) + 1
                                   : static_cast<unsigned long>(exponent);
    T result = ring_one(x);
    while (e != 0) {
        if (e & 1UL) result = result * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

template <>
inline Rational ring_pow<Rational>(const Rational& x, long exponent) {
    return rat_pow(x, exponent);
}

/// Throws NonInvertibleTwo when 2 = 0 in the ring of `like`.
template <RingElement T>
void require_invertible_two(const T& like, const char* context) {
    if (ring_from_int(like, 2).is_zero()) {
        fail(ErrorCode::NonInvertibleTwo, context);
    }
}

}  // namespace trirec
