#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "trirec/rational.hpp"

namespace trirec {

class ModRing;

/// Residue modulo a word-sized prime. Carries its modulus so that values from
/// different rings never mix silently.
class ModResidue {
public:
    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    bool is_zero() const noexcept { return value_ == 0; }
    /// Throws NonInvertibleResidue when the value is 0.
    ModResidue inverse() const;
    std::string to_string() const { return std::to_string(value_); }

    ModResidue& operator+=(const ModResidue& rhs);
    ModResidue& operator-=(const ModResidue& rhs);
    ModResidue& operator*=(const ModResidue& rhs);
    ModResidue& operator/=(const ModResidue& rhs);

    friend ModResidue operator+(ModResidue lhs, const ModResidue& rhs) { return lhs += rhs; }
    friend ModResidue operator-(ModResidue lhs, const ModResidue& rhs) { return lhs -= rhs; }
    friend ModResidue operator*(ModResidue lhs, const ModResidue& rhs) { return lhs *= rhs; }
    friend ModResidue operator/(ModResidue lhs, const ModResidue& rhs) { return lhs /= rhs; }
    ModResidue operator-() const;

    friend bool operator==(const ModResidue&, const ModResidue&) = default;

private:
    friend class ModRing;
    friend ModResidue ring_from_int(const ModResidue& like, long value);
    ModResidue(std::uint64_t value, std::uint64_t modulus) : value_(value), modulus_(modulus) {}
    void check_same_ring(const ModResidue& rhs) const;

    std::uint64_t value_;
    std::uint64_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const ModResidue& x);

/// Z/pZ for a prime p < 2^63. Primality is checked once, here.
class ModRing {
public:
    /// Throws InvalidModulus when p < 2 or p is composite.
    explicit ModRing(std::uint64_t modulus);

    std::uint64_t modulus() const noexcept { return modulus_; }
    ModResidue operator()(long value) const;
    /// p/q maps to p * q^-1; throws NonInvertibleResidue when p divides q.
    ModResidue from_rational(const Rational& x) const;

private:
    std::uint64_t modulus_;
};

bool is_prime_u64(std::uint64_t n);

ModResidue mod_inverse(const ModResidue& x);

ModResidue ring_one(const ModResidue& like);
ModResidue ring_from_int(const ModResidue& like, long value);

}  // namespace trirec
