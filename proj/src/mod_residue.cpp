#include "trirec/mod_residue.hpp"

#include <ostream>

#include "trirec/error.hpp"
#include "trirec/instrument.hpp"

namespace trirec {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e != 0) {
        if (e & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        e >>= 1U;
    }
    return result;
}

std::uint64_t reduce_signed(long value, std::uint64_t m) {
    const auto magnitude = static_cast<std::uint64_t>(value < 0 ? -(value + 1) : value) +
                           (value < 0 ? 1U : 0U);
    const std::uint64_t r = magnitude % m;
    return value < 0 && r != 0 ? m - r : r;
}

std::uint64_t reduce_mpz(const mpz_class& value, std::uint64_t m) {
    mpz_class r;
    const mpz_class mod(std::to_string(m), 10);
    mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), mod.get_mpz_t());
    return std::stoull(r.get_str(10));
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // These bases make Miller-Rabin deterministic below 2^64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

ModRing::ModRing(std::uint64_t modulus) : modulus_(modulus) {
    if (modulus >= (1ULL << 63U) || !is_prime_u64(modulus)) {
        fail(ErrorCode::InvalidModulus, std::to_string(modulus) + " is not a prime below 2^63");
    }
}

ModResidue ModRing::operator()(long value) const { return {reduce_signed(value, modulus_), modulus_}; }

ModResidue ModRing::from_rational(const Rational& x) const {
    const ModResidue num(reduce_mpz(x.numerator(), modulus_), modulus_);
    const ModResidue den(reduce_mpz(x.denominator(), modulus_), modulus_);
    if (den.is_zero()) {
        fail(ErrorCode::NonInvertibleResidue,
             x.to_string() + " has a denominator divisible by " + std::to_string(modulus_));
    }
    return num * mod_inverse(den);
}

void ModResidue::check_same_ring(const ModResidue& rhs) const {
    if (modulus_ != rhs.modulus_) {
        fail(ErrorCode::ModulusMismatch,
             std::to_string(modulus_) + " vs " + std::to_string(rhs.modulus_));
    }
}

ModResidue ModResidue::inverse() const {
    if (value_ == 0) fail(ErrorCode::NonInvertibleResidue, "0 mod " + std::to_string(modulus_));
    // Extended Euclid on signed 128-bit to stay clear of overflow.
    __int128 old_r = value_;
    __int128 r = modulus_;
    __int128 old_s = 1;
    __int128 s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        const __int128 tmp_r = old_r - q * r;
        old_r = r;
        r = tmp_r;
        const __int128 tmp_s = old_s - q * s;
        old_s = s;
        s = tmp_s;
    }
    if (old_r != 1) {
        fail(ErrorCode::NonInvertibleResidue, to_string() + " mod " + std::to_string(modulus_));
    }
    __int128 inv = old_s % static_cast<__int128>(modulus_);
    if (inv < 0) inv += modulus_;
    return {static_cast<std::uint64_t>(inv), modulus_};
}

ModResidue& ModResidue::operator+=(const ModResidue& rhs) {
    check_same_ring(rhs);
    const u128 sum = static_cast<u128>(value_) + rhs.value_;
    value_ = static_cast<std::uint64_t>(sum % modulus_);
    return *this;
}

ModResidue& ModResidue::operator-=(const ModResidue& rhs) {
    check_same_ring(rhs);
    value_ = value_ >= rhs.value_ ? value_ - rhs.value_ : value_ + (modulus_ - rhs.value_);
    return *this;
}

ModResidue& ModResidue::operator*=(const ModResidue& rhs) {
    check_same_ring(rhs);
    instrument::count_multiplication();
    value_ = mul_mod(value_, rhs.value_, modulus_);
    return *this;
}

ModResidue& ModResidue::operator/=(const ModResidue& rhs) {
    check_same_ring(rhs);
    return *this *= rhs.inverse();
}

ModResidue ModResidue::operator-() const { return {value_ == 0 ? 0 : modulus_ - value_, modulus_}; }

std::ostream& operator<<(std::ostream& os, const ModResidue& x) { return os << x.value(); }

ModResidue mod_inverse(const ModResidue& x) { return x.inverse(); }

ModResidue ring_one(const ModResidue& like) { return ring_from_int(like, 1); }

ModResidue ring_from_int(const ModResidue& like, long value) {
    return {reduce_signed(value, like.modulus_), like.modulus_};
}

}  // namespace trirec
