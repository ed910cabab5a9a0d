#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trirec/rational.hpp"

namespace trirec {

/// Formal power series in h over Q, kept to a fixed truncation order L.
///
/// Holds exactly L+1 coefficients. Binary operations require equal orders and
/// throw OrderMismatch otherwise; nothing is re-truncated implicitly.
class TruncatedSeries {
public:
    /// Pads with zeros up to L+1 coefficients; more than L+1 is an OrderMismatch.
    TruncatedSeries(std::vector<Rational> coefficients, std::size_t order);

    static TruncatedSeries zero(std::size_t order);
    static TruncatedSeries constant(const Rational& value, std::size_t order);
    static TruncatedSeries monomial(const Rational& coefficient, std::size_t degree, std::size_t order);

    std::size_t order() const noexcept { return coefficients_.size() - 1; }
    const Rational& operator[](std::size_t i) const { return coefficients_.at(i); }
    std::span<const Rational> coefficients() const noexcept { return coefficients_; }

    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    TruncatedSeries& operator-=(const TruncatedSeries& rhs);
    TruncatedSeries& operator*=(const Rational& scalar);
    friend TruncatedSeries operator+(TruncatedSeries lhs, const TruncatedSeries& rhs) { return lhs += rhs; }
    friend TruncatedSeries operator-(TruncatedSeries lhs, const TruncatedSeries& rhs) { return lhs -= rhs; }
    friend TruncatedSeries operator*(TruncatedSeries lhs, const Rational& rhs) { return lhs *= rhs; }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    std::string to_string() const;

private:
    std::vector<Rational> coefficients_;
};

/// Cauchy product truncated at L. Throws OrderMismatch.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Multiplicative inverse. Throws NonInvertibleSeries when the constant term is 0.
TruncatedSeries series_inverse(const TruncatedSeries& a);

}  // namespace trirec
