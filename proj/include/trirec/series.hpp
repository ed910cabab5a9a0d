#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trirec/rational.hpp"
#include "trirec/sequence.hpp"
#include "trirec/sums.hpp"
#include "trirec/truncated_series.hpp"

namespace trirec {

/// Coefficient i multiplies h^i. Trailing zeros are trimmed.
using Polynomial = std::vector<Rational>;

std::string polynomial_to_string(const Polynomial& p);

/// numerator / denominator in h, expandable as a power series: the
/// denominator's constant term is nonzero (NonInvertibleSeries otherwise).
class RationalFunction {
public:
    RationalFunction(Polynomial numerator, Polynomial denominator);

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    /// Coefficients of h^0..h^L.
    TruncatedSeries expand(std::size_t order) const;

    friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator-(const RationalFunction& x);

    std::string to_string() const;

private:
    Polynomial num_;
    Polynomial den_;
};

/// sum_{j>=0} w_{n+jm} h^j =
///   (w_n - (v_m w_n - w_{n+m}) h + t^m w_{n-m} h^2) / (1 - v_m h + t^m v_{-m} h^2 - t^m h^3)
RationalFunction gf_ap(const RationalParams& p, long n, long m);

/// sum_{j>=0} v_{n+jm}^2 h^j, from the corrected finite-sum form.
RationalFunction gf_v_squares(const Rational& r, const Rational& s, const Rational& t, long n, long m);

/// Uncorrected generating function: stray index v_{2n-2km} (so it depends on
/// k) and the flipped sign. Does not match the series.
RationalFunction gf_v_squares_printed(const Rational& r, const Rational& s, const Rational& t, long n, long m,
                                      long k);

/// sum_{j>=0} u_{n+jm} v_{n+jm} h^j
RationalFunction gf_uv(const Rational& r, const Rational& s, const Rational& t, long n, long m);

/// True iff the first L+1 expansion coefficients equal expected[0..L].
/// Throws BindingMismatch when expected is shorter than L+1.
bool gf_expand_check(const RationalFunction& rf, std::span<const Rational> expected, std::size_t order);

/// Terms x_{n+jm}, j = 0..L, of the summand kind.
std::vector<Rational> ap_terms(const RationalParams& p, SummandKind kind, long n, long m, std::size_t order);

/// max_j |w_{mj+n}/j! - (A a^{n+mj} + B b^{n+mj} + C c^{n+mj})/j!| over j = 0..L.
/// L <= 20 (BindingMismatch); RepeatedRoots propagates.
double egf_check(const RationalParams& p, long n, long m, std::size_t order);

}  // namespace trirec
