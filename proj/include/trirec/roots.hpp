#pragma once

#include <array>
#include <string>
#include <vector>

#include "trirec/complex.hpp"
#include "trirec/rational.hpp"
#include "trirec/sequence.hpp"

namespace trirec {

/// Roots of x^3 - r x^2 - s x - t, sorted by descending real part, then
/// descending imaginary part. Nonreal roots come as exact conjugates.
struct CubicRoots {
    std::array<Complex64, 3> roots;
    double discriminant;
    double min_separation;
};

inline constexpr double kRootSeparation = 1e-6;

/// Throws NonInvertibleT when t = 0, RepeatedRoots when two roots lie
/// closer than kRootSeparation or the discriminant is exactly zero.
CubicRoots solve_cubic(const Rational& r, const Rational& s, const Rational& t);

struct VietaResiduals {
    double sum;      // |a + b + c - r|
    double pairs;    // |ab + ac + bc + s|
    double product;  // |abc - t|
    double scale;    // max(1, |r|, |s|, |t|)

    double worst() const;
};

VietaResiduals vieta_residuals(const CubicRoots& roots, const Rational& r, const Rational& s, const Rational& t);

struct BinetCoefficients {
    Complex64 A, B, C;
};

BinetCoefficients binet_coefficients(const RationalParams& p, const CubicRoots& roots);

/// z^n for signed n by repeated squaring.
Complex64 complex_pow(Complex64 z, long n);

Complex64 binet_term(const BinetCoefficients& coef, const CubicRoots& roots, long n);
/// Solves the cubic of p; throws RepeatedRoots.
Complex64 binet_term(const RationalParams& p, long n);

struct Diagnostic {
    std::string name;
    double residual;
    double scale;

    bool ok() const { return residual < 1e-8 * scale; }
};

/// Root-level residuals at index n: power expansion at each root, v_n as a
/// power sum, (abc)^n = t^n, pair powers = t^n v_{-n}, the z coefficients, and
/// the Binet value of w_n.
std::vector<Diagnostic> float_diagnostics(const RationalParams& p, long n);

}  // namespace trirec
