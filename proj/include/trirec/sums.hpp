#pragma once

#include <optional>
#include <string_view>

#include "trirec/rational.hpp"
#include "trirec/sequence.hpp"

namespace trirec {

enum class SumMethod { closed_form, direct_fallback };

std::string_view sum_method_name(SumMethod method);

/// Value of a partial sum plus the path that produced it. `singular` is set
/// exactly when a closed-form denominator evaluated to zero.
struct SumResult {
    Rational value;
    SumMethod method;
    bool singular;
};

enum class SummandKind { w, v_squares, uv };

std::string_view summand_kind_name(SummandKind kind);

/// Which reading of the v-squares closed form to evaluate. `printed` keeps the
/// uncorrected index v_{2n-2km} and the flipped sign of the
/// (v_n^2 - v_{2n})(v_m^2 - v_{2m}) h term; both are wrong, and the variant
/// exists only so the discrepancy stays executable.
enum class VSquaresForm { corrected, printed };

// Closed forms. Each returns nullopt when one of its denominators vanishes.

/// sum_{j=0..k} w_{n+jm} h^j over the denominator t^m h^3 - t^m v_{-m} h^2 + v_m h - 1.
std::optional<Rational> ap_closed_form(const RationalParams& p, long n, long m, long k, const Rational& h);

/// sum_{j=0..k} w_j h^j over t h^3 + s h^2 + r h - 1.
std::optional<Rational> simple_sum_h_closed_form(const RationalParams& p, long k, const Rational& h);

/// sum_{j=0..k} w_j over r + s + t - 1.
std::optional<Rational> simple_sum_closed_form(const RationalParams& p, long k);

std::optional<Rational> v_squares_closed_form(const Rational& r, const Rational& s, const Rational& t, long n,
                                              long m, long k, const Rational& h,
                                              VSquaresForm form = VSquaresForm::corrected);

std::optional<Rational> uv_closed_form(const Rational& r, const Rational& s, const Rational& t, long n, long m,
                                       long k, const Rational& h);

// Closed form with direct fallback on a singular denominator.

SumResult sum_ap_closed(const RationalParams& p, long n, long m, long k, const Rational& h);
SumResult sum_v_squares(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                        const Rational& h);
SumResult sum_uv(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                 const Rational& h);

// Literal summation oracles. k is capped by brute_force_max_k()
// (SumLengthExceeded) and must be non-negative (EmptyRange).

Rational sum_brute(const RationalParams& p, long n, long m, long k, const Rational& h);
Rational sum_brute_v_squares(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                             const Rational& h);
Rational sum_brute_uv(const Rational& r, const Rational& s, const Rational& t, long n, long m, long k,
                      const Rational& h);

/// TRIREC_MAX_K from the environment, default 10000.
long brute_force_max_k();

struct ReciprocalSides {
    Rational lhs;
    Rational rhs;
};

/// Both sides of the telescoping reciprocal identities:
///   variant 1: u_{n+1} u_{n-k} sum t^j u_{k-n-j-1} / (u_{n-k+j} u_{n-k+j+1})
///   variant 2: u_n u_{n-k-1} sum t^j u_{k-n-j-1} / (u_{n-k+j} u_{n-k+j-1})
/// each equal to t^{k-n} (u_n u_{n-k} - u_{n+1} u_{n-k-1}).
/// Throws SingularSummand naming the first j with a zero denominator.
ReciprocalSides reciprocal_sum(int variant, const Rational& r, const Rational& s, const Rational& t, long n,
                               long k);

/// The j whose summand denominator vanishes, if any.
std::optional<long> reciprocal_singular_index(int variant, const Rational& r, const Rational& s,
                                              const Rational& t, long n, long k);

}  // namespace trirec
