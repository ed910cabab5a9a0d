// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "support.hpp"
#include "trirec/cli.hpp"
#include "trirec/error.hpp"
#include "trirec/fast_eval.hpp"
#include "trirec/identities.hpp"
#include "trirec/instrument.hpp"
#include "trirec/roots.hpp"
#include "trirec/series.hpp"
#include "trirec/sums.hpp"

using namespace trirec;
using trirec::testing::random_nonzero;
using trirec::testing::random_params;
using trirec::testing::random_rational;
using json = nlohmann::json;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

constexpr std::uint64_t kPrime = 1'000'000'007ULL;

const std::vector<PresetKind> kPresets{PresetKind::tribonacci, PresetKind::tribonacci_lucas,
                                       PresetKind::padovan,    PresetKind::perrin,
                                       PresetKind::generalized_tribonacci, PresetKind::generalized_padovan,
                                       PresetKind::u,          PresetKind::v,
                                       PresetKind::z};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome identity_suite() {
    std::ostringstream out, err;
    const auto start = std::chrono::steady_clock::now();
    const int code =
        run_cli({"check", "--identity", "all", "--trials", "200", "--seed", "42", "--json"}, out, err);
    const double elapsed = seconds_since(start);
    const json doc = json::parse(out.str());

    long unexpected = 0;
    std::string bad, xfail;
    for (const auto& r : doc["results"]) {
        const std::string id = r["id"];
        if (r["expected_fail"].get<bool>()) {
            xfail += " " + id + "(" + std::to_string(r["fails"].get<long>()) + " fails)";
            continue;
        }
        if (r["fails"].get<long>() != 0) {
            unexpected += r["fails"].get<long>();
            bad += " " + id;
        }
    }
    std::ostringstream d;
    d << doc["results"].size() << " identities, " << unexpected << " unexpected failures" << bad
      << "; expected-fail entries:" << xfail << "; exit " << code << "; " << elapsed << " s";
    return {code == 0 && unexpected == 0 && elapsed < 120.0, d.str()};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(2024);
    long mismatches = 0, compared = 0;
    for (int i = 0; i < 50; ++i) {
        const auto p = random_params(rng);
        const Sequence<Rational> seq(p);
        for (long n = -50; n <= 50; ++n) {
            const Rational it = term_iter(p, n);
            if (it != term_fast(p, n) || it != term_matrix(p, n) || it != seq(n)) ++mismatches;
            ++compared;
        }
    }
    const ModRing ring(kPrime);
    const auto mp = to_mod_params(preset_params(PresetKind::tribonacci), ring);
    std::string mod_values;
    for (long n : {1'000L, 1'000'000L, 1'000'000'000L}) {
        const auto f = term_fast(mp, n);
        const auto m = term_matrix(mp, n);
        if (f != m) ++mismatches;
        mod_values += " T_" + std::to_string(n) + "=" + f.to_string();
    }
    std::ostringstream d;
    d << compared << " exact comparisons, " << mismatches << " mismatches; mod p:" << mod_values;
    return {mismatches == 0, d.str()};
}

Outcome fixtures() {
    std::vector<std::string> bad;
    const auto check_row = [&](PresetKind kind, const std::vector<long>& want) {
        const auto p = preset_params(kind);
        for (std::size_t n = 0; n < want.size(); ++n) {
            const long i = static_cast<long>(n);
            if (term_iter(p, i) != Rational(want[n]) || term_fast(p, i) != Rational(want[n])) {
                bad.push_back(std::string(preset_name(kind)) + "[" + std::to_string(n) + "]");
            }
        }
    };
    check_row(PresetKind::tribonacci, {0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149});
    check_row(PresetKind::perrin, {3, 0, 2, 3, 2, 5, 5, 7, 10, 12});
    check_row(PresetKind::padovan, {1, 1, 1, 2, 2, 3, 4, 5, 7, 9});
    if (term_fast(preset_params(PresetKind::tribonacci), 30) != Rational(29249425)) bad.push_back("T_30");

    std::mt19937_64 rng(77);
    for (int i = 0; i < 20; ++i) {
        const Rational r = random_rational(rng), s = random_rational(rng), t = random_nonzero(rng);
        const Sequence<Rational> u(basis_params(Basis::u, r, s, t));
        const Sequence<Rational> v(basis_params(Basis::v, r, s, t));
        const Sequence<Rational> z(basis_params(Basis::z, r, s, t));
        if (u(4) != r * r * r + Rational(2) * r * s + t) bad.push_back("u_4");
        if (v(4) != r * r * r * r + Rational(4) * s * r * r + Rational(4) * r * t + Rational(2) * s * s) {
            bad.push_back("v_4");
        }
        if (v(-2) != (s * s - Rational(2) * r * t) / (t * t)) bad.push_back("v_-2");
        if (z(-1) != (Rational(1) - r - s) / t) bad.push_back("z_-1");
    }
    std::string d = bad.empty() ? "all fixtures and 20x4 symbolic anchors exact" : "mismatches:";
    for (const auto& b : bad) d += " " + b;
    return {bad.empty(), d};
}

Outcome sums() {
    // Same sampling ranges as the identity suite.
    const SuiteConfig cfg;
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> nd(cfg.n_lo, cfg.n_hi), md(cfg.m_lo, cfg.m_hi), kd(cfg.k_lo, cfg.k_hi);
    const auto rat = [&] { return random_rational(rng, cfg.numerator_bound, cfg.denominator_bound); };
    long checked = 0, mismatches = 0, fallbacks = 0;
    for (int i = 0; i < 200; ++i) {
        const auto p = make_rational_params(rat(), rat(), rat(), rat(), rat(),
                                            random_nonzero(rng, cfg.numerator_bound, cfg.denominator_bound));
        const long n = nd(rng), m = md(rng), k = kd(rng);
        const Rational h = rat();
        const SumResult a = sum_ap_closed(p, n, m, k, h);
        const SumResult b = sum_v_squares(p.r, p.s, p.t, n, m, k, h);
        const SumResult c = sum_uv(p.r, p.s, p.t, n, m, k, h);
        fallbacks += a.singular + b.singular + c.singular;
        mismatches += a.value != sum_brute(p, n, m, k, h);
        mismatches += b.value != sum_brute_v_squares(p.r, p.s, p.t, n, m, k, h);
        mismatches += c.value != sum_brute_uv(p.r, p.s, p.t, n, m, k, h);
        checked += 3;
    }

    const auto sp = make_rational_params(Rational(0), Rational(1), Rational(1), Rational(1), Rational(-1), Rational(1));
    const SumResult singular = sum_ap_closed(sp, 0, 1, 7, Rational(1));
    const bool singular_ok = singular.method == SumMethod::direct_fallback &&
                             singular.value == sum_brute(sp, 0, 1, 7, Rational(1));

    const auto rec = reciprocal_sum(1, Rational(1), Rational(1), Rational(1), 5, 2);
    const bool rec_ok = rec.lhs == Rational(1) && rec.rhs == Rational(1);

    std::ostringstream d;
    d << checked << " closed/brute pairs, " << mismatches << " mismatches, " << fallbacks
      << " fallbacks; singular (1,-1,1) path " << sum_method_name(singular.method) << (singular_ok ? " ok" : " WRONG")
      << "; reciprocal lhs=" << rec.lhs.to_string() << " rhs=" << rec.rhs.to_string();
    return {mismatches == 0 && singular_ok && rec_ok, d.str()};
}

Outcome generating_functions() {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long> nd(-8, 8), md(-8, 8);
    long bad = 0;
    for (int i = 0; i < 100; ++i) {
        const auto p = random_params(rng);
        const long n = nd(rng), m = md(rng);
        const auto want = ap_terms(p, SummandKind::w, n, m, 24);
        if (!gf_expand_check(gf_ap(p, n, m), want, 24)) ++bad;
    }
    const RationalFunction trib = gf_ap(preset_params(PresetKind::tribonacci), 0, 1);
    const bool ogf_ok = trib.numerator() == Polynomial{Rational(0), Rational(1)} &&
                        trib.denominator() == Polynomial{Rational(1), Rational(-1), Rational(-1), Rational(-1)};
    std::ostringstream d;
    d << "100 random sets to L=24, " << bad << " mismatches; Tribonacci OGF " << trib.to_string();
    return {bad == 0 && ogf_ok, d.str()};
}

Outcome floating() {
    const CubicRoots tr = solve_cubic(Rational(1), Rational(1), Rational(1));
    const double root_err = std::abs(tr.roots[0].real() - 1.8392867552);
    const bool root_ok = tr.roots[0].imag() == 0.0 && root_err < 1e-8;

    double worst_binet = 0.0, worst_egf = 0.0;
    for (PresetKind kind : kPresets) {
        const auto p = preset_params(kind);
        const CubicRoots cr = solve_cubic(p.r, p.s, p.t);
        const BinetCoefficients k = binet_coefficients(p, cr);
        for (long n = -30; n <= 30; ++n) {
            const double exact = term_iter(p, n).to_double();
            const double err = std::abs(binet_term(k, cr, n) - exact) / std::max(1.0, std::abs(exact));
            worst_binet = std::max(worst_binet, err);
        }
        worst_egf = std::max({worst_egf, egf_check(p, 0, 1, 15), egf_check(p, -3, 2, 15)});
    }

    std::mt19937_64 rng(31337);
    int sets = 0, repeated = 0;
    double worst_vieta = 0.0;
    while (sets < 100) {
        const Rational r = random_rational(rng), s = random_rational(rng), t = random_nonzero(rng);
        try {
            const auto v = vieta_residuals(solve_cubic(r, s, t), r, s, t);
            worst_vieta = std::max(worst_vieta, v.worst() / v.scale);
            ++sets;
        } catch (const DomainError& e) {
            if (e.code() != ErrorCode::RepeatedRoots) throw;
            ++repeated;
        }
    }
    std::ostringstream d;
    d.precision(3);
    d << "real root error " << root_err << "; worst Binet relative error " << worst_binet << "; worst EGF deviation "
      << worst_egf << "; worst Vieta residual/scale " << worst_vieta << " (" << repeated << " repeated-root draws skipped)";
    return {root_ok && worst_binet < 1e-6 && worst_egf < 1e-9 && worst_vieta < 1e-9, d.str()};
}

Outcome performance() {
    const ModRing ring(kPrime);
    const auto mp = to_mod_params(preset_params(PresetKind::tribonacci), ring);
    const auto count = [&](auto method, long n) {
        const instrument::MultiplicationCounter c;
        (void)method(mp, n);
        return static_cast<long>(c.elapsed());
    };
    const auto fast = [](const ModParams& p, long n) { return term_fast(p, n); };
    const auto iter = [](const ModParams& p, long n) { return term_iter(p, n); };

    long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
    bool iter_linear = true;
    for (int e = 10; e < 20; ++e) {
        const long n = 1L << e;
        const long step = count(fast, 2 * n) - count(fast, n);
        lo = std::min(lo, step);
        hi = std::max(hi, step);
        const long i1 = count(iter, n), i2 = count(iter, 2 * n);
        // linear: doubling n roughly doubles the count
        iter_linear = iter_linear && i1 >= n && std::abs(i2 - 2 * i1) <= 16;
    }

    std::ostringstream out, err;
    const int code = run_cli({"bench", "--preset", "tribonacci", "--indices", "1000000000", "--methods", "fast",
                              "--mod", std::to_string(kPrime), "--json"},
                             out, err);
    double seconds = -1.0;
    if (code == 0) seconds = json::parse(out.str())["rows"][0]["seconds"].get<double>();

    std::ostringstream d;
    d << "fast count step per doubling in [" << lo << ", " << hi << "] for n=2^10..2^20; iter "
      << (iter_linear ? "linear" : "NOT linear") << " (" << count(iter, 1L << 20) << " at 2^20); bench fast n=1e9 mod p "
      << seconds * 1e3 << " ms";
    return {hi - lo <= 4 && iter_linear && code == 0 && seconds >= 0.0 && seconds < 0.010, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"identity suite, 200 trials, seed 42", identity_suite},
        {"oracle equivalence iter/fast/matrix", oracle_equivalence},
        {"sequence fixtures and symbolic anchors", fixtures},
        {"closed-form sums vs brute force", sums},
        {"generating functions", generating_functions},
        {"floating diagnostics", floating},
        {"multiplication-count growth and bench timing", performance},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return all ? 0 : 1;
}
