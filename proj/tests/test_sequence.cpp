#include <doctest.h>

#include <random>
#include <thread>
#include <vector>

#include "support.hpp"
#include "trirec/sequence.hpp"

using namespace trirec;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("make_params") {
    const auto trib = make_rational_params(0, 1, 1, 1, 1, 1);
    CHECK(trib.c == Rational(1));
    const auto perrin = make_rational_params(3, 0, 2, 0, 1, 1);
    CHECK(perrin.a == Rational(3));
    try {
        make_rational_params(1, 1, 1, 1, 1, 0);
        FAIL("t = 0 accepted");
    } catch (const DomainError& e) {
        CHECK(e.code() == ErrorCode::NonInvertibleT);
    }
    const ModRing f7(7);
    CHECK_THROWS_AS(make_params(f7(1), f7(1), f7(1), f7(1), f7(1), f7(7)), DomainError);
}

TEST_CASE("term_iter examples") {
    const auto trib = preset_params(PresetKind::tribonacci);
    CHECK(term_iter(trib, 10) == Rational(149));
    CHECK(term_iter(trib, 30) == Rational(29249425));

    const Rational r(1), s(1), t(1);
    CHECK(basis_term(Basis::u, r, s, t, 4) == Rational(4));
    CHECK(basis_term(Basis::v, r, s, t, -2) == Rational(-1));
}

TEST_CASE("term_range fixtures") {
    CHECK(term_range(preset_params(PresetKind::perrin), 0, 9) == ints({3, 0, 2, 3, 2, 5, 5, 7, 10, 12}));
    CHECK(term_range(preset_params(PresetKind::padovan), 0, 9) == ints({1, 1, 1, 2, 2, 3, 4, 5, 7, 9}));
    CHECK(term_range(preset_params(PresetKind::tribonacci), -3, 3) == ints({-1, 1, 0, 0, 1, 1, 2}));
    CHECK(term_range(preset_params(PresetKind::tribonacci), 0, 10) ==
          ints({0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149}));
    CHECK_THROWS_AS(term_range(preset_params(PresetKind::perrin), 3, 2), DomainError);
}

TEST_CASE("presets map to the table rows") {
    const auto k = preset_params(PresetKind::tribonacci_lucas);
    CHECK(term_range(k, 0, 2) == ints({3, 1, 3}));
    // Named presets coincide with their basis descriptions.
    const Rational one(1), zero(0);
    CHECK(term_range(preset_params(PresetKind::tribonacci), -5, 12) ==
          term_range(basis_params(Basis::u, one, one, one), -5, 12));
    CHECK(term_range(preset_params(PresetKind::tribonacci_lucas), -5, 12) ==
          term_range(basis_params(Basis::v, one, one, one), -5, 12));
    CHECK(term_range(preset_params(PresetKind::padovan), -5, 12) ==
          term_range(basis_params(Basis::z, zero, one, one), -5, 12));
    CHECK(term_range(preset_params(PresetKind::perrin), -5, 12) ==
          term_range(basis_params(Basis::v, zero, one, one), -5, 12));

    Preset g{PresetKind::generalized_padovan};
    g.a = 2;
    g.b = Rational(1, 2);
    g.c = -1;
    const auto gp = preset_params(g);
    CHECK(gp.r == Rational(0));
    CHECK(gp.a == Rational(2));
    CHECK(parse_preset_kind("tribonacci-lucas") == PresetKind::tribonacci_lucas);
    CHECK(!parse_preset_kind("fibonacci").has_value());
}

TEST_CASE("basis_term examples") {
    CHECK(basis_term(Basis::v, Rational(1), Rational(1), Rational(1), 3) == Rational(7));
    CHECK(basis_term(Basis::z, Rational(0), Rational(1), Rational(1), 4) == Rational(2));
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10; ++i) {
        const Rational r = testing::random_rational(rng), s = testing::random_rational(rng);
        const Rational t = testing::random_nonzero(rng);
        CHECK(basis_term(Basis::u, r, s, t, 0) == Rational(0));
    }
}

TEST_CASE("u/v/z table entries hold as polynomial identities") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 20; ++i) {
        const Rational r = testing::random_rational(rng), s = testing::random_rational(rng);
        const Rational t = testing::random_nonzero(rng);
        const Sequence<Rational> u(basis_params(Basis::u, r, s, t));
        const Sequence<Rational> v(basis_params(Basis::v, r, s, t));
        const Sequence<Rational> z(basis_params(Basis::z, r, s, t));
        CHECK(u(-2) == t.inverse());
        CHECK(u(-1) == Rational(0));
        CHECK(u(3) == r * r + s);
        CHECK(u(4) == r * r * r + Rational(2) * r * s + t);
        CHECK(v(-2) == (s * s - Rational(2) * r * t) / (t * t));
        CHECK(v(-1) == -s / t);
        CHECK(v(3) == r * r * r + Rational(3) * r * s + Rational(3) * t);
        CHECK(v(4) == r * r * r * r + Rational(4) * s * r * r + Rational(4) * r * t + Rational(2) * s * s);
        CHECK(z(-2) == ((t - s) * (Rational(1) - r) + s * s) / (t * t));
        CHECK(z(-1) == (Rational(1) - r - s) / t);
        CHECK(z(3) == t + r + s);
        CHECK(z(4) == (t + s) * (Rational(1) + r) + r * r);
    }
}

TEST_CASE("recurrence closure and agreement with a reference stepper") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto p = testing::random_params(rng);
        const Sequence<Rational> w(p);
        for (long n = -20; n <= 20; ++n) {
            CHECK(w(n) == p.r * w(n - 1) + p.s * w(n - 2) + p.t * w(n - 3));
        }
        const long n = static_cast<long>(rng() % 41) - 20;
        CHECK(term_iter(p, n) == testing::reference_term(p, n));
        CHECK(w(n) == term_iter(p, n));
    }
}

TEST_CASE("backward terms replay forward to the initial values") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 50; ++i) {
        const auto p = testing::random_params(rng);
        const long n = -static_cast<long>(rng() % 20) - 1;
        const auto back = make_rational_params(term_iter(p, n), term_iter(p, n + 1), term_iter(p, n + 2),
                                               p.r, p.s, p.t);
        CHECK(term_iter(back, -n) == p.a);
        CHECK(term_iter(back, -n + 1) == p.b);
        CHECK(term_iter(back, -n + 2) == p.c);
    }
}

TEST_CASE("cache window stays contiguous") {
    const Sequence<Rational> w(preset_params(PresetKind::tribonacci));
    CHECK(w.window() == std::pair<long, long>{0, 2});
    (void)w(7);
    CHECK(w.window() == std::pair<long, long>{0, 7});
    (void)w(-4);
    CHECK(w.window() == std::pair<long, long>{-4, 7});
    CHECK(w.range(-4, 7).size() == 12);
}

TEST_CASE("concurrent queries match sequential ones") {
    std::mt19937_64 rng(25);
    const auto p = testing::random_params(rng);
    const Sequence<Rational> shared(p);
    std::vector<std::vector<Rational>> seen(4);
    std::vector<std::thread> workers;
    for (int k = 0; k < 4; ++k) {
        workers.emplace_back([&, k] {
            for (long n = -30; n <= 30; ++n) seen[k].push_back(shared((k % 2 == 0) ? n : -n));
        });
    }
    for (auto& th : workers) th.join();
    for (int k = 0; k < 4; ++k) {
        for (long n = -30; n <= 30; ++n) {
            const long idx = (k % 2 == 0) ? n : -n;
            CHECK(seen[k][static_cast<std::size_t>(n + 30)] == term_iter(p, idx));
        }
    }
}

TEST_CASE("modular sequences") {
    const ModRing f7(7);
    const auto trib = to_mod_params(preset_params(PresetKind::tribonacci), f7);
    CHECK(term_iter(trib, 10).value() == 149 % 7);
    const ModRing big(1'000'000'007);
    const auto q = to_mod_params(make_rational_params(Rational(1, 2), 3, -1, Rational(2, 3), 1, Rational(-1, 5)), big);
    const auto exact = make_rational_params(Rational(1, 2), 3, -1, Rational(2, 3), 1, Rational(-1, 5));
    for (long n = -12; n <= 12; ++n) {
        CHECK(term_iter(q, n) == big.from_rational(term_iter(exact, n)));
    }
}
