#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "trirec/rational.hpp"
#include "trirec/sequence.hpp"

namespace trirec::testing {

/// Random p/q with |p| <= num_bound, 1 <= q <= den_bound.
inline Rational random_rational(std::mt19937_64& rng, long num_bound = 5, long den_bound = 4) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return Rational(num(rng), den(rng));
}

inline Rational random_nonzero(std::mt19937_64& rng, long num_bound = 5, long den_bound = 4) {
    for (;;) {
        Rational x = random_rational(rng, num_bound, den_bound);
        if (!x.is_zero()) return x;
    }
}

inline RationalParams random_params(std::mt19937_64& rng) {
    return make_rational_params(random_rational(rng), random_rational(rng), random_rational(rng),
                                random_rational(rng), random_rational(rng), random_nonzero(rng));
}

/// Reference sequence by the plain recurrence over a map-free window,
/// written independently of Sequence/term_iter.
inline Rational reference_term(const RationalParams& p, long n) {
    std::vector<Rational> fwd{p.a, p.b, p.c};
    if (n >= 0) {
        while (static_cast<long>(fwd.size()) <= n) {
            const std::size_t k = fwd.size();
            fwd.push_back(p.r * fwd[k - 1] + p.s * fwd[k - 2] + p.t * fwd[k - 3]);
        }
        return fwd[static_cast<std::size_t>(n)];
    }
    Rational w1 = p.b, w2 = p.c;
    Rational w0 = p.a;
    for (long i = 1; i <= -n; ++i) {
        Rational prev = (w2 - p.r * w1 - p.s * w0) / p.t;
        w2 = w1;
        w1 = w0;
        w0 = prev;
    }
    return w0;
}

}  // namespace trirec::testing
