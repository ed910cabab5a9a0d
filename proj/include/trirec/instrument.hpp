#pragma once

#include <cstdint>

namespace trirec::instrument {

// Per-thread count of ring multiplications (and divisions). Rational and
// ModResidue bump it; benchmarks read it around a single evaluation.
inline thread_local std::uint64_t multiplication_count = 0;

inline void count_multiplication() noexcept { ++multiplication_count; }

class MultiplicationCounter {
public:
    MultiplicationCounter() noexcept : start_(multiplication_count) {}
    std::uint64_t elapsed() const noexcept { return multiplication_count - start_; }

private:
    std::uint64_t start_;
};

}  // namespace trirec::instrument
