#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trirec/rational.hpp"
#include "trirec/sequence.hpp"

namespace trirec {

/// Free variables an identity may bind.
enum Var : unsigned {
    kA = 1U << 0,
    kB = 1U << 1,
    kC = 1U << 2,
    kR = 1U << 3,
    kS = 1U << 4,
    kT = 1U << 5,
    kN = 1U << 6,
    kM = 1U << 7,
    kK = 1U << 8,
    kH = 1U << 9,
    kX1 = 1U << 10,
    kX2 = 1U << 11,
    kX3 = 1U << 12,
    kC1 = 1U << 13,
    kC2 = 1U << 14,
    kC3 = 1U << 15,
};

inline constexpr unsigned kRst = kR | kS | kT;
inline constexpr unsigned kParams = kA | kB | kC | kRst;
inline constexpr unsigned kXs = kX1 | kX2 | kX3;
inline constexpr unsigned kCs = kC1 | kC2 | kC3;

struct Bindings {
    std::optional<Rational> a, b, c, r, s, t;
    std::optional<long> n, m, k;
    std::optional<Rational> h;
    std::optional<Rational> x1, x2, x3;
    std::optional<Rational> c1, c2, c3;

    /// Bit set of the fields that hold a value.
    unsigned mask() const;
    /// (name, value) pairs in a fixed order, only for bound fields.
    std::vector<std::pair<std::string, std::string>> rendered() const;
    /// Requires a..t bound and t != 0.
    RationalParams params() const;
};

std::string signature_string(unsigned signature);

struct Sides {
    Rational lhs;
    Rational rhs;
};

struct IdentityDescriptor {
    std::string id;
    std::string citation;
    unsigned signature;
    /// Reason the bindings are outside the identity's domain, or nullopt.
    std::function<std::optional<std::string>(const Bindings&)> precondition;
    std::function<Sides(const Bindings&)> evaluate;
    /// Uncorrected form kept on purpose; it does not hold.
    bool expected_fail = false;
};

struct Verdict {
    std::string id;
    Bindings bindings;
    Rational lhs, rhs;
    bool equal = false;
    bool skipped = false;
    std::string skip_reason;
    /// Set when evaluation threw after the precondition passed.
    std::string error;
};

/// The whole catalog, sorted by id.
const std::vector<IdentityDescriptor>& identity_registry();

struct IdentitySummary {
    std::string id;
    std::string citation;
    std::string signature;
    bool expected_fail;
};

std::vector<IdentitySummary> list_identities();

/// Throws UnknownIdentity.
const IdentityDescriptor& find_identity(std::string_view id);

/// Throws UnknownIdentity, or BindingMismatch when the bound fields differ
/// from the signature.
Verdict check(std::string_view id, const Bindings& bindings);

struct SuiteConfig {
    std::uint64_t seed = 42;
    long trials = 50;
    long numerator_bound = 5;
    long denominator_bound = 4;
    long n_lo = -8, n_hi = 8;
    long m_lo = -8, m_hi = 8;
    long k_lo = 0, k_hi = 6;
    /// Empty means every registered identity.
    std::vector<std::string> ids;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

inline constexpr int kMaxResamples = 100;

struct IdentityReport {
    std::string id;
    bool expected_fail = false;
    long trials = 0;
    long passes = 0;
    long fails = 0;
    long skips = 0;
    std::vector<Verdict> failures;
};

struct Report {
    SuiteConfig config;
    std::vector<IdentityReport> results;

    /// Failures in identities not registered as expected-fail.
    long unexpected_failures() const;
};

/// Deterministic in config.seed regardless of thread count. Throws
/// BindingMismatch on invalid bounds or ranges and UnknownIdentity on a bad id.
Report run_suite(const SuiteConfig& config);

/// Per-identity seed: config seed mixed with a hash of the id.
std::uint64_t identity_seed(std::uint64_t seed, std::string_view id);

}  // namespace trirec
