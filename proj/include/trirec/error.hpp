#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trirec {

/// Every failure a caller can act on. The CLI prints the enumerator name.
enum class ErrorCode {
    ZeroToNegativePower,
    DivisionByZero,
    ParseError,
    OrderMismatch,
    NonInvertibleSeries,
    NonInvertibleResidue,
    InvalidModulus,
    ModulusMismatch,
    NonInvertibleT,
    EmptyRange,
    ZeroDenominator,
    NonInvertibleTwo,
    SingularSummand,
    SumLengthExceeded,
    UnknownIdentity,
    BindingMismatch,
    RepeatedRoots,
    NonFinite,
    BignumGuard,
};

constexpr std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroToNegativePower: return "ZeroToNegativePower";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::NonInvertibleSeries: return "NonInvertibleSeries";
        case ErrorCode::NonInvertibleResidue: return "NonInvertibleResidue";
        case ErrorCode::InvalidModulus: return "InvalidModulus";
        case ErrorCode::ModulusMismatch: return "ModulusMismatch";
        case ErrorCode::NonInvertibleT: return "NonInvertibleT";
        case ErrorCode::EmptyRange: return "EmptyRange";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::NonInvertibleTwo: return "NonInvertibleTwo";
        case ErrorCode::SingularSummand: return "SingularSummand";
        case ErrorCode::SumLengthExceeded: return "SumLengthExceeded";
        case ErrorCode::UnknownIdentity: return "UnknownIdentity";
        case ErrorCode::BindingMismatch: return "BindingMismatch";
        case ErrorCode::RepeatedRoots: return "RepeatedRoots";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::BignumGuard: return "BignumGuard";
    }
    return "Unknown";
}

class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw DomainError(code, detail);
}

}  // namespace trirec
