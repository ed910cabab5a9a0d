#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "trirec/error.hpp"

namespace trirec {

using Complex64 = std::complex<double>;

/// Throws NonFinite if either component is NaN or infinite.
inline const Complex64& require_finite(const Complex64& z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail(ErrorCode::NonFinite, std::string(what) + " is not finite");
    }
    return z;
}

}  // namespace trirec
