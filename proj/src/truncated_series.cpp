#include "trirec/truncated_series.hpp"

#include <sstream>
#include <utility>

#include "trirec/error.hpp"

namespace trirec {

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) {
        fail(ErrorCode::OrderMismatch,
             "orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
    }
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<Rational> coefficients, std::size_t order)
    : coefficients_(std::move(coefficients)) {
    if (coefficients_.size() > order + 1) {
        fail(ErrorCode::OrderMismatch, std::to_string(coefficients_.size()) +
                                           " coefficients exceed order " + std::to_string(order));
    }
    coefficients_.resize(order + 1);
}

TruncatedSeries TruncatedSeries::zero(std::size_t order) { return {{}, order}; }

TruncatedSeries TruncatedSeries::constant(const Rational& value, std::size_t order) {
    return {{value}, order};
}

TruncatedSeries TruncatedSeries::monomial(const Rational& coefficient, std::size_t degree,
                                          std::size_t order) {
    std::vector<Rational> c(order + 1);
    if (degree <= order) c[degree] = coefficient;
    return {std::move(c), order};
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    require_same_order(*this, rhs);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += rhs.coefficients_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
    require_same_order(*this, rhs);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= rhs.coefficients_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& scalar) {
    for (auto& c : coefficients_) c *= scalar;
    return *this;
}

std::string TruncatedSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (coefficients_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << coefficients_[i];
        if (i > 0) os << "*h^" << i;
    }
    if (first) os << "0";
    os << " + O(h^" << coefficients_.size() << ")";
    return os.str();
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_order(a, b);
    const std::size_t n = a.order() + 1;
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return {std::move(c), a.order()};
}

TruncatedSeries series_inverse(const TruncatedSeries& a) {
    if (a[0].is_zero()) fail(ErrorCode::NonInvertibleSeries, "constant term is zero");
    const std::size_t n = a.order() + 1;
    const Rational inv0 = a[0].inverse();
    std::vector<Rational> b(n);
    b[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Rational acc;
        for (std::size_t i = 1; i <= k; ++i) {
            if (!a[i].is_zero()) acc += a[i] * b[k - i];
        }
        b[k] = -(acc * inv0);
    }
    return {std::move(b), a.order()};
}

}  // namespace trirec
