#include "trirec/rational.hpp"

#include <cctype>
#include <ostream>

#include "trirec/error.hpp"
#include "trirec/instrument.hpp"

namespace trirec {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (sgn(denominator) == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num_text = body.substr(0, slash);
    const std::string_view den_text =
        slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num_text) || !all_digits(den_text)) {
        fail(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
    }
    mpz_class num(std::string(num_text), 10);
    const mpz_class den(std::string(den_text), 10);
    if (negative) num = -num;
    return Rational(num, den);
}

Rational Rational::inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    instrument::count_multiplication();
    Rational out;
    mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
}

std::string Rational::to_string() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    instrument::count_multiplication();
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
    instrument::count_multiplication();
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const {
    Rational out;
    mpq_neg(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

Rational rat_pow(const Rational& x, long exponent) {
    if (exponent < 0 && x.is_zero()) {
        fail(ErrorCode::ZeroToNegativePower, "0^" + std::to_string(exponent));
    }
    const Rational base = exponent < 0 ? x.inverse() : x;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-(exponent + 1)) + 1
                                   : static_cast<unsigned long>(exponent);
    // Numerator and denominator powers separately; both stay coprime.
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.gmp().get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.gmp().get_den_mpz_t(), e);
    instrument::count_multiplication();
    Rational out;
    out = Rational(mpq_class(num, den));
    return out;
}

}  // namespace trirec
