#include "bft/rational.hpp"

#include <cctype>
#include <ostream>

#include "bft/error.hpp"

namespace bft {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::string_view text, std::string_view why) {
    throw Error(ErrorCode::ParseError,
                "invalid rational '" + std::string(text) + "': " + std::string(why));
}

Rational parse_decimal(std::string_view original, std::string_view s, bool negative) {
    std::string_view mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        std::string_view exp_text = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6) bad(original, "bad exponent");
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
    }

    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        int_part = mantissa.substr(0, dot);
        frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad(original, "no digits");
    if (!int_part.empty() && !all_digits(int_part)) bad(original, "unexpected character");
    if (!frac_part.empty() && !all_digits(frac_part)) bad(original, "unexpected character");

    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits, 10);
    exponent -= static_cast<long>(frac_part.size());

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    mpq_class value = exponent < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
    value.canonicalize();
    if (negative) value = -value;
    return Rational(value);
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) bad(text, "empty");
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const std::string_view num_text = trim(s.substr(0, slash));
        const std::string_view den_text = trim(s.substr(slash + 1));
        if (!all_digits(num_text) || !all_digits(den_text)) bad(text, "expected integer/integer");
        mpz_class num(std::string(num_text), 10);
        mpz_class den(std::string(den_text), 10);
        if (den == 0) bad(text, "zero denominator");
        mpq_class value(num, den);
        value.canonicalize();
        if (negative) value = -value;
        return Rational(value);
    }
    return parse_decimal(text, s, negative);
}

std::string Rational::str() const { return value_.get_str(10); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
    value_ /= rhs.value_;
    return *this;
}

void Rational::subtract_product(const Rational& a, const Rational& b) {
    thread_local mpq_class scratch;
    mpq_mul(scratch.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
    mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), scratch.get_mpq_t());
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& base, unsigned exponent) {
    Rational result(1);
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

mpz_class floor(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
    return q;
}

}  // namespace bft

std::size_t std::hash<bft::Rational>::operator()(const bft::Rational& x) const noexcept {
    const std::size_t h1 = mpz_get_ui(x.raw().get_num_mpz_t());
    const std::size_t h2 = mpz_get_ui(x.raw().get_den_mpz_t());
    return h1 * 1000003u ^ h2 ^ static_cast<std::size_t>(x.sign() + 1);
}
