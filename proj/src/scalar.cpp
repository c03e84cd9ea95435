#include "superw/scalar.hpp"

#include <cctype>
#include <utility>

namespace superw {

ParseError::ParseError(std::size_t position, std::string expected)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": expected " +
                         expected),
      position_(position),
      expected_(std::move(expected)) {}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar::fraction: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

std::optional<Scalar> Scalar::inverse() const {
    if (is_zero()) return std::nullopt;
    const mpq_class n = norm();
    return Scalar(mpq_class(re_ / n), mpq_class(-im_ / n));
}

Scalar Scalar::pow(std::int64_t exponent) const {
    Scalar base = *this;
    if (exponent < 0) {
        auto inv = inverse();
        if (!inv) throw std::domain_error("Scalar::pow: negative power of zero");
        base = *inv;
        exponent = -exponent;
    }
    Scalar result(1);
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    if (rhs.is_real()) {
        re_ *= rhs.re_;
        im_ *= rhs.re_;
        return *this;
    }
    mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
    mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar operator/(const Scalar& lhs, const Scalar& rhs) {
    auto q = checked_div(lhs, rhs);
    if (!q) throw std::domain_error("Scalar: division by zero");
    return *std::move(q);
}

std::optional<Scalar> checked_div(const Scalar& lhs, const Scalar& rhs) {
    if (rhs.is_zero()) return std::nullopt;
    if (rhs.is_real()) return Scalar(mpq_class(lhs.re() / rhs.re()), mpq_class(lhs.im() / rhs.re()));
    return lhs * *rhs.inverse();
}

namespace {

std::string rational_text(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Reads `digits ['/' digits]` at pos (no sign). Returns nullopt, leaving pos
// untouched, when no digit is present.
std::optional<mpq_class> scan_unsigned_rational(std::string_view text, std::size_t& pos) {
    std::size_t p = pos;
    if (p >= text.size() || !is_digit(text[p])) return std::nullopt;
    std::size_t start = p;
    while (p < text.size() && is_digit(text[p])) ++p;
    mpz_class num(std::string(text.substr(start, p - start)));
    mpz_class den(1);
    if (p < text.size() && text[p] == '/') {
        ++p;
        if (p >= text.size() || !is_digit(text[p])) throw ParseError(p, "denominator digits");
        std::size_t dstart = p;
        while (p < text.size() && is_digit(text[p])) ++p;
        den = mpz_class(std::string(text.substr(dstart, p - dstart)));
        if (den == 0) throw ParseError(dstart, "nonzero denominator");
    }
    pos = p;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

std::string to_string(const Scalar& x) {
    std::string out = rational_text(x.re());
    if (x.is_real()) return out;
    if (sgn(x.im()) > 0) {
        out += '+';
        out += rational_text(x.im());
    } else {
        out += '-';
        out += rational_text(mpq_class(-x.im()));
    }
    out += 'i';
    return out;
}

Scalar scan_scalar(std::string_view text, std::size_t& pos) {
    std::size_t p = pos;
    bool negative = false;
    if (p < text.size() && text[p] == '-') {
        negative = true;
        ++p;
    }
    auto first = scan_unsigned_rational(text, p);
    if (!first) throw ParseError(p, "digit");
    mpq_class lead = negative ? mpq_class(-*first) : *first;

    if (p < text.size() && text[p] == 'i') {
        pos = p + 1;
        return Scalar(0, lead);
    }

    // Optional imaginary tail `[+-] digits ['/' digits] 'i'`, taken only when
    // the trailing `i` is present so that `1+L[2]`-style input is not eaten.
    if (p < text.size() && (text[p] == '+' || text[p] == '-')) {
        std::size_t q = p + 1;
        if (q < text.size() && is_digit(text[q])) {
            auto imag = scan_unsigned_rational(text, q);
            if (imag && q < text.size() && text[q] == 'i') {
                pos = q + 1;
                return Scalar(lead, text[p] == '-' ? mpq_class(-*imag) : *imag);
            }
        }
    }
    pos = p;
    return Scalar(lead);
}

Scalar parse_scalar(std::string_view text) {
    std::size_t pos = 0;
    Scalar value = scan_scalar(text, pos);
    if (pos != text.size()) throw ParseError(pos, "end of scalar");
    return value;
}

void append_term(std::string& out, const Scalar& c, const std::string& symbol) {
    auto text = [](const Scalar& x) { return x.is_real() ? to_string(x) : "(" + to_string(x) + ")"; };
    if (out.empty())
        out += text(c);
    else if (c.is_real() && sgn(c.re()) < 0)
        out += " - " + text(-c);
    else
        out += " + " + text(c);
    out += "*" + symbol;
}

}  // namespace superw
