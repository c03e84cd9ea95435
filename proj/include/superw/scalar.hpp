#pragma once

/**
 * @file scalar.hpp
 * @brief Exact Gaussian-rational scalars p/q + (r/s)i.
 *
 * Every coefficient in the kernel is a Scalar. Real and imaginary parts are
 * GMP rationals kept in canonical reduced form, so structural equality is
 * value equality and there is exactly one representation of zero.
 */

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace superw {

/// Thrown by every text parser in the library; carries the byte offset of
/// the offending character and a short description of what was expected.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, std::string expected);

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : re_(value) {}  // NOLINT: integers promote implicitly
    Scalar(mpq_class re, mpq_class im = 0);

    /// num/den with den != 0; throws std::domain_error otherwise.
    static Scalar fraction(long num, long den);
    static Scalar imaginary_unit() { return Scalar(0, 1); }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_imaginary() const noexcept { return sgn(re_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    /// |x|^2, always a non-negative rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    /// Multiplicative inverse; nullopt for zero.
    std::optional<Scalar> inverse() const;

    /// Integer power; negative exponents need a nonzero base (std::domain_error).
    Scalar pow(std::int64_t exponent) const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    /// Throws std::domain_error on a zero divisor. Use checked_div when the
    /// divisor is data-dependent.
    friend Scalar operator/(const Scalar& lhs, const Scalar& rhs);
    friend Scalar operator-(const Scalar& x) { return Scalar(-x.re_, -x.im_); }

    friend bool operator==(const Scalar& lhs, const Scalar& rhs) {
        return lhs.re_ == rhs.re_ && lhs.im_ == rhs.im_;
    }
    friend bool operator!=(const Scalar& lhs, const Scalar& rhs) { return !(lhs == rhs); }

    /// Lexicographic (re, im) order. Only meaningful as a container key.
    friend bool structural_less(const Scalar& lhs, const Scalar& rhs) {
        if (lhs.re_ != rhs.re_) return lhs.re_ < rhs.re_;
        return lhs.im_ < rhs.im_;
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Division that reports a zero divisor as nullopt instead of throwing.
std::optional<Scalar> checked_div(const Scalar& lhs, const Scalar& rhs);

/// Canonical text: `p`, `p/q`, `p/q+r/si`, `p/q-r/si` (no spaces; the real part
/// is always present; a denominator of 1 is omitted).
std::string to_string(const Scalar& x);

/// Parses the canonical text form. Also accepts a bare imaginary part such as
/// `2/5i` or `-3i`. The whole input must be consumed.
Scalar parse_scalar(std::string_view text);

/// Scans one scalar starting at `pos` inside a larger string and advances
/// `pos` past it. Does not skip whitespace. Used by the element parser.
Scalar scan_scalar(std::string_view text, std::size_t& pos);

/// Appends `c*symbol` to a sum being built in canonical text: complex
/// coefficients are parenthesised and a negative real coefficient after the
/// first term becomes ` - |c|*symbol`.
void append_term(std::string& out, const Scalar& c, const std::string& symbol);

}  // namespace superw
