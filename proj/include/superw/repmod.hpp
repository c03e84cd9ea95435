#pragma once

/**
 * @file repmod.hpp
 * @brief Weight modules of intermediate-series type and the super module
 *        axiom checker.
 *
 * The module has even basis u_k and odd basis v_k (k in Z). L acts through a
 * Virasoro intermediate-series family on each parity; I, G, H act through six
 * sampled coefficient functions:
 *
 *   I_i u_j = f(i,j) u_{i+j}    I_i v_j = ft(i,j) v_{i+j}
 *   G_i u_j = g(i,j) v_{i+j}    G_i v_j = gt(i,j) u_{i+j}
 *   H_i u_j = h(i,j) v_{i+j}    H_i v_j = ht(i,j) u_{i+j}
 */

#include "superw/algebra.hpp"
#include "superw/check.hpp"
#include "superw/scalar.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace superw {

enum class FamilyKind { Aab, Aalpha, Bbeta };

/// "Aab", "Aalpha", "Bbeta".
std::string to_string(FamilyKind kind);
/// Inverse of to_string; throws std::invalid_argument.
FamilyKind parse_family_kind(std::string_view name);

/**
 * Virasoro intermediate-series module on a basis u_k:
 *
 *   Aab:    L_i u_j = (a - j + i b) u_{i+j}
 *   Aalpha: L_i u_j = -(i+j) u_{i+j} (j != 0),  L_i u_0 = -i(1 + (i+1)alpha) u_i
 *   Bbeta:  L_i u_j = -j u_{i+j} (i+j != 0),    L_i u_{-i} = i(1 + (i+1)beta) u_0
 */
class VirasoroFamily {
public:
    static VirasoroFamily ab(Scalar a, Scalar b);
    static VirasoroFamily alpha(Scalar alpha);
    static VirasoroFamily beta(Scalar beta);

    FamilyKind kind() const noexcept { return kind_; }
    /// a, alpha or beta depending on the kind.
    const Scalar& first() const noexcept { return first_; }
    /// b for Aab, zero otherwise.
    const Scalar& second() const noexcept { return second_; }

    /// The coefficient c with L_i u_j = c u_{i+j}.
    Scalar coefficient(std::int64_t i, std::int64_t j) const;

private:
    VirasoroFamily(FamilyKind kind, Scalar first, Scalar second)
        : kind_(kind), first_(std::move(first)), second_(std::move(second)) {}

    FamilyKind kind_;
    Scalar first_;
    Scalar second_;
};

enum class CoeffFn { f, ft, g, gt, h, ht };

inline constexpr std::array<CoeffFn, 6> kCoeffFns{CoeffFn::f, CoeffFn::ft, CoeffFn::g,
                                                  CoeffFn::gt, CoeffFn::h, CoeffFn::ht};

std::string to_string(CoeffFn fn);
std::optional<CoeffFn> parse_coeff_fn(std::string_view name);

/// A coefficient lookup fell outside the table's declared window.
class WindowExhausted : public std::out_of_range {
public:
    WindowExhausted(CoeffFn fn, std::int64_t i, std::int64_t j, std::int64_t radius);

    CoeffFn function() const noexcept { return fn_; }
    std::int64_t i() const noexcept { return i_; }
    std::int64_t j() const noexcept { return j_; }

private:
    CoeffFn fn_;
    std::int64_t i_;
    std::int64_t j_;
};

/// Samples of the six coefficient functions on [-N, N]^2. Unset samples are 0.
class CoefficientTable {
public:
    explicit CoefficientTable(std::int64_t radius = 0);

    /// Fills one function from a closed form over the whole window.
    static CoefficientTable tabulate(std::int64_t radius, CoeffFn fn,
                                     const std::function<Scalar(std::int64_t, std::int64_t)>& value);

    std::int64_t radius() const noexcept { return radius_; }
    bool contains(std::int64_t i, std::int64_t j) const noexcept;

    /// Throws WindowExhausted outside the window.
    Scalar get(CoeffFn fn, std::int64_t i, std::int64_t j) const;
    void set(CoeffFn fn, std::int64_t i, std::int64_t j, const Scalar& value);
    void fill(CoeffFn fn, const std::function<Scalar(std::int64_t, std::int64_t)>& value);

    bool is_zero() const;

private:
    std::int64_t radius_;
    std::array<std::map<std::pair<std::int64_t, std::int64_t>, Scalar>, 6> samples_;
};

/**
 * Line format, one sample per line: `<fn> <i> <j> <scalar>` with fn one of
 * f, ft, g, gt, h, ht. Blank lines and lines starting with '#' are skipped.
 * Samples outside [-radius, radius]^2 are rejected. Errors are ParseError
 * with the byte offset into `text`.
 */
CoefficientTable parse_coefficient_table(std::string_view text, std::int64_t radius);

/// Finite combination of u_k (even) and v_k (odd); no stored zeros.
class ModuleVector {
public:
    using Terms = std::map<std::int64_t, Scalar>;

    static ModuleVector u(std::int64_t k, const Scalar& c = Scalar(1));
    static ModuleVector v(std::int64_t k, const Scalar& c = Scalar(1));

    const Terms& even() const noexcept { return even_; }
    const Terms& odd() const noexcept { return odd_; }
    bool is_zero() const noexcept { return even_.empty() && odd_.empty(); }

    void add_even(std::int64_t k, const Scalar& c);
    void add_odd(std::int64_t k, const Scalar& c);

    ModuleVector& operator+=(const ModuleVector& rhs);
    ModuleVector& operator-=(const ModuleVector& rhs);
    friend ModuleVector operator+(ModuleVector lhs, const ModuleVector& rhs) { return lhs += rhs; }
    friend ModuleVector operator-(ModuleVector lhs, const ModuleVector& rhs) { return lhs -= rhs; }
    friend ModuleVector operator*(const Scalar& s, const ModuleVector& w);

    friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

private:
    Terms even_;
    Terms odd_;
};

/// `1*u[3] + (1/2+1i)*v[-1]`; "0" for the zero vector. Even terms first.
std::string to_string(const ModuleVector& w);

/**
 * Even family on u, optional odd family on v, and the coefficient table.
 * Without an odd family the odd subspace is zero, so a vector with odd terms
 * or a nonzero odd image is an error.
 */
struct SuperModuleSpec {
    VirasoroFamily even_family;
    std::optional<VirasoroFamily> odd_family;
    CoefficientTable coeffs;

    /// A_{a,b,0,0,0}: even part A_{a,b}, no odd part, all coefficients zero.
    static SuperModuleSpec trivial_extension(const Scalar& a, const Scalar& b);
    /// L-action only: one family on u, nothing else.
    static SuperModuleSpec virasoro_only(const VirasoroFamily& family);
};

/// x . w, bilinear. Throws WindowExhausted on an out-of-window lookup and
/// std::invalid_argument when odd terms meet a spec with no odd part.
ModuleVector act(const Element& x, const ModuleVector& w, const SuperModuleSpec& spec);

/// One instance of [x,y] w = x(y w) - (-1)^{|x||y|} y(x w) for homogeneous
/// x, y. Returns the violation if the sides differ.
std::optional<Violation> module_relation(const SuperModuleSpec& spec, const GeneratorId& x,
                                         const GeneratorId& y, const ModuleVector& w);

/// Every generator pair with |degree| <= N acting on every basis vector u_t
/// (and v_t if the spec has an odd part) with |t| <= N. When `families` is
/// given only generators from that set are used. Collects all violations.
CheckReport module_axiom_check(const SuperModuleSpec& spec, std::int64_t radius,
                               const std::vector<Family>& families = {kFamilies.begin(), kFamilies.end()});

}  // namespace superw
