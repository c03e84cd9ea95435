#pragma once

/**
 * @file classify.hpp
 * @brief Window-level classification of the coefficient functions
 *        f, ft, g, gt, h, ht of a super intermediate-series module.
 *
 * Stage 1 solves the linear systems coming from the [L, I], [L, G], [L, H]
 * module relations, one system per function, on W = [-N, N]^2 and projects
 * the solution space onto the core window C = [-R, R]^2. Stage 2 substitutes
 * the projected solution spaces into the quadratic relations coming from
 * [I,I] = 0, [G,G] = I, [I,G] = (m-2n)H, [I,H] = [G,H] = [H,H] = 0 and decides
 * which scalar parameters are forced to vanish.
 */

#include "superw/linalg.hpp"
#include "superw/repmod.hpp"
#include "superw/scalar.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace superw {

/// Virasoro families on the even (u) and odd (v) parts.
struct ModuleParams {
    VirasoroFamily even;
    VirasoroFamily odd;

    /// Both parts of type Aab: (a, b) on u and (a', b') on v.
    static ModuleParams ab(const Scalar& a, const Scalar& b, const Scalar& a2, const Scalar& b2);

    /// The family acting on the input side of a coefficient function (the
    /// even part for f, g, h and the odd part for ft, gt, ht).
    const VirasoroFamily& source(CoeffFn fn) const;
    const VirasoroFamily& target(CoeffFn fn) const;
};

inline std::int64_t default_core_radius(std::int64_t radius) { return (radius + 1) / 2; }

/// Grid of samples (i, j) with |i|, |j| <= radius; column (i+R)(2R+1) + (j+R).
struct SampleGrid {
    std::int64_t radius = 0;

    std::size_t size() const { return static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)); }
    bool contains(std::int64_t i, std::int64_t j) const {
        return -radius <= i && i <= radius && -radius <= j && j <= radius;
    }
    std::size_t column(std::int64_t i, std::int64_t j) const {
        return static_cast<std::size_t>((i + radius) * (2 * radius + 1) + (j + radius));
    }
    std::pair<std::int64_t, std::int64_t> sample(std::size_t column) const;
};

/**
 * Rows for target X with image family lambda_t and source family lambda_s:
 *
 *   lambda_t(i, j+k) X(j,k) - lambda_s(i,k) X(j,i+k) - c(i,j) X(i+j,k) = 0
 *
 * with c(i,j) = i - j for f, ft and i/2 - j for g, gt, h, ht. One row per
 * triple (i, j, k) whose three samples lie in W, in lexicographic order.
 */
struct Stage1System {
    CoeffFn target = CoeffFn::f;
    std::int64_t radius = 0;
    std::int64_t core_radius = 0;
    Matrix matrix;
    std::vector<std::array<std::int64_t, 3>> triples;

    SampleGrid window() const { return {radius}; }
    SampleGrid core() const { return {core_radius}; }
};

/// Throws std::invalid_argument unless radius >= 4 and 1 <= core <= radius.
Stage1System assemble_stage1(CoeffFn target, const ModuleParams& params, std::int64_t radius,
                             std::optional<std::int64_t> core_radius = std::nullopt);

struct Stage1Solution {
    CoeffFn target = CoeffFn::f;
    std::int64_t core_radius = 0;
    /// Reduced row echelon basis of the projection onto C. A one-dimensional
    /// space is scaled so that its (0,0) sample, or failing that its first
    /// nonzero sample, equals 1.
    std::vector<std::vector<Scalar>> basis;
    /// Closed forms proportional to the basis on all of C (dimension 1 only).
    std::vector<std::string> patterns;

    std::size_t dimension() const { return basis.size(); }
    SampleGrid core() const { return {core_radius}; }
    Scalar sample(std::size_t r, std::int64_t i, std::int64_t j) const { return basis.at(r).at(core().column(i, j)); }
};

Stage1Solution solve_stage1(const Stage1System& sys, const ModuleParams& params);

/**
 * Candidate closed forms, with a, b the parameters of the source family
 * (Aab only):
 *   f, ft:           (a+b*i-j)/a
 *   g, gt, h, ht:    const, 1/(a-j), 1/(a-i-j)
 * A pattern whose denominator vanishes somewhere on C does not apply.
 */
std::vector<std::string> match_patterns(CoeffFn target, const VirasoroFamily& source, std::int64_t core_radius,
                                        const std::vector<Scalar>& basis);

/// Polynomial of degree <= 2 in numbered unknowns. A monomial is a pair of
/// variable indices (u, v) with u <= v; -1 stands for "no variable", so
/// (-1, v) is linear and (-1, -1) the constant term.
class QuadPoly {
public:
    using Monomial = std::pair<int, int>;
    using Linear = std::map<int, Scalar>;

    static QuadPoly product(const Linear& x, const Linear& y);
    static QuadPoly linear(const Linear& x);

    const std::map<Monomial, Scalar>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add(Monomial m, const Scalar& c);
    QuadPoly& operator+=(const QuadPoly& rhs);
    QuadPoly& operator-=(const QuadPoly& rhs);
    friend QuadPoly operator+(QuadPoly lhs, const QuadPoly& rhs) { return lhs += rhs; }
    friend QuadPoly operator-(QuadPoly lhs, const QuadPoly& rhs) { return lhs -= rhs; }
    friend QuadPoly operator*(const Scalar& s, const QuadPoly& p);

    std::set<int> variables() const;
    /// Highest total degree among the stored terms; 0 for the zero polynomial.
    int degree() const;
    bool homogeneous() const;
    /// Drops every term containing one of `zero`.
    QuadPoly without(const std::set<int>& zero) const;
    /// Substitutes x_v = sum_k basis[k][v] * y_k for every v in `vars` (the
    /// other variables must not occur). Returns a polynomial in y_0, y_1, ...
    QuadPoly reparametrize(const std::vector<int>& vars, const std::vector<std::vector<Scalar>>& basis) const;
    /// Scaled so the first coefficient is 1.
    QuadPoly normalized() const;
    Scalar evaluate(const std::map<int, Scalar>& point) const;

    friend bool operator==(const QuadPoly&, const QuadPoly&) = default;

private:
    std::map<Monomial, Scalar> terms_;
};

std::string to_string(const QuadPoly& p);

/**
 * True when the binary quadratic forms A y0^2 + B y0 y1 + C y1^2 have a common
 * zero other than (0, 0) over the complex numbers. Decided exactly: either all
 * A vanish (zero at (1, 0)) or the dehomogenised polynomials have a
 * nonconstant gcd over Q(i).
 */
bool binary_forms_have_common_zero(const std::vector<std::array<Scalar, 3>>& forms);

/// Univariate polynomial gcd over Q(i), coefficients in ascending degree,
/// result monic (empty for the zero polynomial).
std::vector<Scalar> poly_gcd(std::vector<Scalar> p, std::vector<Scalar> q);

/// Numbering of the stage-2 unknowns: function fn, basis vector r.
struct Stage2Variables {
    std::array<std::vector<int>, 6> of;
    std::vector<std::pair<CoeffFn, std::size_t>> owner;

    explicit Stage2Variables(const std::array<Stage1Solution, 6>& s1);
};

/// One polynomial per instance of the twelve quadratic relations with all
/// samples in C, in the unknowns of Stage2Variables. Zero polynomials and
/// duplicates (up to scaling) are dropped; order is deterministic.
std::vector<QuadPoly> stage2_constraints(const std::array<Stage1Solution, 6>& s1);

enum class FinalVerdict { TrivialIGH, Witness, OutOfCaseTable };

std::string to_string(FinalVerdict v);

struct Verdict {
    std::int64_t radius = 0;
    std::int64_t core_radius = 0;
    std::array<std::size_t, 6> dimensions{};
    std::array<std::vector<std::string>, 6> patterns;
    /// Functions whose every window solution vanishes on C.
    std::array<bool, 6> forced_zero{};
    /// g * gt = 0 on every window solution.
    bool product_forced_zero = false;
    std::size_t relation_instances = 0;
    /// Relations between b and b' from the case list (Aab only); empty if none.
    std::vector<std::string> case_tags;
    FinalVerdict final = FinalVerdict::Witness;
    std::vector<std::string> notes;
};

/// Needs every stage-1 dimension <= 2; larger inputs give OutOfCaseTable.
Verdict stage2_filter(const std::array<Stage1Solution, 6>& s1, std::int64_t radius);

Verdict classify(const ModuleParams& params, std::int64_t radius,
                 std::optional<std::int64_t> core_radius = std::nullopt);

/// b' = b + 1/2, b' = -(b + 1/2), b' = -b - 3/2, b' = b - 1/2.
std::vector<std::string> case_tags(const ModuleParams& params);

}  // namespace superw
