#pragma once

/**
 * @file algebra.hpp
 * @brief The super W(2,2) Lie superalgebra: basis, superbracket, and window
 *        checks of its axioms.
 *
 * Basis: even L_m, I_m and odd G_m, H_m for m in Z. Nonzero brackets on
 * generators (all other family pairs vanish, reverse orders follow
 * super-skew-symmetry):
 *
 *   [L_m, L_n] = (m - n) L_{m+n}        [L_m, I_n] = (m - n) I_{m+n}
 *   [L_m, H_n] = (m/2 - n) H_{m+n}      [L_m, G_n] = (m/2 - n) G_{m+n}
 *   [G_m, G_n] = I_{m+n}                [I_m, G_n] = (m - 2n) H_{m+n}
 */

#include "superw/check.hpp"
#include "superw/scalar.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace superw {

enum class Family : std::uint8_t { L, I, G, H };

inline constexpr std::array<Family, 4> kFamilies{Family::L, Family::I, Family::G, Family::H};

char family_letter(Family f);

/// 0 for even (L, I), 1 for odd (G, H).
inline int parity(Family f) { return (f == Family::G || f == Family::H) ? 1 : 0; }

struct GeneratorId {
    Family family;
    std::int64_t degree;

    friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

inline int parity(const GeneratorId& g) { return parity(g.family); }

/// `L[3]`, `G[-1]`, ...
std::string to_string(const GeneratorId& g);

/// All 4(2N+1) basis elements with |degree| <= N, ordered by (family, degree).
std::vector<GeneratorId> window_basis(std::int64_t radius);

enum class ElementParity { Zero, Even, Odd, Mixed };

/// Finite linear combination of generators; zero coefficients are never stored.
class Element {
public:
    using Terms = std::map<GeneratorId, Scalar>;

    Element() = default;
    Element(GeneratorId g, Scalar coef = Scalar(1));  // NOLINT: generator as element

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Scalar coefficient(const GeneratorId& g) const;
    ElementParity parity() const;

    /// Adds c * g, erasing the term if it cancels.
    void add_term(const GeneratorId& g, const Scalar& c);

    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs);
    friend Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
    friend Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
    friend Element operator-(const Element& x);
    friend Element operator*(const Scalar& s, const Element& x);

    friend bool operator==(const Element& lhs, const Element& rhs) { return lhs.terms_ == rhs.terms_; }
    friend bool operator!=(const Element& lhs, const Element& rhs) { return !(lhs == rhs); }

private:
    Terms terms_;
};

/// Coefficient times generator; the result of bracketing two generators.
struct Term {
    Scalar coef;
    GeneratorId gen;
};

/// The six nonzero bracket rules, in the orientation listed above.
enum class BracketRule : std::uint8_t { LL, LI, LH, LG, GG, IG };

/**
 * Bracket table. The canonical instance is the algebra itself; mutated copies
 * exist so that the axiom checkers can be shown to detect broken tables.
 * A mutation scales either a whole rule or one unordered generator pair; the
 * scaling is applied in both orders so super-skew-symmetry is preserved.
 */
class StructureConstants {
public:
    static const StructureConstants& canonical();

    StructureConstants with_rule_scaled(BracketRule rule, const Scalar& factor) const;
    StructureConstants with_pair_scaled(const GeneratorId& x, const GeneratorId& y,
                                        const Scalar& factor) const;

    /// [x, y] on generators; nullopt when the bracket vanishes.
    std::optional<Term> bracket(const GeneratorId& x, const GeneratorId& y) const;

private:
    std::array<Scalar, 6> rule_scale_{1, 1, 1, 1, 1, 1};
    std::map<std::pair<GeneratorId, GeneratorId>, Scalar> pair_scale_;
};

Element bracket(const Element& x, const Element& y,
                const StructureConstants& table = StructureConstants::canonical());

/// Graded Leibniz identity [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] on
/// every basis triple of the window. Stops at the first violating triple.
CheckReport jacobi_check(std::int64_t radius,
                         const StructureConstants& table = StructureConstants::canonical());

/// [x,y] + (-1)^{|x||y|}[y,x] = 0 on every basis pair of the window.
CheckReport skew_check(std::int64_t radius,
                       const StructureConstants& table = StructureConstants::canonical());

struct ClosureReport {
    std::int64_t radius = 0;
    std::set<GeneratorId> reached;
    std::vector<GeneratorId> missing;
    std::size_t window_size = 0;

    bool complete() const noexcept { return missing.empty(); }
};

/// Span-closure of a set of generators under the bracket, keeping only basis
/// elements with |degree| <= radius.
ClosureReport generation_closure(const std::set<GeneratorId>& seed, std::int64_t radius);

/// {L_{+-1}, L_{+-2}, I_{+-1}, G_{+-1}, H_{+-1}}.
std::set<GeneratorId> standard_generating_set();

/**
 * Element text grammar (whitespace allowed between tokens):
 *
 *   elem := term (('+' | '-') term)*
 *   term := [coef '*'] gen
 *   coef := scalar | '(' scalar ')'
 *   gen  := ('L' | 'I' | 'G' | 'H') '[' integer ']'
 *
 * A leading '-' before the first generator and the literal `0` for the zero
 * element are also accepted.
 */
Element parse_element(std::string_view text);

/// Canonical text: terms in (family, degree) order, every coefficient
/// printed, complex coefficients parenthesised, negative real coefficients
/// after the first term folded into the joining operator.
std::string to_string(const Element& e);

}  // namespace superw
