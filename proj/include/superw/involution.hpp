#pragma once

/**
 * @file involution.hpp
 * @brief Conjugate-linear anti-involutions of the algebra and diagonal
 *        Hermitian forms on A_{a,b,0,0,0}.
 *
 * Two families, with c = c0G, b = b1L, d = d1L, d0 = d0G:
 *
 *   plus:  theta(L_k) = alpha^k L_{-k} + k alpha^{k-1} (b I_{-k} + d H_{-k})
 *          theta(I_k) = alpha^k c^2 I_{-k}
 *          theta(G_k) = alpha^k c G_{-k} + (alpha^k d0 + 2k alpha^{k-1} b c) H_{-k}
 *          theta(H_k) = alpha^k c^3 H_{-k}
 *
 *   minus: theta(L_k) = -alpha^k L_k + k alpha^{k-1} (b I_k + d H_k)
 *          theta(I_k) = alpha^k c^2 I_k
 *          theta(G_k) = alpha^k c G_k + (alpha^k d0 - 2k alpha^{k-1} b c) H_k
 *          theta(H_k) = -alpha^k c^3 H_k
 *
 * extended by theta(s x) = conj(s) theta(x).
 */

#include "superw/algebra.hpp"
#include "superw/check.hpp"
#include "superw/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superw {

enum class InvolutionVariant { Plus, Minus };

/// "plus" or "minus".
std::string to_string(InvolutionVariant v);

struct InvolutionSpec {
    InvolutionVariant variant = InvolutionVariant::Plus;
    Scalar alpha{1};
    Scalar c0G{1};
    Scalar b1L;
    Scalar d1L;
    Scalar d0G;
    int delta = 0;
};

/**
 * Names of the parameter constraints the spec breaks; empty when valid.
 * Half-angle phases are checked in squared form.
 *
 *   plus:  alpha real nonzero, |c0G|^2 = 1,
 *          b1L conj(c0G) in (-1)^delta R>=0,
 *          d1L^2 conj(c0G)^3 in R>=0,
 *          d0G conj(c0G)^2 in (-1)^delta i R>=0
 *   minus: |alpha|^2 = 1, |c0G|^2 = 1,
 *          b1L conj(alpha) conj(c0G) in (-1)^delta R>=0,
 *          d1L^2 conj(alpha)^2 conj(c0G)^3 in R<=0,
 *          d0G conj(c0G)^2 in (-1)^delta R>=0
 *
 * These are exactly the conditions for theta^2 = id on generators.
 */
std::vector<std::string> validate(const InvolutionSpec& spec);

/// Image of one generator. Throws std::domain_error for alpha = 0 and k < 0.
Element theta_generator(const InvolutionSpec& spec, const GeneratorId& g);
Element theta_apply(const InvolutionSpec& spec, const Element& x);

/**
 * On the window: C3 theta([x,y]) = [theta(y), theta(x)] for every basis pair,
 * C4 theta^2 = id on every generator, C1/C2 on seeded random elements, theta
 * of I, G, H free of L, theta(L_0) in span{L_0}, and the L-part of
 * theta(L_m) equal to the Virasoro anti-involution. Does not call validate.
 */
CheckReport involution_axiom_check(const InvolutionSpec& spec, std::int64_t radius, std::uint32_t seed = 1);

/// w_j for |j| <= N, real, positive, w_0 = 1.
struct FormWeights {
    std::int64_t radius = 0;
    std::map<std::int64_t, Scalar> weights;
};

struct UnitaryResult {
    std::optional<FormWeights> weights;
    /// First equation that cannot hold with positive weights.
    std::optional<Violation> witness;
    std::string reason;
    std::size_t equations = 0;
    std::size_t vacuous = 0;
    std::vector<std::string> notes;

    bool feasible() const noexcept { return weights.has_value(); }
};

/**
 * Diagonal form <u_j, u_l> = delta_{jl} w_j on A_{a,b,0,0,0} with
 * <x u, v> = <u, theta(x) v>, linear in the first slot. One equation per
 * generator x with |deg x| <= N and pair |j|, |l| <= N:
 *
 *   [x u_j : u_l] w_l = conj([theta(x) u_l : u_j]) w_j
 *
 * Weights are propagated from w_0 = 1, then every equation is re-verified.
 */
UnitaryResult unitary_weights(const InvolutionSpec& spec, const Scalar& a, const Scalar& b, std::int64_t radius);

/**
 * Key-value lines `key=value` with keys variant (plus|minus), alpha, c0G,
 * b1L, d1L, d0G, delta (0|1). '#' starts a comment line. variant, alpha and
 * c0G are required; the rest default to 0. Errors are ParseError with the
 * byte offset into `text`.
 */
InvolutionSpec parse_involution_spec(std::string_view text);

}  // namespace superw
