#include "superw/involution.hpp"

#include "superw/repmod.hpp"

#include <cctype>
#include <random>
#include <set>
#include <stdexcept>

namespace superw {

std::string to_string(InvolutionVariant v) { return v == InvolutionVariant::Plus ? "plus" : "minus"; }

namespace {

bool unit(const Scalar& x) { return x.norm() == 1; }

// z lies on the closed ray through `dir` (dir one of 1, -1, i, -i).
bool on_ray(const Scalar& z, const Scalar& dir) {
    const Scalar t = z * dir.conj();
    return t.is_real() && sgn(t.re()) >= 0;
}

Scalar sign_of(int delta) { return delta == 0 ? Scalar(1) : Scalar(-1); }

}  // namespace

std::vector<std::string> validate(const InvolutionSpec& s) {
    std::vector<std::string> out;
    if (s.delta != 0 && s.delta != 1) out.push_back("delta in {0,1}");
    const Scalar sg = sign_of(s.delta);
    const Scalar cc = s.c0G.conj();
    if (s.variant == InvolutionVariant::Plus) {
        if (!s.alpha.is_real() || s.alpha.is_zero()) out.push_back("alpha real nonzero");
        if (!unit(s.c0G)) out.push_back("|c0G|^2 = 1");
        if (!on_ray(s.b1L * cc, sg)) out.push_back("b1L*conj(c0G) in (-1)^delta*R>=0");
        if (!on_ray(s.d1L * s.d1L * cc.pow(3), 1)) out.push_back("d1L^2*conj(c0G)^3 in R>=0");
        if (!on_ray(s.d0G * cc * cc, sg * Scalar::imaginary_unit()))
            out.push_back("d0G*conj(c0G)^2 in (-1)^delta*i*R>=0");
    } else {
        const Scalar ca = s.alpha.conj();
        if (!unit(s.alpha)) out.push_back("|alpha|^2 = 1");
        if (!unit(s.c0G)) out.push_back("|c0G|^2 = 1");
        if (!on_ray(s.b1L * ca * cc, sg)) out.push_back("b1L*conj(alpha)*conj(c0G) in (-1)^delta*R>=0");
        if (!on_ray(s.d1L * s.d1L * ca * ca * cc.pow(3), -1)) out.push_back("d1L^2*conj(alpha)^2*conj(c0G)^3 in R<=0");
        if (!on_ray(s.d0G * cc * cc, sg)) out.push_back("d0G*conj(c0G)^2 in (-1)^delta*R>=0");
    }
    return out;
}

Element theta_generator(const InvolutionSpec& s, const GeneratorId& g) {
    const std::int64_t k = g.degree;
    const bool plus = s.variant == InvolutionVariant::Plus;
    const std::int64_t target = plus ? -k : k;
    const Scalar ak = s.alpha.pow(k);
    // k alpha^{k-1}, zero at k = 0 without touching alpha^{-1}.
    const Scalar kak1 = k == 0 ? Scalar() : Scalar(k) * s.alpha.pow(k - 1);
    const Scalar& c = s.c0G;

    Element out;
    switch (g.family) {
        case Family::L:
            out.add_term({Family::L, target}, plus ? ak : -ak);
            out.add_term({Family::I, target}, kak1 * s.b1L);
            out.add_term({Family::H, target}, kak1 * s.d1L);
            break;
        case Family::I:
            out.add_term({Family::I, target}, ak * c * c);
            break;
        case Family::G: {
            const Scalar mixed = Scalar(2) * kak1 * s.b1L * c;
            out.add_term({Family::G, target}, ak * c);
            out.add_term({Family::H, target}, ak * s.d0G + (plus ? mixed : -mixed));
            break;
        }
        case Family::H:
            out.add_term({Family::H, target}, plus ? ak * c.pow(3) : -(ak * c.pow(3)));
            break;
    }
    return out;
}

Element theta_apply(const InvolutionSpec& spec, const Element& x) {
    Element out;
    for (const auto& [g, c] : x.terms()) out += c.conj() * theta_generator(spec, g);
    return out;
}

CheckReport involution_axiom_check(const InvolutionSpec& spec, std::int64_t radius, std::uint32_t seed) {
    if (radius < 1) throw std::invalid_argument("involution_axiom_check: radius must be >= 1");
    CheckReport report;
    const auto basis = window_basis(radius);
    auto fail = [&](std::string rel, std::vector<std::string> idx, const Element& lhs, const Element& rhs) {
        report.violations.push_back({std::move(rel), std::move(idx), to_string(lhs), to_string(rhs)});
    };

    std::map<GeneratorId, Element> image;
    for (const auto& g : basis) image.emplace(g, theta_generator(spec, g));

    for (const auto& x : basis)
        for (const auto& y : basis) {
            ++report.checked;
            const Element lhs = theta_apply(spec, bracket(Element(x), Element(y)));
            const Element rhs = bracket(image.at(y), image.at(x));
            if (lhs != rhs) fail("C3", {to_string(x), to_string(y)}, lhs, rhs);
        }

    for (const auto& g : basis) {
        ++report.checked;
        const Element twice = theta_apply(spec, image.at(g));
        if (twice != Element(g)) fail("C4", {to_string(g)}, twice, Element(g));
    }

    // C1 and C2 hold by construction; spot-check the extension anyway.
    std::mt19937 rng(seed);
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    auto scalar = [&] { return Scalar(mpq_class(pick(-5, 5), pick(1, 4)), mpq_class(pick(-5, 5), pick(1, 4))); };
    auto element = [&] {
        Element e;
        for (long n = pick(1, 4); n > 0; --n) e.add_term(basis[static_cast<std::size_t>(pick(0, static_cast<long>(basis.size()) - 1))], scalar());
        return e;
    };
    for (int trial = 0; trial < 25; ++trial) {
        const Element x = element(), y = element();
        const Scalar s = scalar();
        report.checked += 2;
        const Element sum = theta_apply(spec, x + y), parts = theta_apply(spec, x) + theta_apply(spec, y);
        if (sum != parts) fail("C1", {to_string(x), to_string(y)}, sum, parts);
        const Element scaled = theta_apply(spec, s * x), conj = s.conj() * theta_apply(spec, x);
        if (scaled != conj) fail("C2", {to_string(s), to_string(x)}, scaled, conj);
    }

    for (const auto& g : basis) {
        if (g.family == Family::L) continue;
        ++report.checked;
        Element l_part;
        for (const auto& [h, c] : image.at(g).terms())
            if (h.family == Family::L) l_part.add_term(h, c);
        if (!l_part.is_zero()) fail("ideal", {to_string(g)}, l_part, Element());
    }

    ++report.checked;
    const Element t0 = image.at({Family::L, 0});
    if (t0.terms().size() != 1 || t0.terms().begin()->first != GeneratorId{Family::L, 0})
        fail("cartan", {"L[0]"}, t0, Element({Family::L, 0}, t0.coefficient({Family::L, 0})));

    const bool plus = spec.variant == InvolutionVariant::Plus;
    for (std::int64_t m = -radius; m <= radius; ++m) {
        ++report.checked;
        const GeneratorId g{Family::L, m};
        Element l_part;
        for (const auto& [h, c] : image.at(g).terms())
            if (h.family == Family::L) l_part.add_term(h, c);
        const Scalar am = spec.alpha.pow(m);
        const Element expected = plus ? Element({Family::L, -m}, am) : Element({Family::L, m}, -am);
        if (l_part != expected) fail("virasoro-projection", {to_string(g)}, l_part, expected);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Unitary forms

namespace {

struct AdjointRow {
    GeneratorId x;
    std::int64_t j;
    std::int64_t l;
    Scalar left;   // coefficient of w_l
    Scalar right;  // coefficient of w_j
};

Scalar component(const ModuleVector& w, std::int64_t k) {
    auto it = w.even().find(k);
    return it == w.even().end() ? Scalar() : it->second;
}

Violation adjoint_violation(const AdjointRow& r) {
    std::string lhs, rhs;
    append_term(lhs, r.left, "w[" + std::to_string(r.l) + "]");
    append_term(rhs, r.right, "w[" + std::to_string(r.j) + "]");
    return {"adjoint", {to_string(r.x), "u[" + std::to_string(r.j) + "]", "u[" + std::to_string(r.l) + "]"}, lhs, rhs};
}

}  // namespace

UnitaryResult unitary_weights(const InvolutionSpec& spec, const Scalar& a, const Scalar& b, std::int64_t radius) {
    if (radius < 1) throw std::invalid_argument("unitary_weights: radius must be >= 1");
    const SuperModuleSpec module = SuperModuleSpec::trivial_extension(a, b);
    UnitaryResult res;

    std::vector<AdjointRow> rows;
    for (const auto& x : window_basis(radius)) {
        const Element tx = theta_generator(spec, x);
        for (std::int64_t l = -radius; l <= radius; ++l) {
            const ModuleVector back = act(tx, ModuleVector::u(l), module);
            for (std::int64_t j = -radius; j <= radius; ++j) {
                ++res.equations;
                AdjointRow r{x, j, l, component(act(Element(x), ModuleVector::u(j), module), l),
                             component(back, j).conj()};
                if (r.left.is_zero() && r.right.is_zero()) {
                    ++res.vacuous;
                    continue;
                }
                rows.push_back(std::move(r));
            }
        }
    }

    auto infeasible = [&](const AdjointRow& r, std::string why) {
        res.witness = adjoint_violation(r);
        res.reason = std::move(why);
        return res;
    };

    std::map<std::int64_t, Scalar> w;
    w[0] = Scalar(1);
    for (const auto& r : rows) {
        if (r.left.is_zero() || r.right.is_zero()) return infeasible(r, "exactly one side vanishes");
        if (r.j == r.l && r.left != r.right) return infeasible(r, "diagonal coefficients differ");
    }
    for (;;) {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : rows) {
                if (r.j == r.l) continue;
                const bool has_j = w.count(r.j), has_l = w.count(r.l);
                if (has_j == has_l) continue;
                // left w_l = right w_j
                const Scalar ratio = has_j ? r.right / r.left : r.left / r.right;
                if (!ratio.is_real()) return infeasible(r, "non-real weight ratio");
                if (sgn(ratio.re()) <= 0) return infeasible(r, "non-positive weight ratio");
                if (has_j)
                    w[r.l] = ratio * w.at(r.j);
                else
                    w[r.j] = ratio * w.at(r.l);
                changed = true;
            }
        }
        std::int64_t free = radius + 1;
        for (std::int64_t j = -radius; j <= radius && free > radius; ++j)
            if (!w.count(j)) free = j;
        if (free > radius) break;
        w[free] = Scalar(1);
        res.notes.push_back("w[" + std::to_string(free) + "] is unconstrained by earlier weights and set to 1");
    }

    for (const auto& r : rows)
        if (r.left * w.at(r.l) != r.right * w.at(r.j)) return infeasible(r, "inconsistent weights along two paths");

    FormWeights fw;
    fw.radius = radius;
    fw.weights = std::move(w);
    res.weights = std::move(fw);
    return res;
}

// ---------------------------------------------------------------------------
// Spec files

InvolutionSpec parse_involution_spec(std::string_view text) {
    InvolutionSpec spec;
    std::set<std::string> seen;
    std::size_t pos = 0;
    auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::size_t b = pos, e = end;
        while (b < e && blank(text[b])) ++b;
        while (e > b && blank(text[e - 1])) --e;
        if (b < e && text[b] != '#') {
            const std::size_t eq = text.find('=', b);
            if (eq == std::string_view::npos || eq >= e) throw ParseError(b, "key=value");
            std::size_t ke = eq;
            while (ke > b && blank(text[ke - 1])) --ke;
            std::size_t vb = eq + 1;
            while (vb < e && blank(text[vb])) ++vb;
            const std::string key(text.substr(b, ke - b));
            const std::string_view value = text.substr(vb, e - vb);
            if (!seen.insert(key).second) throw ParseError(b, "a key not given before");
            auto scalar = [&]() {
                try {
                    return parse_scalar(value);
                } catch (const ParseError& err) {
                    throw ParseError(vb + err.position(), err.expected());
                }
            };
            if (key == "variant") {
                if (value == "plus")
                    spec.variant = InvolutionVariant::Plus;
                else if (value == "minus")
                    spec.variant = InvolutionVariant::Minus;
                else
                    throw ParseError(vb, "plus or minus");
            } else if (key == "alpha") {
                spec.alpha = scalar();
            } else if (key == "c0G") {
                spec.c0G = scalar();
            } else if (key == "b1L") {
                spec.b1L = scalar();
            } else if (key == "d1L") {
                spec.d1L = scalar();
            } else if (key == "d0G") {
                spec.d0G = scalar();
            } else if (key == "delta") {
                if (value == "0")
                    spec.delta = 0;
                else if (value == "1")
                    spec.delta = 1;
                else
                    throw ParseError(vb, "0 or 1");
            } else {
                throw ParseError(b, "one of variant, alpha, c0G, b1L, d1L, d0G, delta");
            }
        }
        pos = end + 1;
    }
    for (const char* key : {"variant", "alpha", "c0G"})
        if (!seen.count(key)) throw ParseError(text.size(), std::string("key '") + key + "'");
    return spec;
}

}  // namespace superw
