#include "superw/algebra.hpp"

#include <cctype>
#include <deque>
#include <stdexcept>

namespace superw {

char family_letter(Family f) {
    switch (f) {
        case Family::L: return 'L';
        case Family::I: return 'I';
        case Family::G: return 'G';
        case Family::H: return 'H';
    }
    return '?';
}

std::string to_string(const GeneratorId& g) {
    return std::string(1, family_letter(g.family)) + "[" + std::to_string(g.degree) + "]";
}

std::vector<GeneratorId> window_basis(std::int64_t radius) {
    std::vector<GeneratorId> out;
    for (Family f : kFamilies)
        for (std::int64_t m = -radius; m <= radius; ++m) out.push_back({f, m});
    return out;
}

// ---------------------------------------------------------------------------
// Element

Element::Element(GeneratorId g, Scalar coef) {
    if (!coef.is_zero()) terms_.emplace(g, std::move(coef));
}

Scalar Element::coefficient(const GeneratorId& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Scalar() : it->second;
}

ElementParity Element::parity() const {
    if (terms_.empty()) return ElementParity::Zero;
    bool even = false, odd = false;
    for (const auto& [g, c] : terms_) (superw::parity(g) ? odd : even) = true;
    if (even && odd) return ElementParity::Mixed;
    return odd ? ElementParity::Odd : ElementParity::Even;
}

void Element::add_term(const GeneratorId& g, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& rhs) {
    for (const auto& [g, c] : rhs.terms_) add_term(g, c);
    return *this;
}

Element& Element::operator-=(const Element& rhs) {
    for (const auto& [g, c] : rhs.terms_) add_term(g, -c);
    return *this;
}

Element operator-(const Element& x) {
    Element out;
    for (const auto& [g, c] : x.terms_) out.terms_.emplace(g, -c);
    return out;
}

Element operator*(const Scalar& s, const Element& x) {
    Element out;
    if (s.is_zero()) return out;
    for (const auto& [g, c] : x.terms_) out.terms_.emplace(g, s * c);
    return out;
}

// ---------------------------------------------------------------------------
// Bracket

namespace {

struct OrientedTerm {
    BracketRule rule;
    Term term;
};

// Brackets in the orientation of the defining table only.
std::optional<OrientedTerm> oriented_bracket(const GeneratorId& x, const GeneratorId& y) {
    const std::int64_t m = x.degree, n = y.degree, s = m + n;
    const Scalar half_m_minus_n = Scalar::fraction(1, 2) * Scalar(m) - Scalar(n);
    if (x.family == Family::L) {
        switch (y.family) {
            case Family::L: return OrientedTerm{BracketRule::LL, {Scalar(m - n), {Family::L, s}}};
            case Family::I: return OrientedTerm{BracketRule::LI, {Scalar(m - n), {Family::I, s}}};
            case Family::H: return OrientedTerm{BracketRule::LH, {half_m_minus_n, {Family::H, s}}};
            case Family::G: return OrientedTerm{BracketRule::LG, {half_m_minus_n, {Family::G, s}}};
        }
    }
    if (x.family == Family::G && y.family == Family::G)
        return OrientedTerm{BracketRule::GG, {Scalar(1), {Family::I, s}}};
    if (x.family == Family::I && y.family == Family::G)
        return OrientedTerm{BracketRule::IG, {Scalar(m - 2 * n), {Family::H, s}}};
    return std::nullopt;
}

}  // namespace

const StructureConstants& StructureConstants::canonical() {
    static const StructureConstants table;
    return table;
}

StructureConstants StructureConstants::with_rule_scaled(BracketRule rule, const Scalar& factor) const {
    StructureConstants out = *this;
    out.rule_scale_[static_cast<std::size_t>(rule)] *= factor;
    return out;
}

StructureConstants StructureConstants::with_pair_scaled(const GeneratorId& x, const GeneratorId& y,
                                                        const Scalar& factor) const {
    StructureConstants out = *this;
    auto key = x < y ? std::pair{x, y} : std::pair{y, x};
    auto [it, inserted] = out.pair_scale_.try_emplace(key, factor);
    if (!inserted) it->second *= factor;
    return out;
}

std::optional<Term> StructureConstants::bracket(const GeneratorId& x, const GeneratorId& y) const {
    std::optional<OrientedTerm> t = oriented_bracket(x, y);
    bool reversed = false;
    if (!t) {
        t = oriented_bracket(y, x);
        reversed = true;
    }
    if (!t || t->term.coef.is_zero()) return std::nullopt;

    Scalar coef = t->term.coef * rule_scale_[static_cast<std::size_t>(t->rule)];
    if (!pair_scale_.empty()) {
        auto it = pair_scale_.find(x < y ? std::pair{x, y} : std::pair{y, x});
        if (it != pair_scale_.end()) coef *= it->second;
    }
    // [y, x] = -(-1)^{|x||y|} [x, y]
    if (reversed && !(parity(x) == 1 && parity(y) == 1)) coef = -coef;
    if (coef.is_zero()) return std::nullopt;
    return Term{std::move(coef), t->term.gen};
}

Element bracket(const Element& x, const Element& y, const StructureConstants& table) {
    Element out;
    for (const auto& [gx, cx] : x.terms())
        for (const auto& [gy, cy] : y.terms())
            if (auto t = table.bracket(gx, gy)) out.add_term(t->gen, cx * cy * t->coef);
    return out;
}

// ---------------------------------------------------------------------------
// Window checks

namespace {

const char* kVanishingNote =
    "brackets not listed in the defining table vanish: [I,I] = [I,H] = [G,H] = [H,H] = 0";

std::string degree_note(std::int64_t radius, int degree) {
    return "every component of the identity is a polynomial in the indices of degree <= " +
           std::to_string(degree) + " in each index; the window supplies " +
           std::to_string(2 * radius + 1) +
           " points per index, so vanishing on the window certifies the identity on all of Z";
}

}  // namespace

CheckReport jacobi_check(std::int64_t radius, const StructureConstants& table) {
    if (radius < 1) throw std::invalid_argument("jacobi_check: radius must be >= 1");
    CheckReport report;
    report.notes.push_back(kVanishingNote);
    const auto basis = window_basis(radius);
    for (const auto& x : basis) {
        for (const auto& y : basis) {
            const auto xy = table.bracket(x, y);
            const Scalar sign = (parity(x) && parity(y)) ? Scalar(-1) : Scalar(1);
            for (const auto& z : basis) {
                ++report.checked;
                Element lhs, rhs;
                if (auto yz = table.bracket(y, z))
                    if (auto t = table.bracket(x, yz->gen)) lhs.add_term(t->gen, yz->coef * t->coef);
                if (xy)
                    if (auto t = table.bracket(xy->gen, z)) rhs.add_term(t->gen, xy->coef * t->coef);
                if (auto xz = table.bracket(x, z))
                    if (auto t = table.bracket(y, xz->gen))
                        rhs.add_term(t->gen, sign * xz->coef * t->coef);
                if (lhs != rhs) {
                    report.violations.push_back(
                        {"jacobi", {to_string(x), to_string(y), to_string(z)}, to_string(lhs), to_string(rhs)});
                    return report;
                }
            }
        }
    }
    report.notes.push_back(degree_note(radius, 2));
    return report;
}

CheckReport skew_check(std::int64_t radius, const StructureConstants& table) {
    if (radius < 1) throw std::invalid_argument("skew_check: radius must be >= 1");
    CheckReport report;
    report.notes.push_back(kVanishingNote);
    const auto basis = window_basis(radius);
    for (const auto& x : basis) {
        for (const auto& y : basis) {
            ++report.checked;
            const Element xy = bracket(Element(x), Element(y), table);
            const Element yx = bracket(Element(y), Element(x), table);
            const Scalar sign = (parity(x) && parity(y)) ? Scalar(-1) : Scalar(1);
            // [x,y] = -(-1)^{|x||y|} [y,x]
            const Element expected = -(sign * yx);
            if (xy != expected)
                report.violations.push_back(
                    {"skew", {to_string(x), to_string(y)}, to_string(xy), to_string(expected)});
        }
    }
    report.notes.push_back(degree_note(radius, 1));
    return report;
}

std::set<GeneratorId> standard_generating_set() {
    std::set<GeneratorId> seed;
    for (std::int64_t m : {1, -1, 2, -2}) seed.insert({Family::L, m});
    for (Family f : {Family::I, Family::G, Family::H})
        for (std::int64_t m : {1, -1}) seed.insert({f, m});
    return seed;
}

ClosureReport generation_closure(const std::set<GeneratorId>& seed, std::int64_t radius) {
    if (radius < 0) throw std::invalid_argument("generation_closure: negative radius");
    ClosureReport report;
    report.radius = radius;
    auto in_window = [radius](const GeneratorId& g) { return g.degree >= -radius && g.degree <= radius; };

    std::deque<GeneratorId> work;
    for (const auto& g : seed)
        if (in_window(g) && report.reached.insert(g).second) work.push_back(g);

    // Brackets of basis elements are multiples of basis elements, so the span
    // closure is spanned by the basis elements reached this way.
    while (!work.empty()) {
        const GeneratorId x = work.front();
        work.pop_front();
        const std::vector<GeneratorId> current(report.reached.begin(), report.reached.end());
        for (const auto& y : current) {
            if (auto t = StructureConstants::canonical().bracket(x, y))
                if (in_window(t->gen) && report.reached.insert(t->gen).second) work.push_back(t->gen);
        }
    }
    const auto basis = window_basis(radius);
    report.window_size = basis.size();
    for (const auto& g : basis)
        if (!report.reached.count(g)) report.missing.push_back(g);
    return report;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class ElementParser {
public:
    explicit ElementParser(std::string_view text) : text_(text) {}

    Element parse() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '0') {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ == text_.size()) return Element();
            pos_ = save;
        }
        Element out;
        bool negate = false;
        if (pos_ < text_.size() && text_[pos_] == '-' && next_is_generator(pos_ + 1)) {
            negate = true;
            ++pos_;
        }
        add_term(out, negate);
        skip_ws();
        while (pos_ < text_.size()) {
            const char op = text_[pos_];
            if (op != '+' && op != '-') throw ParseError(pos_, "'+' or '-' or end of input");
            ++pos_;
            add_term(out, op == '-');
            skip_ws();
        }
        return out;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool next_is_generator(std::size_t p) const {
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        return p < text_.size() && std::isalpha(static_cast<unsigned char>(text_[p]));
    }

    void add_term(Element& out, bool negate) {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "term");
        Scalar coef(1);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            skip_ws();
            coef = scan_scalar(text_, pos_);
            skip_ws();
            expect(')');
            skip_ws();
            expect('*');
        } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            coef = scan_scalar(text_, pos_);
            skip_ws();
            expect('*');
        }
        const GeneratorId g = generator();
        out.add_term(g, negate ? -coef : coef);
    }

    GeneratorId generator() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "generator L, I, G or H");
        Family f;
        switch (text_[pos_]) {
            case 'L': f = Family::L; break;
            case 'I': f = Family::I; break;
            case 'G': f = Family::G; break;
            case 'H': f = Family::H; break;
            default:
                throw ParseError(pos_, "generator L, I, G or H (unknown family '" +
                                           std::string(1, text_[pos_]) + "')");
        }
        ++pos_;
        skip_ws();
        expect('[');
        skip_ws();
        const std::int64_t degree = integer();
        skip_ws();
        expect(']');
        return {f, degree};
    }

    std::int64_t integer() {
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) throw ParseError(pos_, "integer degree");
        try {
            return std::stoll(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            throw ParseError(start, "degree within 64-bit range");
        }
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(pos_, std::string("'") + c + "'");
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(std::string_view text) { return ElementParser(text).parse(); }

std::string to_string(const Element& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [g, c] : e.terms()) append_term(out, c, to_string(g));
    return out;
}

}  // namespace superw
