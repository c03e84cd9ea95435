#include "superw/repmod.hpp"

#include <cctype>

namespace superw {

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Aab: return "Aab";
        case FamilyKind::Aalpha: return "Aalpha";
        case FamilyKind::Bbeta: return "Bbeta";
    }
    return "?";
}

FamilyKind parse_family_kind(std::string_view name) {
    if (name == "Aab") return FamilyKind::Aab;
    if (name == "Aalpha") return FamilyKind::Aalpha;
    if (name == "Bbeta") return FamilyKind::Bbeta;
    throw std::invalid_argument("unknown module family '" + std::string(name) + "' (expected Aab, Aalpha or Bbeta)");
}

VirasoroFamily VirasoroFamily::ab(Scalar a, Scalar b) { return {FamilyKind::Aab, std::move(a), std::move(b)}; }
VirasoroFamily VirasoroFamily::alpha(Scalar alpha) { return {FamilyKind::Aalpha, std::move(alpha), Scalar()}; }
VirasoroFamily VirasoroFamily::beta(Scalar beta) { return {FamilyKind::Bbeta, std::move(beta), Scalar()}; }

Scalar VirasoroFamily::coefficient(std::int64_t i, std::int64_t j) const {
    switch (kind_) {
        case FamilyKind::Aab:
            return first_ - Scalar(j) + Scalar(i) * second_;
        case FamilyKind::Aalpha:
            if (j != 0) return Scalar(-(i + j));
            return -Scalar(i) * (Scalar(1) + Scalar(i + 1) * first_);
        case FamilyKind::Bbeta:
            if (i + j != 0) return Scalar(-j);
            return Scalar(i) * (Scalar(1) + Scalar(i + 1) * first_);
    }
    return Scalar();
}

// ---------------------------------------------------------------------------
// Coefficient tables

std::string to_string(CoeffFn fn) {
    switch (fn) {
        case CoeffFn::f: return "f";
        case CoeffFn::ft: return "ft";
        case CoeffFn::g: return "g";
        case CoeffFn::gt: return "gt";
        case CoeffFn::h: return "h";
        case CoeffFn::ht: return "ht";
    }
    return "?";
}

std::optional<CoeffFn> parse_coeff_fn(std::string_view name) {
    for (CoeffFn fn : kCoeffFns)
        if (to_string(fn) == name) return fn;
    return std::nullopt;
}

WindowExhausted::WindowExhausted(CoeffFn fn, std::int64_t i, std::int64_t j, std::int64_t radius)
    : std::out_of_range("window exhausted: " + to_string(fn) + "(" + std::to_string(i) + "," + std::to_string(j) +
                        ") lies outside the coefficient table radius " + std::to_string(radius)),
      fn_(fn), i_(i), j_(j) {}

CoefficientTable::CoefficientTable(std::int64_t radius) : radius_(radius) {
    if (radius < 0) throw std::invalid_argument("coefficient table radius must be >= 0");
}

CoefficientTable CoefficientTable::tabulate(std::int64_t radius, CoeffFn fn,
                                            const std::function<Scalar(std::int64_t, std::int64_t)>& value) {
    CoefficientTable t(radius);
    t.fill(fn, value);
    return t;
}

bool CoefficientTable::contains(std::int64_t i, std::int64_t j) const noexcept {
    return -radius_ <= i && i <= radius_ && -radius_ <= j && j <= radius_;
}

Scalar CoefficientTable::get(CoeffFn fn, std::int64_t i, std::int64_t j) const {
    if (!contains(i, j)) throw WindowExhausted(fn, i, j, radius_);
    const auto& m = samples_[static_cast<std::size_t>(fn)];
    auto it = m.find({i, j});
    return it == m.end() ? Scalar() : it->second;
}

void CoefficientTable::set(CoeffFn fn, std::int64_t i, std::int64_t j, const Scalar& value) {
    if (!contains(i, j)) throw WindowExhausted(fn, i, j, radius_);
    auto& m = samples_[static_cast<std::size_t>(fn)];
    if (value.is_zero())
        m.erase({i, j});
    else
        m[{i, j}] = value;
}

void CoefficientTable::fill(CoeffFn fn, const std::function<Scalar(std::int64_t, std::int64_t)>& value) {
    for (std::int64_t i = -radius_; i <= radius_; ++i)
        for (std::int64_t j = -radius_; j <= radius_; ++j) set(fn, i, j, value(i, j));
}

bool CoefficientTable::is_zero() const {
    for (const auto& m : samples_)
        if (!m.empty()) return false;
    return true;
}

namespace {

class TableLineReader {
public:
    TableLineReader(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
    }
    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }
    std::string_view word() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }
    std::int64_t integer(const char* what) {
        skip_space();
        const std::size_t start = pos_;
        std::string_view w = word();
        std::size_t k = 0;
        if (k < w.size() && (w[k] == '-' || w[k] == '+')) ++k;
        if (k == w.size()) throw ParseError(offset_ + start, what);
        for (std::size_t q = k; q < w.size(); ++q)
            if (!std::isdigit(static_cast<unsigned char>(w[q]))) throw ParseError(offset_ + start + q, what);
        try {
            return std::stoll(std::string(w));
        } catch (const std::out_of_range&) {
            throw ParseError(offset_ + start, what);
        }
    }
    Scalar scalar() {
        skip_space();
        const std::size_t start = pos_;
        std::string_view w = word();
        try {
            return parse_scalar(w);
        } catch (const ParseError& e) {
            throw ParseError(offset_ + start + e.position(), e.expected());
        }
    }
    std::size_t position() const { return offset_ + pos_; }

private:
    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

}  // namespace

CoefficientTable parse_coefficient_table(std::string_view text, std::int64_t radius) {
    CoefficientTable table(radius);
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        TableLineReader line(text.substr(line_start, line_end - line_start), line_start);
        if (!line.done()) {
            const std::size_t fn_pos = line.position();
            std::string_view name = line.word();
            if (name.front() != '#') {
                auto fn = parse_coeff_fn(name);
                if (!fn) throw ParseError(fn_pos, "one of f, ft, g, gt, h, ht");
                line.skip_space();
                const std::size_t index_pos = line.position();
                const std::int64_t i = line.integer("integer index");
                const std::int64_t j = line.integer("integer index");
                if (!table.contains(i, j))
                    throw ParseError(index_pos, "indices within the table radius " + std::to_string(radius));
                const Scalar value = line.scalar();
                if (!line.done()) throw ParseError(line.position(), "end of line");
                table.set(*fn, i, j, value);
            }
        }
        line_start = line_end + 1;
    }
    return table;
}

// ---------------------------------------------------------------------------
// Module vectors

ModuleVector ModuleVector::u(std::int64_t k, const Scalar& c) {
    ModuleVector w;
    w.add_even(k, c);
    return w;
}

ModuleVector ModuleVector::v(std::int64_t k, const Scalar& c) {
    ModuleVector w;
    w.add_odd(k, c);
    return w;
}

namespace {

void accumulate(ModuleVector::Terms& terms, std::int64_t k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

}  // namespace

void ModuleVector::add_even(std::int64_t k, const Scalar& c) { accumulate(even_, k, c); }
void ModuleVector::add_odd(std::int64_t k, const Scalar& c) { accumulate(odd_, k, c); }

ModuleVector& ModuleVector::operator+=(const ModuleVector& rhs) {
    for (const auto& [k, c] : rhs.even_) add_even(k, c);
    for (const auto& [k, c] : rhs.odd_) add_odd(k, c);
    return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& rhs) {
    for (const auto& [k, c] : rhs.even_) add_even(k, -c);
    for (const auto& [k, c] : rhs.odd_) add_odd(k, -c);
    return *this;
}

ModuleVector operator*(const Scalar& s, const ModuleVector& w) {
    ModuleVector out;
    for (const auto& [k, c] : w.even_) out.add_even(k, s * c);
    for (const auto& [k, c] : w.odd_) out.add_odd(k, s * c);
    return out;
}

std::string to_string(const ModuleVector& w) {
    if (w.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : w.even()) append_term(out, c, "u[" + std::to_string(k) + "]");
    for (const auto& [k, c] : w.odd()) append_term(out, c, "v[" + std::to_string(k) + "]");
    return out;
}

// ---------------------------------------------------------------------------
// Action

SuperModuleSpec SuperModuleSpec::trivial_extension(const Scalar& a, const Scalar& b) {
    return virasoro_only(VirasoroFamily::ab(a, b));
}

SuperModuleSpec SuperModuleSpec::virasoro_only(const VirasoroFamily& family) {
    return {family, std::nullopt, CoefficientTable(0)};
}

namespace {

// Image of one generator on one basis vector, added into `out`.
void act_basis(const GeneratorId& x, const Scalar& xc, bool odd_vector, std::int64_t j, const Scalar& wc,
               const SuperModuleSpec& spec, ModuleVector& out) {
    const std::int64_t i = x.degree;
    const Scalar c = xc * wc;
    const bool has_odd = spec.odd_family.has_value();

    if (odd_vector && !has_odd)
        throw std::invalid_argument("module has no odd part but the vector has a v-component");

    auto emit = [&](bool odd_target, const Scalar& coef) {
        if (coef.is_zero()) return;
        if (odd_target && !has_odd)
            throw std::invalid_argument("module has no odd part but " + to_string(x) + " maps u[" +
                                        std::to_string(j) + "] to a nonzero odd vector");
        if (odd_target)
            out.add_odd(i + j, c * coef);
        else
            out.add_even(i + j, c * coef);
    };

    // Zero tables carry no samples; skip lookups entirely so that the
    // trivial extension works at any window.
    const bool zero_table = spec.coeffs.is_zero();

    switch (x.family) {
        case Family::L:
            emit(odd_vector, odd_vector ? spec.odd_family->coefficient(i, j) : spec.even_family.coefficient(i, j));
            break;
        case Family::I:
            if (!zero_table) emit(odd_vector, spec.coeffs.get(odd_vector ? CoeffFn::ft : CoeffFn::f, i, j));
            break;
        case Family::G:
            if (!zero_table) emit(!odd_vector, spec.coeffs.get(odd_vector ? CoeffFn::gt : CoeffFn::g, i, j));
            break;
        case Family::H:
            if (!zero_table) emit(!odd_vector, spec.coeffs.get(odd_vector ? CoeffFn::ht : CoeffFn::h, i, j));
            break;
    }
}

}  // namespace

ModuleVector act(const Element& x, const ModuleVector& w, const SuperModuleSpec& spec) {
    ModuleVector out;
    for (const auto& [g, xc] : x.terms()) {
        for (const auto& [k, wc] : w.even()) act_basis(g, xc, false, k, wc, spec, out);
        for (const auto& [k, wc] : w.odd()) act_basis(g, xc, true, k, wc, spec, out);
    }
    return out;
}

std::optional<Violation> module_relation(const SuperModuleSpec& spec, const GeneratorId& x, const GeneratorId& y,
                                         const ModuleVector& w) {
    const Element ex(x), ey(y);
    const ModuleVector lhs = act(bracket(ex, ey), w, spec);
    const Scalar sign = (parity(x) == 1 && parity(y) == 1) ? Scalar(-1) : Scalar(1);
    ModuleVector rhs = act(ex, act(ey, w, spec), spec);
    rhs -= sign * act(ey, act(ex, w, spec), spec);
    if (lhs == rhs) return std::nullopt;
    return Violation{"module", {to_string(x), to_string(y), to_string(w)}, to_string(lhs), to_string(rhs)};
}

CheckReport module_axiom_check(const SuperModuleSpec& spec, std::int64_t radius, const std::vector<Family>& families) {
    if (radius < 1) throw std::invalid_argument("module_axiom_check: radius must be >= 1");
    std::vector<GeneratorId> gens;
    for (Family f : families)
        for (std::int64_t m = -radius; m <= radius; ++m) gens.push_back({f, m});

    std::vector<ModuleVector> vectors;
    for (std::int64_t t = -radius; t <= radius; ++t) vectors.push_back(ModuleVector::u(t));
    if (spec.odd_family)
        for (std::int64_t t = -radius; t <= radius; ++t) vectors.push_back(ModuleVector::v(t));

    CheckReport report;
    for (const auto& x : gens)
        for (const auto& y : gens)
            for (const auto& w : vectors) {
                ++report.checked;
                if (auto v = module_relation(spec, x, y, w)) report.violations.push_back(std::move(*v));
            }
    if (!spec.odd_family) report.notes.push_back("odd part is zero; only u-vectors are checked");
    return report;
}

}  // namespace superw
