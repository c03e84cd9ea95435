#include "superw/classify.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace superw {

ModuleParams ModuleParams::ab(const Scalar& a, const Scalar& b, const Scalar& a2, const Scalar& b2) {
    return {VirasoroFamily::ab(a, b), VirasoroFamily::ab(a2, b2)};
}

const VirasoroFamily& ModuleParams::source(CoeffFn fn) const {
    return (fn == CoeffFn::f || fn == CoeffFn::g || fn == CoeffFn::h) ? even : odd;
}

const VirasoroFamily& ModuleParams::target(CoeffFn fn) const {
    return (fn == CoeffFn::f || fn == CoeffFn::gt || fn == CoeffFn::ht) ? even : odd;
}

std::pair<std::int64_t, std::int64_t> SampleGrid::sample(std::size_t column) const {
    const auto side = static_cast<std::size_t>(2 * radius + 1);
    return {static_cast<std::int64_t>(column / side) - radius, static_cast<std::int64_t>(column % side) - radius};
}

// ---------------------------------------------------------------------------
// Stage 1

Stage1System assemble_stage1(CoeffFn target, const ModuleParams& params, std::int64_t radius,
                             std::optional<std::int64_t> core_radius) {
    if (radius < 4) throw std::invalid_argument("assemble_stage1: window radius must be >= 4");
    const std::int64_t core = core_radius.value_or(default_core_radius(radius));
    if (core < 1 || core > radius) throw std::invalid_argument("assemble_stage1: core radius must lie in [1, radius]");

    Stage1System sys;
    sys.target = target;
    sys.radius = radius;
    sys.core_radius = core;
    const SampleGrid w = sys.window();
    sys.matrix = Matrix(0, w.size());

    const VirasoroFamily& lt = params.target(target);
    const VirasoroFamily& ls = params.source(target);
    const bool even_rule = target == CoeffFn::f || target == CoeffFn::ft;

    for (std::int64_t i = -2 * radius; i <= 2 * radius; ++i)
        for (std::int64_t j = -radius; j <= radius; ++j)
            for (std::int64_t k = -radius; k <= radius; ++k) {
                if (!w.contains(j, i + k) || !w.contains(i + j, k)) continue;
                const Scalar c = even_rule ? Scalar(i - j) : Scalar::fraction(i, 2) - Scalar(j);
                sys.matrix.append_row({{w.column(j, k), lt.coefficient(i, j + k)},
                                       {w.column(j, i + k), -ls.coefficient(i, k)},
                                       {w.column(i + j, k), -c}});
                sys.triples.push_back({i, j, k});
            }
    return sys;
}

namespace {

std::optional<Scalar> pattern_value(const std::string& name, const Scalar& a, const Scalar& b, std::int64_t i,
                                    std::int64_t j) {
    if (name == "(a+b*i-j)/a") return checked_div(a + b * Scalar(i) - Scalar(j), a);
    if (name == "const") return Scalar(1);
    if (name == "1/(a-j)") return checked_div(Scalar(1), a - Scalar(j));
    if (name == "1/(a-i-j)") return checked_div(Scalar(1), a - Scalar(i) - Scalar(j));
    return std::nullopt;
}

}  // namespace

std::vector<std::string> match_patterns(CoeffFn target, const VirasoroFamily& source, std::int64_t core_radius,
                                        const std::vector<Scalar>& basis) {
    std::vector<std::string> out;
    if (source.kind() != FamilyKind::Aab) return out;
    const bool f_type = target == CoeffFn::f || target == CoeffFn::ft;
    const std::vector<std::string> names =
        f_type ? std::vector<std::string>{"(a+b*i-j)/a"} : std::vector<std::string>{"const", "1/(a-j)", "1/(a-i-j)"};
    const SampleGrid c{core_radius};
    for (const auto& name : names) {
        std::optional<Scalar> scale;
        bool ok = true;
        for (std::size_t col = 0; col < c.size() && ok; ++col) {
            const auto [i, j] = c.sample(col);
            const auto p = pattern_value(name, source.first(), source.second(), i, j);
            if (!p) {
                ok = false;
                break;
            }
            if (!scale && !p->is_zero()) scale = basis[col] / *p;
            if (scale)
                ok = basis[col] == *scale * *p;
            else
                ok = basis[col].is_zero();
        }
        if (ok && scale && !scale->is_zero()) out.push_back(name);
    }
    return out;
}

Stage1Solution solve_stage1(const Stage1System& sys, const ModuleParams& params) {
    const SampleGrid w = sys.window();
    const SampleGrid c = sys.core();

    Matrix projected(0, c.size());
    for (const auto& v : nullspace(sys.matrix)) {
        std::vector<std::pair<std::size_t, Scalar>> entries;
        for (std::size_t col = 0; col < c.size(); ++col) {
            const auto [i, j] = c.sample(col);
            const Scalar& x = v[w.column(i, j)];
            if (!x.is_zero()) entries.emplace_back(col, x);
        }
        projected.append_row(entries);
    }

    Stage1Solution out;
    out.target = sys.target;
    out.core_radius = sys.core_radius;
    for (const auto& row : rref(projected).rows) {
        std::vector<Scalar> dense(c.size());
        for (const auto& [col, x] : row) dense[col] = x;
        out.basis.push_back(std::move(dense));
    }
    if (out.dimension() == 1) {
        auto& v = out.basis.front();
        Scalar lead = v[c.column(0, 0)];
        if (lead.is_zero()) lead = *std::find_if(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); });
        const Scalar inv = *lead.inverse();
        for (auto& x : v) x *= inv;
        out.patterns = match_patterns(sys.target, params.source(sys.target), sys.core_radius, v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomials

namespace {

QuadPoly::Monomial make_monomial(int u, int v) { return u <= v ? QuadPoly::Monomial{u, v} : QuadPoly::Monomial{v, u}; }

}  // namespace

void QuadPoly::add(Monomial m, const Scalar& c) {
    if (c.is_zero()) return;
    m = make_monomial(m.first, m.second);
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

QuadPoly QuadPoly::product(const Linear& x, const Linear& y) {
    QuadPoly p;
    for (const auto& [u, cu] : x)
        for (const auto& [v, cv] : y) p.add({u, v}, cu * cv);
    return p;
}

QuadPoly QuadPoly::linear(const Linear& x) {
    QuadPoly p;
    for (const auto& [v, c] : x) p.add({-1, v}, c);
    return p;
}

QuadPoly& QuadPoly::operator+=(const QuadPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add(m, c);
    return *this;
}

QuadPoly& QuadPoly::operator-=(const QuadPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add(m, -c);
    return *this;
}

QuadPoly operator*(const Scalar& s, const QuadPoly& p) {
    QuadPoly out;
    for (const auto& [m, c] : p.terms_) out.add(m, s * c);
    return out;
}

std::set<int> QuadPoly::variables() const {
    std::set<int> out;
    for (const auto& [m, c] : terms_) {
        if (m.first >= 0) out.insert(m.first);
        if (m.second >= 0) out.insert(m.second);
    }
    return out;
}

namespace {

int monomial_degree(const QuadPoly::Monomial& m) { return (m.first >= 0) + (m.second >= 0); }

}  // namespace

int QuadPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
}

bool QuadPoly::homogeneous() const {
    std::set<int> degrees;
    for (const auto& [m, c] : terms_) degrees.insert(monomial_degree(m));
    return degrees.size() <= 1;
}

QuadPoly QuadPoly::without(const std::set<int>& zero) const {
    QuadPoly out;
    for (const auto& [m, c] : terms_)
        if (!zero.count(m.first) && !zero.count(m.second)) out.terms_.emplace(m, c);
    return out;
}

QuadPoly QuadPoly::reparametrize(const std::vector<int>& vars, const std::vector<std::vector<Scalar>>& basis) const {
    auto image = [&](int v) {
        Linear out;
        if (v < 0) {
            out[-1] = Scalar(1);
            return out;
        }
        const auto pos = std::find(vars.begin(), vars.end(), v);
        if (pos == vars.end()) throw std::invalid_argument("reparametrize: unexpected variable");
        const auto idx = static_cast<std::size_t>(pos - vars.begin());
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!basis[k][idx].is_zero()) out[static_cast<int>(k)] = basis[k][idx];
        return out;
    };
    QuadPoly out;
    for (const auto& [m, c] : terms_) out += c * product(image(m.first), image(m.second));
    return out;
}

QuadPoly QuadPoly::normalized() const {
    if (terms_.empty()) return *this;
    return *terms_.begin()->second.inverse() * *this;
}

Scalar QuadPoly::evaluate(const std::map<int, Scalar>& point) const {
    auto value = [&](int v) {
        if (v < 0) return Scalar(1);
        auto it = point.find(v);
        return it == point.end() ? Scalar() : it->second;
    };
    Scalar s;
    for (const auto& [m, c] : terms_) s += c * value(m.first) * value(m.second);
    return s;
}

std::string to_string(const QuadPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    auto var = [](int v) { return "x" + std::to_string(v); };
    for (const auto& [m, c] : p.terms()) {
        std::string symbol;
        if (m.first < 0 && m.second < 0)
            symbol = "1";
        else if (m.first < 0)
            symbol = var(m.second);
        else
            symbol = var(m.first) + "*" + var(m.second);
        append_term(out, c, symbol);
    }
    return out;
}

std::vector<Scalar> poly_gcd(std::vector<Scalar> p, std::vector<Scalar> q) {
    auto trim = [](std::vector<Scalar>& x) {
        while (!x.empty() && x.back().is_zero()) x.pop_back();
    };
    trim(p);
    trim(q);
    while (!q.empty()) {
        // p <- p mod q
        while (p.size() >= q.size() && !p.empty()) {
            const Scalar factor = p.back() / q.back();
            const std::size_t shift = p.size() - q.size();
            for (std::size_t k = 0; k < q.size(); ++k) p[shift + k] -= factor * q[k];
            trim(p);
        }
        std::swap(p, q);
    }
    if (!p.empty()) {
        const Scalar inv = *p.back().inverse();
        for (auto& x : p) x *= inv;
    }
    return p;
}

bool binary_forms_have_common_zero(const std::vector<std::array<Scalar, 3>>& forms) {
    bool all_a_zero = true;
    std::vector<Scalar> g;
    bool any = false;
    for (const auto& f : forms) {
        if (f[0].is_zero() && f[1].is_zero() && f[2].is_zero()) continue;
        all_a_zero = all_a_zero && f[0].is_zero();
        // A x^2 + B x + C with x = y0 / y1.
        std::vector<Scalar> p{f[2], f[1], f[0]};
        g = any ? poly_gcd(g, p) : poly_gcd(p, {});
        any = true;
    }
    if (!any || all_a_zero) return true;
    return g.size() >= 2;
}

// ---------------------------------------------------------------------------
// Stage 2

Stage2Variables::Stage2Variables(const std::array<Stage1Solution, 6>& s1) {
    int next = 0;
    for (std::size_t f = 0; f < 6; ++f)
        for (std::size_t r = 0; r < s1[f].dimension(); ++r) {
            of[f].push_back(next++);
            owner.emplace_back(kCoeffFns[f], r);
        }
}

namespace {

struct SampleForms {
    const std::array<Stage1Solution, 6>& s1;
    const Stage2Variables& vars;

    // X(i, j) as a linear form in the unknowns of X.
    QuadPoly::Linear operator()(CoeffFn fn, std::int64_t i, std::int64_t j) const {
        const auto f = static_cast<std::size_t>(fn);
        QuadPoly::Linear out;
        for (std::size_t r = 0; r < s1[f].dimension(); ++r) {
            const Scalar x = s1[f].sample(r, i, j);
            if (!x.is_zero()) out[vars.of[f][r]] = x;
        }
        return out;
    }
};

QuadPoly scaled(const Scalar& s, const QuadPoly::Linear& x) { return s * QuadPoly::linear(x); }

}  // namespace

std::vector<QuadPoly> stage2_constraints(const std::array<Stage1Solution, 6>& s1) {
    const Stage2Variables vars(s1);
    const SampleForms X{s1, vars};
    const std::int64_t r = s1[0].core_radius;
    const SampleGrid c{r};
    using F = CoeffFn;
    using P = QuadPoly;

    std::vector<QuadPoly> out;
    std::set<std::string> seen;
    auto keep = [&](const QuadPoly& p) {
        if (p.is_zero()) return;
        QuadPoly n = p.normalized();
        if (seen.insert(to_string(n)).second) out.push_back(std::move(n));
    };

    for (std::int64_t m = -r; m <= r; ++m)
        for (std::int64_t n = -r; n <= r; ++n)
            for (std::int64_t k = -r; k <= r; ++k) {
                if (!c.contains(m, n + k) || !c.contains(n, m + k) || !c.contains(m + n, k)) continue;
                const Scalar m2n(m - 2 * n);
                // [I_m, I_n] = 0 on u_k and v_k.
                keep(P::product(X(F::f, n, k), X(F::f, m, n + k)) - P::product(X(F::f, m, k), X(F::f, n, m + k)));
                keep(P::product(X(F::ft, n, k), X(F::ft, m, n + k)) -
                     P::product(X(F::ft, m, k), X(F::ft, n, m + k)));
                // [G_m, G_n] = I_{m+n}.
                keep(P::product(X(F::g, n, k), X(F::gt, m, n + k)) + P::product(X(F::g, m, k), X(F::gt, n, m + k)) -
                     P::linear(X(F::f, m + n, k)));
                keep(P::product(X(F::gt, n, k), X(F::g, m, n + k)) + P::product(X(F::gt, m, k), X(F::g, n, m + k)) -
                     P::linear(X(F::ft, m + n, k)));
                // [I_m, G_n] = (m - 2n) H_{m+n}.
                keep(P::product(X(F::g, n, k), X(F::ft, m, n + k)) - P::product(X(F::f, m, k), X(F::g, n, m + k)) -
                     scaled(m2n, X(F::h, m + n, k)));
                keep(P::product(X(F::gt, n, k), X(F::f, m, n + k)) - P::product(X(F::ft, m, k), X(F::gt, n, m + k)) -
                     scaled(m2n, X(F::ht, m + n, k)));
                // [I_m, H_n] = 0.
                keep(P::product(X(F::h, n, k), X(F::ft, m, n + k)) - P::product(X(F::f, m, k), X(F::h, n, m + k)));
                keep(P::product(X(F::ht, n, k), X(F::f, m, n + k)) - P::product(X(F::ft, m, k), X(F::ht, n, m + k)));
                // [G_m, H_n] = 0.
                keep(P::product(X(F::h, n, k), X(F::gt, m, n + k)) + P::product(X(F::g, m, k), X(F::ht, n, m + k)));
                keep(P::product(X(F::ht, n, k), X(F::g, m, n + k)) + P::product(X(F::gt, m, k), X(F::h, n, m + k)));
                // [H_m, H_n] = 0.
                keep(P::product(X(F::h, n, k), X(F::ht, m, n + k)) + P::product(X(F::h, m, k), X(F::ht, n, m + k)));
                keep(P::product(X(F::ht, n, k), X(F::h, m, n + k)) + P::product(X(F::ht, m, k), X(F::h, n, m + k)));
            }
    return out;
}

std::string to_string(FinalVerdict v) {
    switch (v) {
        case FinalVerdict::TrivialIGH: return "trivial-IGH";
        case FinalVerdict::Witness: return "witness";
        case FinalVerdict::OutOfCaseTable: return "out-of-case-table";
    }
    return "?";
}

namespace {

enum class BlockOutcome { ForcedZero, Open, OutOfTable };

struct BlockResult {
    BlockOutcome outcome = BlockOutcome::Open;
    // Solutions of the linear constraints, in the block's own coordinates.
    std::vector<std::vector<Scalar>> kernel;
};

std::array<Scalar, 3> binary_coefficients(const QuadPoly& p) {
    std::array<Scalar, 3> out;
    for (const auto& [m, c] : p.terms()) {
        if (m == QuadPoly::Monomial{0, 0}) out[0] = c;
        else if (m == QuadPoly::Monomial{0, 1}) out[1] = c;
        else if (m == QuadPoly::Monomial{1, 1}) out[2] = c;
        else throw std::logic_error("binary_coefficients: not a binary quadratic form");
    }
    return out;
}

// Decides whether the unknowns `vars` of one function must all vanish, given
// the constraints that involve nothing else. Each such constraint is
// homogeneous of degree 1 or 2.
BlockResult analyze_block(const std::vector<int>& vars, const std::vector<QuadPoly>& polys) {
    BlockResult res;
    const std::size_t d = vars.size();
    if (d > 2) {
        res.outcome = BlockOutcome::OutOfTable;
        return res;
    }
    Matrix lin(0, d);
    std::vector<QuadPoly> quads;
    for (const auto& p : polys) {
        if (!p.homogeneous()) {
            res.outcome = BlockOutcome::OutOfTable;
            return res;
        }
        if (p.degree() == 1) {
            std::vector<std::pair<std::size_t, Scalar>> row;
            for (const auto& [m, c] : p.terms()) {
                const auto pos = std::find(vars.begin(), vars.end(), m.second) - vars.begin();
                row.emplace_back(static_cast<std::size_t>(pos), c);
            }
            lin.append_row(row);
        } else {
            quads.push_back(p);
        }
    }
    res.kernel = nullspace(lin);
    if (res.kernel.empty()) {
        res.outcome = BlockOutcome::ForcedZero;
        return res;
    }
    std::vector<std::array<Scalar, 3>> forms;
    for (const auto& q : quads) {
        const QuadPoly y = q.reparametrize(vars, res.kernel);
        if (res.kernel.size() == 1) {
            if (!y.is_zero()) {
                res.outcome = BlockOutcome::ForcedZero;
                return res;
            }
        } else {
            forms.push_back(binary_coefficients(y));
        }
    }
    if (res.kernel.size() == 2 && !binary_forms_have_common_zero(forms)) res.outcome = BlockOutcome::ForcedZero;
    return res;
}

bool involves_only(const QuadPoly& p, const std::set<int>& allowed) {
    for (int v : p.variables())
        if (!allowed.count(v)) return false;
    return true;
}

}  // namespace

Verdict stage2_filter(const std::array<Stage1Solution, 6>& s1, std::int64_t radius) {
    Verdict out;
    out.radius = radius;
    out.core_radius = s1[0].core_radius;
    for (std::size_t f = 0; f < 6; ++f) {
        out.dimensions[f] = s1[f].dimension();
        out.patterns[f] = s1[f].patterns;
    }
    for (std::size_t f = 0; f < 6; ++f)
        if (out.dimensions[f] > 2) {
            out.final = FinalVerdict::OutOfCaseTable;
            out.notes.push_back(to_string(kCoeffFns[f]) + " has a stage-1 space of dimension " +
                                std::to_string(out.dimensions[f]) + " > 2; the quadratic filter is not run");
            return out;
        }

    const Stage2Variables vars(s1);
    const std::vector<QuadPoly> all = stage2_constraints(s1);
    out.relation_instances = all.size();

    std::set<int> zero;
    std::array<BlockResult, 6> blocks;
    for (std::size_t f = 0; f < 6; ++f)
        if (vars.of[f].empty()) {
            out.forced_zero[f] = true;
            blocks[f].outcome = BlockOutcome::ForcedZero;
        }

    bool out_of_table = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t f = 0; f < 6; ++f) {
            if (out.forced_zero[f]) continue;
            const std::set<int> own(vars.of[f].begin(), vars.of[f].end());
            std::vector<QuadPoly> local;
            for (const auto& p : all) {
                QuadPoly q = p.without(zero);
                if (!q.is_zero() && involves_only(q, own)) local.push_back(std::move(q));
            }
            blocks[f] = analyze_block(vars.of[f], local);
            if (blocks[f].outcome == BlockOutcome::OutOfTable) out_of_table = true;
            if (blocks[f].outcome == BlockOutcome::ForcedZero) {
                out.forced_zero[f] = true;
                zero.insert(own.begin(), own.end());
                changed = true;
            }
        }
    }

    const auto fi = [](CoeffFn fn) { return static_cast<std::size_t>(fn); };
    const std::size_t g = fi(CoeffFn::g), gt = fi(CoeffFn::gt);

    if (out.forced_zero[g] || out.forced_zero[gt]) {
        out.product_forced_zero = true;
    } else {
        // Bilinear constraints in (g, gt) on the linear kernels of both blocks.
        const auto& kg = blocks[g].kernel;
        const auto& kt = blocks[gt].kernel;
        const std::set<int> own_g(vars.of[g].begin(), vars.of[g].end());
        const std::set<int> own_t(vars.of[gt].begin(), vars.of[gt].end());
        std::set<int> both = own_g;
        both.insert(own_t.begin(), own_t.end());

        // rows[i][a] = linear form in the gt kernel coordinates for s_a.
        std::vector<std::vector<std::vector<Scalar>>> mats;
        for (const auto& p : all) {
            const QuadPoly q = p.without(zero);
            if (q.is_zero() || !involves_only(q, both) || involves_only(q, own_g) || involves_only(q, own_t)) continue;
            std::vector<std::vector<Scalar>> mat(kg.size(), std::vector<Scalar>(kt.size()));
            for (const auto& [m, c] : q.terms()) {
                const bool bilinear = m.first >= 0 && ((own_g.count(m.first) && own_t.count(m.second)) ||
                                                       (own_t.count(m.first) && own_g.count(m.second)));
                if (!bilinear) {
                    out_of_table = true;
                    continue;
                }
                const int vg = own_g.count(m.first) ? m.first : m.second;
                const int vt = own_g.count(m.first) ? m.second : m.first;
                const auto ig = static_cast<std::size_t>(std::find(vars.of[g].begin(), vars.of[g].end(), vg) -
                                                         vars.of[g].begin());
                const auto it = static_cast<std::size_t>(std::find(vars.of[gt].begin(), vars.of[gt].end(), vt) -
                                                         vars.of[gt].begin());
                for (std::size_t a = 0; a < kg.size(); ++a)
                    for (std::size_t b = 0; b < kt.size(); ++b) mat[a][b] += c * kg[a][ig] * kt[b][it];
            }
            mats.push_back(std::move(mat));
        }

        if (kg.size() == 1 || kt.size() == 1) {
            // With one side one-dimensional the other side must lie in the
            // kernel of the stacked linear forms.
            const bool g_side = kg.size() == 1;
            Matrix stacked(0, g_side ? kt.size() : kg.size());
            for (const auto& mat : mats) {
                std::vector<std::pair<std::size_t, Scalar>> row;
                if (g_side)
                    for (std::size_t b = 0; b < kt.size(); ++b) row.emplace_back(b, mat[0][b]);
                else
                    for (std::size_t a = 0; a < kg.size(); ++a) row.emplace_back(a, mat[a][0]);
                stacked.append_row(row);
            }
            out.product_forced_zero = nullspace(stacked).empty();
        } else if (kg.size() == 2 && kt.size() == 2) {
            // A(s) has rows s^T M_i; g*gt = 0 is forced unless all 2x2 minors
            // of A(s) share a nontrivial zero s.
            std::vector<std::array<Scalar, 3>> minors;
            for (std::size_t i = 0; i < mats.size(); ++i)
                for (std::size_t j = i + 1; j < mats.size(); ++j) {
                    const auto& p = mats[i];
                    const auto& q = mats[j];
                    // row_i(s) = (p00 s0 + p10 s1, p01 s0 + p11 s1)
                    std::array<Scalar, 3> form;
                    form[0] = p[0][0] * q[0][1] - p[0][1] * q[0][0];
                    form[1] = p[0][0] * q[1][1] + p[1][0] * q[0][1] - p[0][1] * q[1][0] - p[1][1] * q[0][0];
                    form[2] = p[1][0] * q[1][1] - p[1][1] * q[1][0];
                    minors.push_back(form);
                }
            bool rank_deficient = binary_forms_have_common_zero(minors);
            if (mats.empty()) rank_deficient = true;
            out.product_forced_zero = !rank_deficient;
        } else {
            out_of_table = true;
        }
    }

    const bool igh_zero = out.forced_zero[fi(CoeffFn::f)] && out.forced_zero[fi(CoeffFn::ft)] &&
                          out.forced_zero[fi(CoeffFn::h)] && out.forced_zero[fi(CoeffFn::ht)];
    if (igh_zero && out.product_forced_zero) {
        out.final = FinalVerdict::TrivialIGH;
    } else if (out_of_table) {
        out.final = FinalVerdict::OutOfCaseTable;
        out.notes.push_back("a constraint block fell outside the exhaustive solver's case table");
    } else {
        out.final = FinalVerdict::Witness;
        for (CoeffFn fn : {CoeffFn::f, CoeffFn::ft, CoeffFn::h, CoeffFn::ht})
            if (!out.forced_zero[fi(fn)])
                out.notes.push_back(to_string(fn) + " is not forced to vanish by the window relations");
        if (!out.product_forced_zero)
            out.notes.push_back("g and gt can both be nonzero under the window relations");
    }
    return out;
}

std::vector<std::string> case_tags(const ModuleParams& params) {
    std::vector<std::string> out;
    if (params.even.kind() != FamilyKind::Aab || params.odd.kind() != FamilyKind::Aab) return out;
    const Scalar& b = params.even.second();
    const Scalar& b2 = params.odd.second();
    const Scalar half = Scalar::fraction(1, 2);
    if (b2 == b + half) out.push_back("b'=b+1/2");
    if (b2 == -(b + half)) out.push_back("b'=-(b+1/2)");
    if (b2 == -b - Scalar::fraction(3, 2)) out.push_back("b'=-b-3/2");
    if (b2 == b - half) out.push_back("b'=b-1/2");
    return out;
}

Verdict classify(const ModuleParams& params, std::int64_t radius, std::optional<std::int64_t> core_radius) {
    std::array<Stage1Solution, 6> s1;
    for (std::size_t f = 0; f < 6; ++f)
        s1[f] = solve_stage1(assemble_stage1(kCoeffFns[f], params, radius, core_radius), params);
    Verdict v = stage2_filter(s1, radius);
    v.case_tags = case_tags(params);
    return v;
}

}  // namespace superw
