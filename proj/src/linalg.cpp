#include "superw/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

namespace superw {

Matrix::Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar(1));
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(0, cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        std::vector<std::pair<std::size_t, Scalar>> entries;
        for (std::size_t c = 0; c < cols; ++c) entries.emplace_back(c, r[c]);
        m.append_row(entries);
    }
    return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Scalar();
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& value) {
    if (c >= cols_) throw std::out_of_range("Matrix::set: column out of range");
    auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        if (value.is_zero())
            row.erase(it);
        else
            it->second = value;
    } else if (!value.is_zero()) {
        row.insert(it, {c, value});
    }
}

void Matrix::add_to(std::size_t r, std::size_t c, const Scalar& value) {
    set(r, c, at(r, c) + value);
}

std::size_t Matrix::append_row(const std::vector<std::pair<std::size_t, Scalar>>& entries) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [c, v] : entries) {
        if (c >= cols_) throw std::out_of_range("Matrix::append_row: column out of range");
        acc[c] += v;
    }
    SparseRow row;
    for (auto& [c, v] : acc)
        if (!v.is_zero()) row.emplace_back(c, std::move(v));
    rows_.push_back(std::move(row));
    return rows_.size() - 1;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    std::vector<Scalar> out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, x] : rows_[r]) out[r] += x * v[c];
    return out;
}

namespace {

// v - s * p for sorted sparse rows.
SparseRow subtract_scaled(const SparseRow& v, const Scalar& s, const SparseRow& p) {
    SparseRow out;
    out.reserve(v.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < p.size()) {
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
            out.push_back(v[i++]);
        } else if (i == v.size() || p[j].first < v[i].first) {
            out.emplace_back(p[j].first, -(s * p[j].second));
            ++j;
        } else {
            Scalar x = v[i].second - s * p[j].second;
            if (!x.is_zero()) out.emplace_back(v[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    return out;
}

struct GaussInt {
    mpz_class re;
    mpz_class im;
    bool is_zero() const { return re == 0 && im == 0; }
};

GaussInt mul(const GaussInt& x, const GaussInt& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

using IntRow = std::vector<std::pair<std::size_t, GaussInt>>;

IntRow clear_denominators(const SparseRow& row) {
    mpz_class l = 1;
    for (const auto& [c, x] : row) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
    }
    IntRow out;
    out.reserve(row.size());
    for (const auto& [c, x] : row) {
        mpz_class re = x.re().get_num() * (l / x.re().get_den());
        mpz_class im = x.im().get_num() * (l / x.im().get_den());
        out.push_back({c, {re, im}});
    }
    return out;
}

void make_primitive(IntRow& row) {
    mpz_class g = 0;
    for (const auto& [c, x] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.re.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.im.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0) return;
    for (auto& [c, x] : row) {
        mpz_divexact(x.re.get_mpz_t(), x.re.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(x.im.get_mpz_t(), x.im.get_mpz_t(), g.get_mpz_t());
    }
}

// lead_p * v - lead_v * p; the leading column cancels.
IntRow cross_eliminate(const IntRow& v, const IntRow& p) {
    const GaussInt& lp = p.front().second;
    const GaussInt& lv = v.front().second;
    IntRow out;
    out.reserve(v.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < p.size()) {
        GaussInt x;
        std::size_t col;
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
            col = v[i].first;
            x = mul(lp, v[i++].second);
        } else if (i == v.size() || p[j].first < v[i].first) {
            col = p[j].first;
            GaussInt t = mul(lv, p[j++].second);
            x = {-t.re, -t.im};
        } else {
            col = v[i].first;
            GaussInt a = mul(lp, v[i++].second);
            GaussInt b = mul(lv, p[j++].second);
            x = {a.re - b.re, a.im - b.im};
        }
        if (!x.is_zero()) out.push_back({col, std::move(x)});
    }
    make_primitive(out);
    return out;
}

// Arithmetic modulo a prime p = 1 mod 4, where i has a square root of -1.
constexpr std::uint64_t kPrime = 998244353;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (b %= kPrime; e; e >>= 1, b = b * b % kPrime)
        if (e & 1) r = r * b % kPrime;
    return r;
}

std::optional<std::uint64_t> reduce_mod(const mpq_class& x) {
    const std::uint64_t den = mpz_fdiv_ui(x.get_den_mpz_t(), kPrime);
    if (den == 0) return std::nullopt;
    return mpz_fdiv_ui(x.get_num_mpz_t(), kPrime) * pow_mod(den, kPrime - 2) % kPrime;
}

// Rows that are greedily independent modulo p, in order. Independence mod p
// implies independence over Q(i), but an unlucky prime can miss some, so the
// caller must verify. nullopt if some entry has no image mod p.
std::optional<std::vector<std::size_t>> independent_rows_mod_p(const Matrix& m) {
    static const std::uint64_t sqrt_m1 = pow_mod(3, (kPrime - 1) / 4);
    std::map<std::size_t, std::vector<std::uint64_t>> pivots;
    std::vector<std::size_t> chosen;
    std::vector<std::uint64_t> v(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::fill(v.begin(), v.end(), 0);
        for (const auto& [c, x] : m.row(r)) {
            auto re = reduce_mod(x.re()), im = reduce_mod(x.im());
            if (!re || !im) return std::nullopt;
            v[c] = (*re + *im * sqrt_m1) % kPrime;
        }
        for (auto& [col, p] : pivots) {
            if (v[col] == 0) continue;
            const std::uint64_t s = kPrime - v[col];
            for (std::size_t c = col; c < v.size(); ++c) v[c] = (v[c] + s * p[c]) % kPrime;
        }
        auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
        if (lead == v.end()) continue;
        const std::uint64_t inv = pow_mod(*lead, kPrime - 2);
        for (auto& x : v) x = x * inv % kPrime;
        // Keep the basis fully reduced so one pass per new row suffices.
        const std::size_t col = static_cast<std::size_t>(lead - v.begin());
        for (auto& [c2, p] : pivots) {
            if (p[col] == 0) continue;
            const std::uint64_t s = kPrime - p[col];
            for (std::size_t c = col; c < v.size(); ++c) p[c] = (p[c] + s * v[c]) % kPrime;
        }
        pivots.emplace(col, v);
        chosen.push_back(r);
        if (pivots.size() == m.cols()) break;
    }
    return chosen;
}

RowEchelon rref_exact(const Matrix& m) {
    // Incremental echelon form keyed by leading column.
    std::map<std::size_t, SparseRow> pivots;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow v = m.row(r);
        while (!v.empty()) {
            const std::size_t lead = v.front().first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                const Scalar inv = *v.front().second.inverse();
                for (auto& [c, x] : v) x *= inv;
                pivots.emplace(lead, std::move(v));
                break;
            }
            const Scalar s = v.front().second;
            v = subtract_scaled(v, s, it->second);
        }
    }
    // Back substitution, highest pivot first, so each row used for clearing is
    // already fully reduced.
    for (auto hi = pivots.rbegin(); hi != pivots.rend(); ++hi) {
        const std::size_t col = hi->first;
        for (auto lo = pivots.begin(); lo != pivots.end() && lo->first < col; ++lo) {
            SparseRow& row = lo->second;
            auto e = std::lower_bound(row.begin(), row.end(), col,
                                      [](const auto& x, std::size_t c) { return x.first < c; });
            if (e == row.end() || e->first != col) continue;
            const Scalar s = e->second;
            row = subtract_scaled(row, s, hi->second);
        }
    }
    RowEchelon out;
    for (auto& [col, row] : pivots) {
        out.pivots.push_back(col);
        out.rows.push_back(std::move(row));
    }
    return out;
}

bool in_row_space(SparseRow v, const RowEchelon& e) {
    for (std::size_t k = 0; k < e.rows.size() && !v.empty(); ++k) {
        auto it = std::lower_bound(v.begin(), v.end(), e.pivots[k],
                                   [](const auto& x, std::size_t c) { return x.first < c; });
        if (it == v.end() || it->first != e.pivots[k]) continue;
        const Scalar s = it->second;
        v = subtract_scaled(v, s, e.rows[k]);
    }
    return v.empty();
}

}  // namespace

RowEchelon rref(const Matrix& m) {
    // The reduced form is unique, so it may be computed from any set of rows
    // spanning the row space. Candidates come from a pass modulo p and are
    // confirmed exactly; otherwise fall back to the full elimination.
    const auto chosen = independent_rows_mod_p(m);
    if (!chosen || chosen->size() == m.rows()) return rref_exact(m);
    Matrix sub(0, m.cols());
    for (std::size_t r : *chosen) sub.append_row(m.row(r));
    RowEchelon e = rref_exact(sub);
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!in_row_space(m.row(r), e)) return rref_exact(m);
    return e;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
    const RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(m.cols());
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < e.rows.size(); ++k) {
            const auto& row = e.rows[k];
            auto it = std::lower_bound(row.begin(), row.end(), f,
                                       [](const auto& x, std::size_t c) { return x.first < c; });
            if (it != row.end() && it->first == f) v[e.pivots[k]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Matrix& m) {
    std::map<std::size_t, IntRow> pivots;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        IntRow v = clear_denominators(m.row(r));
        make_primitive(v);
        while (!v.empty()) {
            auto it = pivots.find(v.front().first);
            if (it == pivots.end()) {
                pivots.emplace(v.front().first, std::move(v));
                break;
            }
            v = cross_eliminate(v, it->second);
        }
    }
    return pivots.size();
}

}  // namespace superw
