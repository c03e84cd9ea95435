#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superw/linalg.hpp"
#include "support/random.hpp"

using superw::Matrix;
using superw::Scalar;

namespace {

Matrix dense(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Scalar>> out;
    for (auto r : rows) out.emplace_back(r.begin(), r.end());
    return Matrix::from_rows(out);
}

}  // namespace

TEST_CASE("nullspace examples") {
    CHECK(superw::nullspace(Matrix::identity(3)).empty());

    // [[1,1],[2,2]]: pivot in column 0, free column 1 -> (-1, 1).
    auto ns = superw::nullspace(dense({{1, 1}, {2, 2}}));
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == std::vector<Scalar>{Scalar(-1), Scalar(1)});

    ns = superw::nullspace(dense({{0, 0}}));
    REQUIRE(ns.size() == 2);
    CHECK(ns[0] == std::vector<Scalar>{Scalar(1), Scalar(0)});
    CHECK(ns[1] == std::vector<Scalar>{Scalar(0), Scalar(1)});

    // No rows at all: the whole space.
    CHECK(superw::nullspace(Matrix(0, 3)).size() == 3);
}

TEST_CASE("rank examples") {
    CHECK(superw::rank(Matrix::identity(4)) == 4);
    CHECK(superw::rank(Matrix(3, 5)) == 0);
    CHECK(superw::rank(dense({{1, 2}, {2, 4}, {0, 1}})) == 2);
}

TEST_CASE("complex entries") {
    // Rows (1, i) and (i, -1) are proportional by i.
    Matrix m(2, 2);
    m.set(0, 0, Scalar(1));
    m.set(0, 1, Scalar::imaginary_unit());
    m.set(1, 0, Scalar::imaginary_unit());
    m.set(1, 1, Scalar(-1));
    CHECK(superw::rank(m) == 1);
    auto ns = superw::nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] == -Scalar::imaginary_unit());
    CHECK(ns[0][1] == Scalar(1));
}

TEST_CASE("sparse row bookkeeping") {
    Matrix m(1, 4);
    m.append_row({{2, Scalar(3)}, {0, Scalar(1)}, {2, Scalar(-3)}});
    CHECK(m.row(1).size() == 1);
    CHECK(m.at(1, 0) == Scalar(1));
    m.add_to(1, 0, Scalar(-1));
    CHECK(m.row(1).empty());
}

TEST_CASE("rref is reduced and canonical") {
    auto e = superw::rref(dense({{0, 2, 4}, {1, 1, 1}, {1, 3, 5}}));
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    // x = -z... row0: (1,0,-1), row1: (0,1,2)
    CHECK(e.rows[0].size() == 2);
    CHECK(e.rows[0][1].second == Scalar(-1));
    CHECK(e.rows[1][1].second == Scalar(2));
}

TEST_CASE("property: rank + nullity = cols and nullspace vectors are annihilated") {
    superw::testing::Rng rng(7);
    for (int trial = 0; trial < 120; ++trial) {
        const auto rows = static_cast<std::size_t>(rng.integer(0, 7));
        const auto cols = static_cast<std::size_t>(rng.integer(1, 7));
        Matrix m(0, cols);
        // Low-rank structure shows up often when rows are combinations of a
        // few random seeds.
        std::vector<std::vector<Scalar>> seeds(static_cast<std::size_t>(rng.integer(1, 3)),
                                               std::vector<Scalar>(cols));
        for (auto& s : seeds)
            for (auto& x : s) x = rng.integer(0, 2) == 0 ? Scalar() : rng.scalar();
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<std::pair<std::size_t, Scalar>> entries;
            for (const auto& s : seeds) {
                const Scalar k = rng.scalar();
                for (std::size_t c = 0; c < cols; ++c) entries.emplace_back(c, k * s[c]);
            }
            m.append_row(entries);
        }
        const auto ns = superw::nullspace(m);
        CHECK(superw::rank(m) + ns.size() == cols);
        for (const auto& v : ns)
            for (const auto& x : m.apply(v)) CHECK(x.is_zero());
    }
}

TEST_CASE("rows that collapse modulo the filtering prime") {
    const long p = 998244353;
    // Dependent mod p, independent over Q: the exact check must catch it.
    auto e = superw::rref(dense({{1, 0}, {1, p}, {2, 0}}));
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    // An entry with denominator p has no image mod p.
    Matrix m(0, 2);
    m.append_row({{0, Scalar::fraction(1, p)}, {1, Scalar(1)}});
    m.append_row({{0, Scalar(1)}, {1, Scalar(1)}});
    CHECK(superw::rank(m) == 2);
    CHECK(superw::nullspace(m).empty());
    // Redundant rows give the same reduced form as the spanning subset.
    auto a = superw::rref(dense({{0, 2, 4}, {1, 1, 1}, {1, 3, 5}, {2, 2, 2}}));
    auto b = superw::rref(dense({{1, 1, 1}, {0, 1, 2}}));
    CHECK(a.pivots == b.pivots);
    CHECK(a.rows == b.rows);
}
