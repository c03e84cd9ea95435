#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "superw/classify.hpp"

#include <fstream>

using namespace superw;

namespace {

Scalar q(long n, long d = 1) { return Scalar::fraction(n, d); }

std::size_t fi(CoeffFn fn) { return static_cast<std::size_t>(fn); }

std::size_t row_of(const Stage1System& sys, std::int64_t i, std::int64_t j, std::int64_t k) {
    for (std::size_t r = 0; r < sys.triples.size(); ++r)
        if (sys.triples[r] == std::array<std::int64_t, 3>{i, j, k}) return r;
    FAIL("triple not assembled");
    return 0;
}

// Dense vector over the window W from a closed form.
std::vector<Scalar> on_window(std::int64_t radius, const std::function<Scalar(std::int64_t, std::int64_t)>& fn) {
    const SampleGrid w{radius};
    std::vector<Scalar> v(w.size());
    for (std::size_t col = 0; col < w.size(); ++col) {
        const auto [i, j] = w.sample(col);
        v[col] = fn(i, j);
    }
    return v;
}

bool all_zero(const std::vector<Scalar>& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

Stage1Solution stage1(CoeffFn fn, const ModuleParams& p, std::int64_t radius = 6) {
    return solve_stage1(assemble_stage1(fn, p, radius), p);
}

}  // namespace

TEST_CASE("stage-1 assembly") {
    const Scalar a = q(2, 3), b = q(5, 7);
    const auto p = ModuleParams::ab(a, b, a, b);
    const auto sys = assemble_stage1(CoeffFn::f, p, 6);
    CHECK(sys.matrix.cols() == 169);
    CHECK(sys.core_radius == 3);

    std::size_t expected = 0;
    for (int i = -12; i <= 12; ++i)
        for (int j = -6; j <= 6; ++j)
            for (int k = -6; k <= 6; ++k) expected += std::abs(i + k) <= 6 && std::abs(i + j) <= 6;
    CHECK(sys.matrix.rows() == expected);
    CHECK(std::is_sorted(sys.triples.begin(), sys.triples.end()));

    // (1,1,0): (a-1+b) f(1,0) - (a+b) f(1,1), the third sample has weight 0.
    const auto w = sys.window();
    const std::size_t r = row_of(sys, 1, 1, 0);
    CHECK(sys.matrix.row(r).size() == 2);
    CHECK(sys.matrix.at(r, w.column(1, 0)) == a - 1 + b);
    CHECK(sys.matrix.at(r, w.column(1, 1)) == -(a + b));

    CHECK_THROWS_AS(assemble_stage1(CoeffFn::f, p, 3), std::invalid_argument);
    CHECK_THROWS_AS(assemble_stage1(CoeffFn::f, p, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(assemble_stage1(CoeffFn::f, p, 5, 6), std::invalid_argument);
}

TEST_CASE("g rows at i = 2j with b' = b + 1/2") {
    const Scalar a = q(2, 3), b = q(5, 7), b2 = b + q(1, 2);
    const auto sys = assemble_stage1(CoeffFn::g, ModuleParams::ab(a, b, a, b2), 6);
    const auto w = sys.window();
    for (std::int64_t j : {-2, 1, 3})
        for (std::int64_t k : {-1, 0, 2}) {
            if (!w.contains(j, k + 2 * j) || !w.contains(3 * j, k)) continue;
            // (a-(k+j)+2jb') g(j,k) - (a-k+2jb) g(j,k+2j); the g(3j,k) term has weight 0.
            const std::size_t r = row_of(sys, 2 * j, j, k);
            CHECK(sys.matrix.at(r, w.column(j, k)) == a - Scalar(k + j) + Scalar(2 * j) * b2);
            CHECK(sys.matrix.at(r, w.column(j, k + 2 * j)) == -(a - Scalar(k) + Scalar(2 * j) * b));
            CHECK(sys.matrix.at(r, w.column(3 * j, k)).is_zero());
        }
}

TEST_CASE("closed forms satisfy every assembled row") {
    const Scalar a = q(2, 3), b = q(5, 7);
    SUBCASE("f = (a+bn-m)/a") {
        const auto sys = assemble_stage1(CoeffFn::f, ModuleParams::ab(a, b, a, b), 6);
        CHECK(all_zero(sys.matrix.apply(on_window(6, [&](auto n, auto m) { return (a + b * Scalar(n) - Scalar(m)) / a; }))));
    }
    SUBCASE("g constant for b' = b + 1/2") {
        const auto sys = assemble_stage1(CoeffFn::g, ModuleParams::ab(a, b, a, b + q(1, 2)), 6);
        CHECK(all_zero(sys.matrix.apply(on_window(6, [](auto, auto) { return Scalar(1); }))));
    }
    SUBCASE("g = 1/(a-j) for b = -1, b' = 1/2") {
        const auto sys = assemble_stage1(CoeffFn::g, ModuleParams::ab(a, -1, a, q(1, 2)), 6);
        CHECK(all_zero(sys.matrix.apply(on_window(6, [&](auto, auto j) { return Scalar(1) / (a - Scalar(j)); }))));
    }
    SUBCASE("g = 1/(a-i-j) for b = -3/2, b' = 0") {
        const auto sys = assemble_stage1(CoeffFn::g, ModuleParams::ab(a, q(-3, 2), a, 0), 6);
        CHECK(all_zero(sys.matrix.apply(on_window(6, [&](auto i, auto j) { return Scalar(1) / (a - Scalar(i + j)); }))));
    }
    SUBCASE("gt constant for b = b' + 1/2") {
        const auto sys = assemble_stage1(CoeffFn::gt, ModuleParams::ab(a, b + q(1, 2), a, b), 6);
        CHECK(all_zero(sys.matrix.apply(on_window(6, [](auto, auto) { return Scalar(1); }))));
    }
    SUBCASE("a wrong closed form is caught") {
        const auto sys = assemble_stage1(CoeffFn::f, ModuleParams::ab(a, b, a, b), 6);
        CHECK_FALSE(all_zero(sys.matrix.apply(on_window(6, [](auto, auto) { return Scalar(1); }))));
    }
}

TEST_CASE("stage-1 dimensions and patterns") {
    const Scalar a = q(2, 3), b = q(5, 7);
    SUBCASE("f generic") {
        const auto s = stage1(CoeffFn::f, ModuleParams::ab(a, b, a, b));
        REQUIRE(s.dimension() == 1);
        CHECK(s.patterns == std::vector<std::string>{"(a+b*i-j)/a"});
        for (std::int64_t n = -3; n <= 3; ++n)
            for (std::int64_t m = -3; m <= 3; ++m) CHECK(s.sample(0, n, m) == (a + b * Scalar(n) - Scalar(m)) / a);
    }
    SUBCASE("g constant") {
        const auto s = stage1(CoeffFn::g, ModuleParams::ab(a, b, a, b + q(1, 2)));
        REQUIRE(s.dimension() == 1);
        CHECK(s.patterns == std::vector<std::string>{"const"});
        CHECK(s.sample(0, 2, -3) == Scalar(1));
    }
    SUBCASE("g = d/(a-j)") {
        const auto s = stage1(CoeffFn::g, ModuleParams::ab(a, -1, a, q(1, 2)));
        REQUIRE(s.dimension() == 1);
        CHECK(s.patterns == std::vector<std::string>{"1/(a-j)"});
    }
    SUBCASE("g = d/(a-i-j)") {
        const auto s = stage1(CoeffFn::g, ModuleParams::ab(a, q(-3, 2), a, 0));
        REQUIRE(s.dimension() == 1);
        CHECK(s.patterns == std::vector<std::string>{"1/(a-i-j)"});
        CHECK(s.sample(0, 1, 1) == a / (a - 2));
    }
    SUBCASE("unrelated b and b'") {
        CHECK(stage1(CoeffFn::g, ModuleParams::ab(a, b, a, q(1, 3))).dimension() == 0);
        CHECK(stage1(CoeffFn::gt, ModuleParams::ab(a, b, a, q(1, 3))).dimension() == 0);
    }
    SUBCASE("patterns with a pole on the core do not apply") {
        // a = 1 puts a zero denominator of 1/(a-j) inside C.
        CHECK(match_patterns(CoeffFn::g, VirasoroFamily::ab(1, -1), 3,
                             std::vector<Scalar>(SampleGrid{3}.size(), Scalar(1)))
                  .size() == 1);
    }
}

TEST_CASE("projected dimensions do not grow with the window") {
    for (const auto& p : {ModuleParams::ab(q(2, 3), q(5, 7), q(2, 3), q(17, 14)),
                          ModuleParams::ab(0, -1, 0, q(1, 2)), ModuleParams::ab(0, 0, 0, q(-3, 2))})
        for (CoeffFn fn : kCoeffFns) {
            std::size_t prev = SIZE_MAX;
            for (std::int64_t n = 4; n <= 7; ++n) {
                const std::size_t d = solve_stage1(assemble_stage1(fn, p, n, 2), p).dimension();
                CHECK(d <= prev);
                prev = d;
            }
        }
}

TEST_CASE("f alone: [I,I] = 0 forces the constant to vanish") {
    const Scalar a = q(2, 3), b = q(5, 7);
    const auto p = ModuleParams::ab(a, b, a, b);
    std::array<Stage1Solution, 6> s1;
    for (CoeffFn fn : kCoeffFns) s1[fi(fn)].core_radius = 3;
    s1[fi(CoeffFn::f)] = stage1(CoeffFn::f, p);

    // f(n,k) f(m,n+k) - f(m,k) f(n,m+k) = c^2 (m-n)(a-k+b(m+n)) / a^2.
    const auto& f = s1[fi(CoeffFn::f)];
    const SampleGrid c = f.core();
    for (std::int64_t m = -3; m <= 3; ++m)
        for (std::int64_t n = -3; n <= 3; ++n)
            for (std::int64_t k = -3; k <= 3; ++k) {
                if (!c.contains(m, n + k) || !c.contains(n, m + k)) continue;
                const Scalar lhs = f.sample(0, n, k) * f.sample(0, m, n + k) - f.sample(0, m, k) * f.sample(0, n, m + k);
                CHECK(lhs == Scalar(m - n) * (a - Scalar(k) + b * Scalar(m + n)) / (a * a));
            }

    // The [I,I] instances collapse to x0^2 after normalization; [G,G] = I
    // with g = gt = 0 adds the linear f = 0.
    std::vector<std::string> polys;
    for (const auto& poly : stage2_constraints(s1)) polys.push_back(to_string(poly));
    CHECK(polys == std::vector<std::string>{"1*x0*x0", "1*x0"});

    const Verdict v = stage2_filter(s1, 6);
    CHECK(v.forced_zero[fi(CoeffFn::f)]);
    CHECK(v.final == FinalVerdict::TrivialIGH);
}

TEST_CASE("zero stage-1 spaces give the trivial verdict") {
    std::array<Stage1Solution, 6> s1;
    for (auto& s : s1) s.core_radius = 3;
    const Verdict v = stage2_filter(s1, 6);
    CHECK(v.final == FinalVerdict::TrivialIGH);
    CHECK(v.relation_instances == 0);
    CHECK(v.product_forced_zero);
}

TEST_CASE("verdict is mirrored by swapping the parts") {
    const Scalar a = q(2, 3), b = q(5, 7), b2 = q(17, 14);
    const Verdict v = classify(ModuleParams::ab(a, b, a, b2), 6);
    const Verdict w = classify(ModuleParams::ab(a, b2, a, b), 6);
    const std::array<std::pair<CoeffFn, CoeffFn>, 3> swaps{
        {{CoeffFn::f, CoeffFn::ft}, {CoeffFn::g, CoeffFn::gt}, {CoeffFn::h, CoeffFn::ht}}};
    for (const auto& [x, y] : swaps) {
        CHECK(v.dimensions[fi(x)] == w.dimensions[fi(y)]);
        CHECK(v.dimensions[fi(y)] == w.dimensions[fi(x)]);
        CHECK(v.forced_zero[fi(x)] == w.forced_zero[fi(y)]);
        CHECK(v.patterns[fi(x)] == w.patterns[fi(y)]);
    }
    CHECK(v.product_forced_zero == w.product_forced_zero);
    CHECK(v.final == w.final);
    CHECK(v.case_tags == std::vector<std::string>{"b'=b+1/2"});
    CHECK(w.case_tags == std::vector<std::string>{"b'=b-1/2"});
}

TEST_CASE("classify examples") {
    const Verdict v = classify(ModuleParams::ab(q(2, 3), q(5, 7), q(2, 3), q(17, 14)), 6);
    CHECK(v.final == FinalVerdict::TrivialIGH);
    for (CoeffFn fn : {CoeffFn::f, CoeffFn::ft, CoeffFn::h, CoeffFn::ht}) CHECK(v.forced_zero[fi(fn)]);
    CHECK(v.product_forced_zero);
    CHECK(v.patterns[fi(CoeffFn::g)] == std::vector<std::string>{"const"});

    const Verdict d = classify(ModuleParams::ab(q(2, 3), -1, q(2, 3), q(1, 2)), 6);
    CHECK(d.patterns[fi(CoeffFn::g)] == std::vector<std::string>{"1/(a-j)"});
    CHECK(d.final == FinalVerdict::TrivialIGH);

    const Verdict z = classify(ModuleParams::ab(0, 0, 0, q(1, 2)), 6);
    CHECK(z.forced_zero[fi(CoeffFn::f)]);
    CHECK(z.final == FinalVerdict::TrivialIGH);
}

TEST_CASE("an integral-a witness is a genuine module on the window") {
    // a = 0, b = -1, b' = 1/2: g(i,j) = [j == 0] and gt(i,j) = i^2 - j^2 leave
    // f, ft, h, ht at zero and still satisfy [G,G] = I = 0. The span of u_j,
    // j != 0, together with all v_k is a submodule.
    const auto p = ModuleParams::ab(0, -1, 0, q(1, 2));
    const Verdict v = classify(p, 6);
    CHECK(v.final == FinalVerdict::Witness);
    CHECK_FALSE(v.product_forced_zero);

    auto table = CoefficientTable::tabulate(9, CoeffFn::g, [](auto, auto j) { return Scalar(j == 0 ? 1 : 0); });
    table.fill(CoeffFn::gt, [](auto i, auto j) { return Scalar(i * i - j * j); });
    const CheckReport r = module_axiom_check({p.even, p.odd, table}, 3);
    CHECK(r.pass());

    // The same table with gt scaled on one sample breaks it.
    table.set(CoeffFn::gt, 1, 0, 2);
    CHECK_FALSE(module_axiom_check({p.even, p.odd, table}, 3).pass());
}

TEST_CASE("case tags") {
    CHECK(case_tags(ModuleParams::ab(0, -1, 0, q(-1, 2))) == std::vector<std::string>{"b'=b+1/2", "b'=-b-3/2"});
    CHECK(case_tags(ModuleParams::ab(0, 0, 0, q(-1, 2))) == std::vector<std::string>{"b'=-(b+1/2)", "b'=b-1/2"});
    CHECK(case_tags(ModuleParams::ab(q(3, 7), q(1, 4), q(3, 7), q(1, 3))).empty());
    CHECK(case_tags({VirasoroFamily::alpha(1), VirasoroFamily::ab(0, q(1, 2))}).empty());
}

TEST_CASE("polynomial helpers") {
    CHECK(poly_gcd({-1, 0, 1}, {-1, 1}) == std::vector<Scalar>{-1, 1});
    const Scalar i(0, 1);
    CHECK(poly_gcd({1, 0, 1}, {-i, 1}) == std::vector<Scalar>{-i, 1});
    CHECK(poly_gcd({1, 0, 1}, {1, 1}) == std::vector<Scalar>{1});
    CHECK(poly_gcd({}, {}).empty());

    // y0^2 and y1^2 share no zero; y0*y1 and y0^2 share (0, 1).
    CHECK_FALSE(binary_forms_have_common_zero({{1, 0, 0}, {0, 0, 1}}));
    CHECK(binary_forms_have_common_zero({{0, 1, 0}, {1, 0, 0}}));
    // Forms without a y0^2 term all vanish at (1, 0).
    CHECK(binary_forms_have_common_zero({{0, 1, 3}, {0, 0, 1}}));
    // (y0 - y1)(y0 + y1) and (y0 - y1)^2 share (1, 1).
    CHECK(binary_forms_have_common_zero({{1, 0, -1}, {1, -2, 1}}));
    CHECK(binary_forms_have_common_zero({}));

    const QuadPoly x = QuadPoly::product({{0, 2}}, {{1, 1}, {0, 1}});
    CHECK(to_string(x) == "2*x0*x0 + 2*x0*x1");
    CHECK(to_string(x.normalized()) == "1*x0*x0 + 1*x0*x1");
    CHECK(x.degree() == 2);
    CHECK(x.homogeneous());
    CHECK(x.without({1}) == QuadPoly::product({{0, 2}}, {{0, 1}}));
    CHECK((x + QuadPoly::linear({{1, 1}})).homogeneous() == false);
    CHECK(x.evaluate({{0, 1}, {1, 2}}) == Scalar(6));
    // x0 = y0 + y1, x1 = y1.
    const QuadPoly y = x.reparametrize({0, 1}, {{1, 0}, {1, 1}});
    CHECK(y.evaluate({{0, 1}, {1, 1}}) == x.evaluate({{0, 2}, {1, 1}}));
}

TEST_CASE("shipped classification samples") {
    std::ifstream in(SUPERW_DATA_DIR "/classify_samples.json");
    REQUIRE(in);
    const auto doc = nlohmann::json::parse(in);
    const std::int64_t n = doc.at("window").get<std::int64_t>();
    std::size_t generic = 0;
    for (const auto& s : doc.at("samples")) {
        CAPTURE(s.at("name").get<std::string>());
        const auto p = ModuleParams::ab(parse_scalar(s.at("a").get<std::string>()), parse_scalar(s.at("b").get<std::string>()),
                                        parse_scalar(s.at("a2").get<std::string>()),
                                        parse_scalar(s.at("b2").get<std::string>()));
        const Verdict v = classify(p, n);
        CHECK(to_string(v.final) == s.at("observed").get<std::string>());
        if (s.at("group") == "generic") {
            ++generic;
            CHECK(v.final == FinalVerdict::TrivialIGH);
        }
    }
    CHECK(generic >= 5);
}
