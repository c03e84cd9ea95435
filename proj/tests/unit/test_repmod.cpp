#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superw/repmod.hpp"
#include "support/random.hpp"

using namespace superw;

namespace {

Scalar q(long n, long d = 1) { return Scalar::fraction(n, d); }

GeneratorId gen(Family f, std::int64_t m) { return {f, m}; }

ModuleVector act1(Family f, std::int64_t m, const ModuleVector& w, const SuperModuleSpec& spec) {
    return act(Element(gen(f, m)), w, spec);
}

SuperModuleSpec with_odd(const Scalar& a, const Scalar& b, const Scalar& a2, const Scalar& b2,
                         CoefficientTable table) {
    return {VirasoroFamily::ab(a, b), VirasoroFamily::ab(a2, b2), std::move(table)};
}

}  // namespace

TEST_CASE("Virasoro family coefficients") {
    CHECK(act1(Family::L, 1, ModuleVector::u(0), SuperModuleSpec::trivial_extension(0, 0)).is_zero());
    CHECK(act1(Family::L, 2, ModuleVector::u(1), SuperModuleSpec::trivial_extension(q(2, 3), q(5, 7))) ==
          ModuleVector::u(3, q(23, 21)));

    const auto alpha = SuperModuleSpec::virasoro_only(VirasoroFamily::alpha(1));
    CHECK(act1(Family::L, 1, ModuleVector::u(0), alpha) == ModuleVector::u(1, -3));
    CHECK(act1(Family::L, 1, ModuleVector::u(2), alpha) == ModuleVector::u(3, -3));

    const auto beta = SuperModuleSpec::virasoro_only(VirasoroFamily::beta(0));
    CHECK(act1(Family::L, 2, ModuleVector::u(-2), beta) == ModuleVector::u(0, 2));
    CHECK(act1(Family::L, 2, ModuleVector::u(-1), beta) == ModuleVector::u(1, 1));

    CHECK(act1(Family::G, 1, ModuleVector::u(0), SuperModuleSpec::trivial_extension(q(2, 3), q(5, 7))).is_zero());
}

TEST_CASE("family names") {
    for (auto k : {FamilyKind::Aab, FamilyKind::Aalpha, FamilyKind::Bbeta})
        CHECK(parse_family_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_family_kind("A"), std::invalid_argument);
}

TEST_CASE("coefficient table action and parity") {
    CoefficientTable t(4);
    t.set(CoeffFn::f, 1, 0, 2);
    t.set(CoeffFn::ft, 1, 0, 3);
    t.set(CoeffFn::g, 1, 0, 5);
    t.set(CoeffFn::gt, 1, 0, 7);
    t.set(CoeffFn::h, 1, 0, 11);
    t.set(CoeffFn::ht, 1, 0, 13);
    const auto spec = with_odd(q(1, 3), 0, q(1, 3), q(1, 2), t);
    CHECK(act1(Family::I, 1, ModuleVector::u(0), spec) == ModuleVector::u(1, 2));
    CHECK(act1(Family::I, 1, ModuleVector::v(0), spec) == ModuleVector::v(1, 3));
    CHECK(act1(Family::G, 1, ModuleVector::u(0), spec) == ModuleVector::v(1, 5));
    CHECK(act1(Family::G, 1, ModuleVector::v(0), spec) == ModuleVector::u(1, 7));
    CHECK(act1(Family::H, 1, ModuleVector::u(0), spec) == ModuleVector::v(1, 11));
    CHECK(act1(Family::H, 1, ModuleVector::v(0), spec) == ModuleVector::u(1, 13));
    // The odd part uses its own family parameters.
    CHECK(act1(Family::L, 2, ModuleVector::v(0), spec) == ModuleVector::v(2, q(4, 3)));
}

TEST_CASE("window exhaustion is reported with its lookup") {
    const auto spec = with_odd(0, 0, 0, 0, CoefficientTable::tabulate(2, CoeffFn::f, [](auto, auto) { return Scalar(1); }));
    try {
        act1(Family::I, 3, ModuleVector::u(0), spec);
        FAIL("expected WindowExhausted");
    } catch (const WindowExhausted& e) {
        CHECK(e.function() == CoeffFn::f);
        CHECK(e.i() == 3);
        CHECK(e.j() == 0);
        CHECK(std::string(e.what()).find("f(3,0)") != std::string::npos);
    }
    CHECK_THROWS_AS(module_axiom_check(spec, 2), WindowExhausted);
}

TEST_CASE("a module without odd part rejects odd vectors") {
    const auto spec = SuperModuleSpec::trivial_extension(1, 0);
    CHECK_THROWS_AS(act1(Family::L, 1, ModuleVector::v(0), spec), std::invalid_argument);
    SuperModuleSpec bad{VirasoroFamily::ab(1, 0), std::nullopt,
                        CoefficientTable::tabulate(2, CoeffFn::g, [](auto, auto) { return Scalar(1); })};
    CHECK_THROWS_AS(act1(Family::G, 1, ModuleVector::u(0), bad), std::invalid_argument);
}

TEST_CASE("module axiom check") {
    SUBCASE("trivial extension passes") {
        auto r = module_axiom_check(SuperModuleSpec::trivial_extension(q(2, 3), q(5, 7)), 5);
        CHECK(r.pass());
        CHECK(r.checked == 44 * 44 * 11);
    }
    SUBCASE("every Virasoro family passes its L-action check") {
        for (const auto& fam : {VirasoroFamily::ab(q(2, 3), q(5, 7)), VirasoroFamily::alpha(q(1, 3)),
                                VirasoroFamily::alpha(Scalar(mpq_class(1, 2), mpq_class(1, 5))),
                                VirasoroFamily::beta(q(-2, 7)), VirasoroFamily::beta(0)})
            CHECK(module_axiom_check(SuperModuleSpec::virasoro_only(fam), 5, {Family::L}).pass());
    }
    SUBCASE("constant f fails on L-I pairs") {
        const std::int64_t n = 3;
        const auto spec = with_odd(q(2, 3), q(5, 7), q(2, 3), q(5, 7),
                                   CoefficientTable::tabulate(3 * n, CoeffFn::f, [](auto, auto) { return Scalar(1); }));
        auto r = module_axiom_check(spec, n);
        REQUIRE_FALSE(r.pass());
        // [G,G] = I also fails, since G acts as zero while I does not.
        bool saw_li = false;
        for (const auto& v : r.violations) {
            const char x = v.indices[0][0], y = v.indices[1][0];
            CHECK(((x == 'L' && y == 'I') || (x == 'I' && y == 'L') || (x == 'G' && y == 'G')));
            saw_li = saw_li || (x == 'L' && y == 'I');
        }
        CHECK(saw_li);
    }
    SUBCASE("zero vector is vacuous") {
        const auto spec = with_odd(q(2, 3), q(5, 7), q(2, 3), q(5, 7),
                                   CoefficientTable::tabulate(4, CoeffFn::f, [](auto, auto) { return Scalar(1); }));
        CHECK_FALSE(module_relation(spec, gen(Family::L, 1), gen(Family::I, 1), ModuleVector()).has_value());
        CHECK(module_relation(spec, gen(Family::L, 1), gen(Family::I, 1), ModuleVector::u(0)).has_value());
    }
    SUBCASE("constant g with b' = b + 1/2 and g~ = 0 is a module") {
        const Scalar a = q(2, 3), b = q(5, 7);
        const auto spec =
            with_odd(a, b, a, b + q(1, 2), CoefficientTable::tabulate(9, CoeffFn::g, [](auto, auto) { return Scalar(4); }));
        CHECK(module_axiom_check(spec, 3).pass());
    }
    SUBCASE("constant g and g~ together break [G,G] = I") {
        const Scalar a = q(2, 3), b = q(5, 7);
        auto table = CoefficientTable::tabulate(9, CoeffFn::g, [](auto, auto) { return Scalar(1); });
        table.fill(CoeffFn::gt, [](auto, auto) { return Scalar(1); });
        auto r = module_axiom_check(with_odd(a, b, a, b + q(1, 2), table), 3);
        REQUIRE_FALSE(r.pass());
        bool saw_gg = false;
        for (const auto& v : r.violations) saw_gg = saw_gg || (v.indices[0][0] == 'G' && v.indices[1][0] == 'G');
        CHECK(saw_gg);
    }
}

TEST_CASE("coefficient table text format") {
    const char* text =
        "# a comment\n"
        "f 0 0 1\n"
        "\n"
        "  gt -1 2 1/2-1/3i  \n"
        "g 1 1 0\n";
    auto t = parse_coefficient_table(text, 3);
    CHECK(t.get(CoeffFn::f, 0, 0) == Scalar(1));
    CHECK(t.get(CoeffFn::gt, -1, 2) == Scalar(mpq_class(1, 2), mpq_class(-1, 3)));
    CHECK(t.get(CoeffFn::g, 1, 1).is_zero());
    CHECK(t.get(CoeffFn::h, 3, 3).is_zero());

    auto position_of = [](const char* body, std::int64_t radius) -> std::size_t {
        try {
            parse_coefficient_table(body, radius);
        } catch (const ParseError& e) {
            return e.position();
        }
        return std::string::npos;
    };
    CHECK(position_of("k 0 0 1\n", 3) == 0);
    CHECK(position_of("f 0 0 1\nf 4 0 1\n", 3) == 10);
    CHECK(position_of("f 0 x 1", 3) == 4);
    CHECK(position_of("f 0 0 1/0", 3) == 6 + 2);
    CHECK(position_of("f 0 0 1 2", 3) == 8);
    CHECK(position_of("f 0 0", 3) == 5);
    CHECK(position_of("f 0 0 1\n", 3) == std::string::npos);
}

TEST_CASE("module vector text") {
    ModuleVector w = ModuleVector::u(3) + ModuleVector::v(-1, Scalar(mpq_class(1, 2), 1)) + ModuleVector::u(0, -2);
    CHECK(to_string(w) == "-2*u[0] + 1*u[3] + (1/2+1i)*v[-1]");
    CHECK(to_string(ModuleVector()) == "0");
    CHECK((w - w).is_zero());
}

TEST_CASE("property: bilinearity, parity swap and degree additivity of the action") {
    testing::Rng rng(3);
    CoefficientTable table(12);
    for (CoeffFn fn : kCoeffFns)
        table.fill(fn, [&](auto, auto) { return rng.integer(0, 3) == 0 ? Scalar() : rng.scalar(); });
    const auto spec = with_odd(rng.scalar(), rng.scalar(), rng.scalar(), rng.scalar(), table);

    auto random_vector = [&] {
        ModuleVector w;
        for (long n = rng.integer(0, 4); n > 0; --n) {
            if (rng.integer(0, 1))
                w.add_even(rng.integer(-5, 5), rng.scalar());
            else
                w.add_odd(rng.integer(-5, 5), rng.scalar());
        }
        return w;
    };

    for (int trial = 0; trial < 200; ++trial) {
        const Element x = rng.element(5), y = rng.element(5);
        const ModuleVector w1 = random_vector(), w2 = random_vector();
        const Scalar s = rng.scalar(), t = rng.scalar();
        CHECK(act(s * x + t * y, w1, spec) == s * act(x, w1, spec) + t * act(y, w1, spec));
        CHECK(act(x, s * w1 + t * w2, spec) == s * act(x, w1, spec) + t * act(x, w2, spec));

        const GeneratorId g = rng.generator(5);
        const std::int64_t k = rng.integer(-5, 5);
        for (const auto& w : {ModuleVector::u(k), ModuleVector::v(k)}) {
            const ModuleVector image = act(Element(g), w, spec);
            const bool from_odd = !w.odd().empty();
            const bool to_odd = parity(g) == 1 ? !from_odd : from_odd;
            CHECK((to_odd ? image.even() : image.odd()).empty());
            for (const auto& [deg, c] : to_odd ? image.odd() : image.even()) CHECK(deg == g.degree + k);
        }
    }
}
