#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "roc2/algebra.hpp"
#include "roc2/tmf13.hpp"

using namespace roc2;

namespace {

MonomialAlgebra e2_algebra() { return build_scenario("tmf13").algebra; }

Element rand_element(const MonomialAlgebra& a, std::mt19937_64& rng, int terms)
{
    std::uniform_int_distribution<int> e(0, 4), inv_e(-4, 4), c(-5, 5);
    Element out;
    for (int t = 0; t < terms; ++t) {
        std::map<std::string, int> exps;
        for (const auto& g : a.gens())
            exps[g.name] = g.invertible ? inv_e(rng) : e(rng);
        out = a.add(out, a.element(a.monomial(exps), c(rng)));
    }
    return out;
}

}  // namespace

TEST_CASE("basis in bidegree")
{
    MonomialAlgebra a = e2_algebra();
    auto b0 = a.basis_in_bidegree(Degree{0, 0}, 0);
    REQUIRE(b0.size() == 1);
    CHECK(a.monomial_str(b0[0]) == "1");

    auto bs = a.basis_in_bidegree(Degree{0, -1}, 1);
    REQUIRE(bs.size() == 1);
    CHECK(a.monomial_str(bs[0]) == "a_sigma");

    auto b3 = a.basis_in_bidegree(Degree{3, 3}, 0);
    REQUIRE(b3.size() == 2);
    CHECK(a.monomial_str(b3[0]) == "a1bar^3");
    CHECK(a.monomial_str(b3[1]) == "a3bar");

    // closure under the degree map
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> d(-12, 12), s(0, 10);
    for (int i = 0; i < 100; ++i) {
        Degree deg{d(rng), d(rng)};
        long long filt = s(rng);
        for (const auto& m : a.basis_in_bidegree(deg, filt)) {
            CHECK(a.degree_of(m) == deg);
            CHECK(a.filtration_of(m) == filt);
        }
    }
}

TEST_CASE("localized enumeration requires a window")
{
    MonomialAlgebra a = e2_algebra().localize("a1bar");
    CHECK(a.requires_exponent_window());
    CHECK_THROWS(a.basis_in_bidegree(Degree{0, 0}, 0));
    auto basis = a.basis_in_bidegree(Degree{0, 0}, 0, ExponentWindow{30});
    // monomials (a3bar a1bar^-3)^h, h = 0..10 within the cap
    CHECK(basis.size() == 11);
}

TEST_CASE("multiplication")
{
    MonomialAlgebra a = e2_algebra();
    Element as = a.element(a.monomial({{"a_sigma", 1}}));
    Element as2 = a.multiply(as, as);
    CHECK(as2 == a.element(a.monomial({{"a_sigma", 2}})));
    CHECK(a.scale(2, as).is_zero());

    Element u = a.element(a.monomial({{"u_2sigma", 1}}));
    Element uinv = a.element(a.monomial({{"u_2sigma", -1}}));
    CHECK(a.multiply(u, uinv) == a.element(a.unit_monomial()));

    // negative exponent on a polynomial generator is rejected
    Element a1 = a.element(a.monomial({{"a1bar", 1}}));
    CHECK_THROWS(a.monomial({{"a1bar", -1}}));

    // associativity and commutativity on random elements
    std::mt19937_64 rng(17);
    for (int i = 0; i < 60; ++i) {
        Element x = rand_element(a, rng, 3), y = rand_element(a, rng, 3),
                z = rand_element(a, rng, 2);
        CHECK(a.multiply(x, y) == a.multiply(y, x));
        CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
        CHECK(a.multiply(x, a.element(a.unit_monomial())) == x);
    }

    // annihilator rule: anything containing a_sigma is killed by 2
    for (int i = 0; i < 40; ++i) {
        Element x = rand_element(a, rng, 2);
        Element with_as = a.multiply(x, as);
        CHECK(a.scale(2, with_as).is_zero());
    }
    (void)a1;
}

TEST_CASE("localization")
{
    MonomialAlgebra a = e2_algebra();
    MonomialAlgebra l1 = a.localize("a1bar");
    CHECK(l1.gen("a1bar").invertible);
    MonomialAlgebra l1twice = l1.localize("a1bar");
    CHECK(l1twice.gen("a1bar").invertible);
    CHECK(l1twice.gens().size() == l1.gens().size());
    CHECK_THROWS(a.localize("nope"));
    CHECK_THROWS(a.localize("a_sigma"));  // torsion generator
}

TEST_CASE("degree zero subrings")
{
    // underlying grading of tmf13[a1^-1]: polynomial on a3 a1^-3
    std::vector<Generator> under = {{"a1", Degree{2, 0}, 0, 0, true},
                                    {"a3", Degree{6, 0}, 0, 0, false}};
    SubringPresentation p = degree_zero_subring(MonomialAlgebra(under),
                                                GradingKind::UnderlyingDegree);
    REQUIRE(p.kind == SubringPresentation::Kind::Polynomial);
    REQUIRE(p.generators.size() == 1);
    CHECK(p.generators[0].exps.at("a1") == -3);
    CHECK(p.generators[0].exps.at("a3") == 1);

    // fixed degree zero of the double localization: Laurent on a1bar^3/a3bar
    Scenario both = build_scenario("tmf13_a1a3inv");
    SubringPresentation q = degree_zero_subring(both.algebra);
    REQUIRE(q.kind == SubringPresentation::Kind::Laurent);
    REQUIRE(q.generators.size() == 1);
    int ga1 = q.generators[0].exps.at("a1bar");
    int ga3 = q.generators[0].exps.at("a3bar");
    CHECK(std::abs(ga1) == 3);
    CHECK(std::abs(ga3) == 1);
    CHECK(ga1 == -3 * ga3);

    // plain tmf13: constants only
    SubringPresentation c = degree_zero_subring(build_scenario("tmf13").algebra);
    CHECK(c.kind == SubringPresentation::Kind::Constants);
    CHECK(c.generators.empty());
}

TEST_CASE("unit groups")
{
    // Z[1/3][x]: only constant units
    SubringPresentation poly;
    poly.kind = SubringPresentation::Kind::Polynomial;
    poly.generators.push_back({"x", {{"x", 1}}, false});
    FGAbelianGroup u1 = unit_group(poly);
    CHECK(u1.free_rank == 1);
    CHECK(u1.invariant_factors == std::vector<long long>{2});

    // Z[1/3][x^(+-1)]: 3, x and -1
    SubringPresentation laurent;
    laurent.kind = SubringPresentation::Kind::Laurent;
    laurent.generators.push_back({"x", {{"x", 1}}, true});
    FGAbelianGroup u2 = unit_group(laurent);
    CHECK(u2.free_rank == 2);
    CHECK(u2.invariant_factors == std::vector<long long>{2});
    CHECK(u2.generator_labels == std::vector<std::string>{"3", "x", "-1"});

    // the ground ring itself
    SubringPresentation consts;
    consts.kind = SubringPresentation::Kind::Constants;
    FGAbelianGroup u3 = unit_group(consts);
    CHECK(u3.free_rank == 1);
    CHECK(u3.invariant_factors == std::vector<long long>{2});
}

TEST_CASE("named expansions")
{
    MonomialAlgebra a = e2_algebra();
    Element delta = expand_named(a, "Delta");
    Element want = a.add(a.element(a.monomial({{"a1bar", 3}, {"a3bar", 3}})),
                         a.element(a.monomial({{"a3bar", 4}}), -27));
    CHECK(delta == want);
    for (const auto& [m, c] : delta.terms)
        CHECK(a.degree_of(m) == regular_multiple(12));

    Element c4 = expand_named(a, "c4");
    Element want_c4 = a.add(a.element(a.monomial({{"a1bar", 4}})),
                            a.element(a.monomial({{"a1bar", 1}, {"a3bar", 1}}), -24));
    CHECK(c4 == want_c4);

    // the factor a1^3 - 27 a3 passes the linear-in-a3 criterion
    Element q = a.add(a.element(a.monomial({{"a1bar", 3}})),
                      a.element(a.monomial({{"a3bar", 1}}), -27));
    CHECK(irreducible_linear_in(a, q, "a3bar"));

    // c4^6 = (c4^3)^2 and Delta^2 j^2 = c4^6 where j Delta = c4^3
    Element c4cubed = a.multiply(a.multiply(c4, c4), c4);
    CHECK(a.multiply(c4cubed, c4cubed) ==
          a.multiply(a.multiply(c4, c4), a.multiply(a.multiply(c4, c4), a.multiply(c4, c4))));
}

TEST_CASE("equality up to powers of three")
{
    MonomialAlgebra a = e2_algebra();
    Element x = a.element(a.monomial({{"a1bar", 2}}), 2);
    Element y = a.element(a.monomial({{"a1bar", 2}}), 18);
    CHECK(a.associate(x, y));
    Element z = a.element(a.monomial({{"a1bar", 2}}), 4);
    CHECK(!a.associate(x, z));
    CHECK(!a.associate(x, a.scale(-1, x)));
}
