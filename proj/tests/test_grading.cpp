#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "roc2/grading.hpp"

using namespace roc2;

TEST_CASE("regular multiples")
{
    CHECK(regular_multiple(0) == Degree{0, 0});
    CHECK(regular_multiple(3) == Degree{3, 3});
    CHECK(regular_multiple(-4) == Degree{-4, -4});
    // additivity
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-50, 50);
    for (int i = 0; i < 200; ++i) {
        long long x = d(rng), y = d(rng);
        CHECK(regular_multiple(x + y) == regular_multiple(x) + regular_multiple(y));
    }
}

TEST_CASE("underlying dimension")
{
    CHECK(deg_rho().underlying_dimension() == 2);
    CHECK(deg_sigma().underlying_dimension() == 1);
    CHECK((Degree{2, -2}).underlying_dimension() == 0);
}

TEST_CASE("tridegree to bidegree")
{
    CHECK(tri_to_bidegree(0, 0, 0) == BiDegree{Degree{0, 0}, 0});
    // u_2sigma sits in (2 - 2 sigma, 0)
    CHECK(tri_to_bidegree(-2, 0, 0) == BiDegree{Degree{2, -2}, 0});
    // a_sigma sits in (-sigma, 1)
    CHECK(tri_to_bidegree(-1, 1, -1) == BiDegree{Degree{0, -1}, 1});
}

TEST_CASE("differential targets")
{
    // d3 from u lands on a_sigma^3 a1bar
    CHECK(differential_target(BiDegree{Degree{2, -2}, 0}, 3) == BiDegree{Degree{1, -2}, 3});
    // d7 from u^2 lands on a_sigma^7 a3bar
    CHECK(differential_target(BiDegree{Degree{4, -4}, 0}, 7) == BiDegree{Degree{3, -4}, 7});
    CHECK(differential_target(BiDegree{Degree{0, 0}, 0}, 2) == BiDegree{Degree{-1, 0}, 2});
}

TEST_CASE("double differential drops two trivial units")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-20, 20);
    std::uniform_int_distribution<long long> r(2, 15);
    for (int i = 0; i < 200; ++i) {
        BiDegree src{Degree{d(rng), d(rng)}, r(rng)};
        long long r1 = r(rng), r2 = r(rng);
        BiDegree twice = differential_target(differential_target(src, r1), r2);
        CHECK(twice.degree.a == src.degree.a - 2);
        CHECK(twice.degree.b == src.degree.b);
        CHECK(twice.filtration == src.filtration + r1 + r2);
    }
}
