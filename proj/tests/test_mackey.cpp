#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roc2/mackey.hpp"

using namespace roc2;

namespace {

/* Independent chain-level oracle for the fixed-level Bredon groups of sign
 * spheres. The equivariant cell structure of S^{k sigma} has one fixed
 * reduced 0-cell and one free cell in each dimension 1..k; at the fixed
 * level the boundary alternates between the transfer (2) and 1 - gamma (0):
 *   Z <-2- Z <-0- Z <-2- Z <-0- ...
 * Cohomology dualizes with the restriction first: 1 -> 0 -> 2 -> 0 -> ... */
FGAbelianGroup homology_oracle(long long k, long long n)
{
    if (n < 0 || n > k)
        return fg_zero();
    auto boundary = [&](long long j) {  // C_j -> C_{j-1}, 1 <= j <= k
        return j % 2 == 1 ? 2 : 0;
    };
    long long out = n >= 1 ? boundary(n) : 0;        // leaves C_n
    long long in = n + 1 <= k ? boundary(n + 1) : 0;  // enters C_n
    if (out != 0)
        return fg_zero();          // injective boundary kills the cycle
    if (in == 0)
        return fg_free(1);
    return fg_cyclic(in);
}

FGAbelianGroup cohomology_oracle(long long d, long long n)
{
    if (n < 0 || n > d)
        return fg_zero();
    auto delta = [&](long long j) {  // C^j -> C^{j+1}, 0 <= j < d
        if (j == 0)
            return 1;
        return j % 2 == 1 ? 0 : 2;
    };
    long long out = n < d ? delta(n) : 0;
    long long in = n >= 1 ? delta(n - 1) : 0;
    if (out == 1)
        return fg_zero();
    if (out != 0)
        return fg_zero();
    if (in == 1)
        return fg_zero();
    if (in == 0)
        return fg_free(1);
    return fg_cyclic(in);
}

}  // namespace

TEST_CASE("named mackey functors satisfy the axioms")
{
    FGAbelianGroup z13 = fg_free(1);
    for (auto name : {MackeyName::Z, MackeyName::Zminus, MackeyName::Zstar, MackeyName::G}) {
        MackeyFunctor m = named_mackey(name, z13);
        CHECK(m.axioms_hold());
    }
    MackeyFunctor z = named_mackey(MackeyName::Z, z13);
    CHECK(z.res[0][0] == 1);
    CHECK(z.tr[0][0] == 2);
    MackeyFunctor zs = named_mackey(MackeyName::Zstar, fg_free(1));
    CHECK(zs.res[0][0] == 2);
    CHECK(zs.tr[0][0] == 1);
    MackeyFunctor g = named_mackey(MackeyName::G, fg_free(1));
    CHECK(g.fixed == fg_cyclic(2));
    CHECK(g.underlying.is_zero());
    MackeyFunctor zm = named_mackey(MackeyName::Zminus, fg_free(1));
    CHECK(zm.fixed.is_zero());
    CHECK(zm.weyl[0][0] == -1);
    CHECK_THROWS(named_mackey(MackeyName::Z, fg_cyclic(2)));
}

TEST_CASE("bredon homology of sign spheres")
{
    CHECK(bredon_homology_sigma_sphere(0, 0) == fg_free(1));
    CHECK(bredon_homology_sigma_sphere(3, 1) == fg_cyclic(2));
    CHECK(bredon_homology_sigma_sphere(1, 0) == fg_zero());
    // top cell: Z[1/3] at s = 0 exactly for even k
    for (long long k = 0; k <= 32; ++k)
        CHECK((bredon_homology_sigma_sphere(k, 0) == fg_free(1)) == (k % 2 == 0));
    // vanishing outside 0 <= s <= 2k
    for (long long k = 0; k <= 16; ++k) {
        CHECK(bredon_homology_sigma_sphere(k, 2 * k + 1).is_zero());
        CHECK(bredon_homology_sigma_sphere(k, 2 * k + 5).is_zero());
    }
    // chain-level oracle, exhaustively: H_{k-s}(S^{k sigma}) for 0<=k<=32
    for (long long k = 0; k <= 32; ++k)
        for (long long s = -2; s <= 2 * k + 2; ++s)
            CHECK(bredon_homology_sigma_sphere(k, s) == homology_oracle(k, k - s));
}

TEST_CASE("bredon cohomology of sign spheres")
{
    CHECK(bredon_cohomology_sigma_sphere(2, 2) == fg_free(1));
    CHECK(bredon_cohomology_sigma_sphere(4, 3) == fg_cyclic(2));
    CHECK(bredon_cohomology_sigma_sphere(4, 1) == fg_zero());
    for (long long d = 0; d <= 32; ++d)
        for (long long n = -2; n <= d + 2; ++n)
            CHECK(bredon_cohomology_sigma_sphere(d, n) == cohomology_oracle(d, n));
}

TEST_CASE("mackey-level sphere groups")
{
    MackeyFunctor top = mackey_cohomology_sigma_sphere(4, 4, fg_free(1));
    CHECK(top.name == "Z*");
    CHECK(top.axioms_hold());
    MackeyFunctor mid = mackey_cohomology_sigma_sphere(4, 3, fg_free(1));
    CHECK(mid.name == "G");
    MackeyFunctor z = mackey_homology_sigma_sphere(0, 0, fg_free(1));
    CHECK(z.name == "Z");
}

TEST_CASE("homotopy near multiples of the regular representation")
{
    std::map<long long, FGAbelianGroup> pi;  // polynomial ring on degrees 2 and 6
    for (long long n = -20; n <= 20; n += 2) {
        long long rank = 0;
        for (long long h = 0; 6 * h <= n; ++h)
            if ((n - 6 * h) % 2 == 0 && n - 6 * h >= 0)
                ++rank;
        if (rank)
            pi[n] = fg_free(rank);
    }

    MackeyFunctor at0 = homotopy_near_rho(pi, 0, 0);
    CHECK(at0.name == "Z");
    CHECK(at0.fixed == fg_free(1));

    CHECK(homotopy_near_rho(pi, 3, -1).is_zero());

    MackeyFunctor below = homotopy_near_rho(pi, 1, -2);
    CHECK(below.name == "Z-");
    CHECK(below.fixed.is_zero());
    CHECK(below.underlying == fg_free(1));

    MackeyFunctor above = homotopy_near_rho(pi, 0, 1);
    CHECK(above.name == "G");
    CHECK(above.fixed == fg_cyclic(2));

    // the hypotheses are preconditions: 2-torsion is rejected
    std::map<long long, FGAbelianGroup> bad = {{0, fg_cyclic(2)}};
    CHECK_THROWS(homotopy_near_rho(bad, 0, 0));
}
