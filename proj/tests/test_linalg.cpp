#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "roc2/fgab.hpp"
#include "roc2/linalg.hpp"

using namespace roc2;

namespace {

/* independent oracle: rank over Q by fraction-free elimination and the
 * lattice index by accumulating gcds of minors, for small matrices */
long long rank_oracle(IntMat m)
{
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && m[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[rank], m[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c] == 0)
                continue;
            long long a = m[rank][c], b = m[i][c];
            long long g = std::gcd(a, b);
            long long fa = b / g, fb = a / g;
            for (size_t j = 0; j < cols; ++j)
                m[i][j] = m[i][j] * fb - m[rank][j] * fa;
        }
        ++rank;
    }
    return (long long)rank;
}

}  // namespace

TEST_CASE("smith normal form on the picard presentations")
{
    SmithResult s = smith_normal_form({{8, -8}});
    CHECK(s.rank == 1);
    CHECK(s.d[0][0] == 8);
    // quotient of Z^2 by (8,-8): Z + Z/8
    FGAbelianGroup g = fg_from_diagonal({8}, 1);
    CHECK(g.free_rank == 1);
    CHECK(g.invariant_factors == std::vector<long long>{8});

    SmithResult s2 = smith_normal_form({{8, 3}, {-8, 3}});
    CHECK(s2.rank == 2);
    CHECK(s2.d[0][0] * s2.d[1][1] == 48);
    FGAbelianGroup g2 = fg_from_diagonal(s2.diagonal(), 0, false);
    CHECK(g2.free_rank == 0);
    CHECK(g2.invariant_factors == std::vector<long long>{48});

    SmithResult s3 = smith_normal_form(identity_matrix(2));
    CHECK(fg_from_diagonal(s3.diagonal()).is_zero());
}

TEST_CASE("smith transforms multiply out on random matrices")
{
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> dim(1, 8), ent(-3, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t r = dim(rng), c = dim(rng);
        IntMat m(r, IntVec(c, 0));
        for (auto& row : m)
            for (auto& e : row)
                e = ent(rng);
        SmithResult s = smith_normal_form(m);
        CHECK(mat_mul(mat_mul(s.u, m), s.v) == s.d);
        CHECK(std::abs(mat_det(s.u)) == 1);
        CHECK(std::abs(mat_det(s.v)) == 1);
        IntVec diag = s.diagonal();
        for (size_t i = 0; i + 1 < diag.size(); ++i)
            if (diag[i] != 0 && diag[i + 1] != 0)
                CHECK(diag[i + 1] % diag[i] == 0);
        CHECK((long long)s.rank == rank_oracle(m));
    }
}

TEST_CASE("kernel and integer solve")
{
    // kernel of the tmf13 degree map: a1bar^-3 a3bar direction
    IntMat deg = {{0, 2, 1, 3}, {-1, -2, 1, 3}, {1, 0, 0, 0}};
    auto ker = kernel_basis(deg, 4);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == 0);
    CHECK(ker[0][1] == 0);
    CHECK(std::abs(ker[0][2]) == 3);
    CHECK(ker[0][2] == -3 * ker[0][3]);

    auto sol = solve_integer({{2, 0}, {0, 3}}, {4, 9});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 3);
    CHECK(!solve_integer({{2}}, {3}).has_value());

    // random consistency: m * kernel vector = 0, m * solution = rhs
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dim(1, 6), ent(-6, 6);
    for (int trial = 0; trial < 300; ++trial) {
        size_t r = dim(rng), c = dim(rng);
        IntMat m(r, IntVec(c, 0));
        for (auto& row : m)
            for (auto& e : row)
                e = ent(rng);
        for (const auto& v : kernel_basis(m, c))
            CHECK(mat_apply(m, v) == IntVec(r, 0));
        IntVec x(c);
        for (auto& e : x)
            e = ent(rng);
        IntVec rhs = mat_apply(m, x);
        auto sol2 = solve_integer(m, rhs);
        REQUIRE(sol2.has_value());
        CHECK(mat_apply(m, *sol2) == rhs);
    }
}

TEST_CASE("three-power units are stripped")
{
    CHECK(strip_threes(27) == 1);
    CHECK(strip_threes(6) == 2);
    CHECK(strip_threes(0) == 0);
    FGAbelianGroup g = fg_from_diagonal({3, 6, 9, 0});
    CHECK(g.free_rank == 1);
    CHECK(g.invariant_factors == std::vector<long long>{2});
}
