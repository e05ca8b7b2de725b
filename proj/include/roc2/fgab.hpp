#pragma once

#include <string>
#include <vector>

namespace roc2 {

/* Finitely generated abelian group over Z[1/3] in invariant factor form.
 * Factors of 3 are units of the ground ring and are never kept. */
struct FGAbelianGroup {
    long long free_rank = 0;
    std::vector<long long> invariant_factors;  // divisibility chain, each >= 2, coprime to 3
    std::vector<std::string> generator_labels;

    bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }
    long long order() const;  // 0 when infinite
    std::string str() const;

    friend bool operator==(const FGAbelianGroup& x, const FGAbelianGroup& y)
    {
        return x.free_rank == y.free_rank && x.invariant_factors == y.invariant_factors;
    }
    friend bool operator!=(const FGAbelianGroup& x, const FGAbelianGroup& y) { return !(x == y); }
};

inline FGAbelianGroup fg_zero() { return {}; }
inline FGAbelianGroup fg_free(long long rank) { return {rank, {}, {}}; }
inline FGAbelianGroup fg_cyclic(long long n)
{
    FGAbelianGroup g;
    if (n == 0)
        g.free_rank = 1;
    else if (n > 1)
        g.invariant_factors = {n};
    return g;
}

/* Strips the 3-part of n; 3 is invertible in the ground ring. */
long long strip_threes(long long n);

/* Builds the group presented by diagonal entries (0 = free generator),
 * discarding trivial factors. Over the ground ring Z[1/3] (the default)
 * 3-parts of the factors are units and disappear too; plain integral
 * quotients such as RO(C2)-quotients keep them. */
FGAbelianGroup fg_from_diagonal(const std::vector<long long>& diag, long long extra_free = 0,
                                bool over_z_one_third = true);

/* Levelwise tensor with a cyclic group Z/m (m >= 2). */
FGAbelianGroup fg_tensor_cyclic(const FGAbelianGroup& g, long long m);

}  // namespace roc2
