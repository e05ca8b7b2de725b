#pragma once

#include <optional>
#include <vector>

namespace roc2 {

using IntMat = std::vector<std::vector<long long>>;
using IntVec = std::vector<long long>;

inline IntMat identity_matrix(size_t n)
{
    IntMat m(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& x, const IntMat& y);
IntVec mat_apply(const IntMat& m, const IntVec& v);
long long mat_det(IntMat m);  // fraction-free elimination

struct SmithResult {
    IntMat d;         // diagonal, d[i][i] | d[i+1][i+1]
    IntMat u, v;      // unimodular, u*m*v = d
    size_t rank = 0;  // number of nonzero diagonal entries
    IntVec diagonal() const;
};

/* Smith normal form over Z with recorded transforms. */
SmithResult smith_normal_form(const IntMat& m);

/* Basis of the integer kernel {x in Z^cols : m x = 0}. */
std::vector<IntVec> kernel_basis(const IntMat& m, size_t cols);

/* One integer solution of m x = t, if any. */
std::optional<IntVec> solve_integer(const IntMat& m, const IntVec& t);

}  // namespace roc2
