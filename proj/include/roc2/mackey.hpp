#pragma once

#include <map>
#include <string>

#include "roc2/fgab.hpp"
#include "roc2/linalg.hpp"

namespace roc2 {

/* A C2-Mackey functor: values at C2/C2 and C2/e with restriction, transfer
 * and Weyl action. Matrices act on generator coordinates; an entry only
 * matters modulo the order of the target generator. */
struct MackeyFunctor {
    std::string name;
    FGAbelianGroup fixed;       // value at C2/C2
    FGAbelianGroup underlying;  // value at C2/e
    IntMat res;                 // fixed -> underlying
    IntMat tr;                  // underlying -> fixed
    IntMat weyl;                // underlying -> underlying

    bool is_zero() const { return fixed.is_zero() && underlying.is_zero(); }

    /* weyl^2 = 1, weyl res = res, tr weyl = tr, res tr = 1 + weyl. */
    bool axioms_hold() const;
};

enum class MackeyName { Z, Zminus, Zstar, G };

MackeyName mackey_name_from_string(const std::string& s);
std::string to_string(MackeyName n);

/* The named functor tensored levelwise with a 2-torsion-free group. */
MackeyFunctor named_mackey(MackeyName name, const FGAbelianGroup& scalars);

/* H_{k-s}(S^{k sigma}; Z[1/3]) at the fixed level:
 * Z[1/3] when s = 0 and 4 | 2k, Z/2 when 0 < s <= 2k-s and 4 | (2k-2s). */
FGAbelianGroup bredon_homology_sigma_sphere(long long k, long long s);

/* H^k(S^{d sigma}; Z[1/3]) at the fixed level:
 * Z[1/3] when d even and k = d, Z/2 when k odd and 1 < k <= d. */
FGAbelianGroup bredon_cohomology_sigma_sphere(long long d, long long k);

/* Same groups with their Mackey structure: the Z-case of homology is the
 * constant functor, the top cohomology of an even sign sphere is Z*, and
 * every Z/2 is G. */
MackeyFunctor mackey_homology_sigma_sphere(long long k, long long s,
                                           const FGAbelianGroup& scalars);
MackeyFunctor mackey_cohomology_sigma_sphere(long long d, long long k,
                                             const FGAbelianGroup& scalars);

/* Homotopy Mackey functors near multiples of the regular representation of
 * a spectrum with vanishing odd slices and constant even slices:
 * j=1 -> G (x) pi_{2k+2}, j=0 -> Z (x) pi_{2k}, j=-1 -> 0,
 * j=-2 -> Z_- (x) pi_{2k-2}. Coefficients must be 2-torsion-free. */
MackeyFunctor homotopy_near_rho(const std::map<long long, FGAbelianGroup>& coefficients,
                                long long k, int j);

}  // namespace roc2
