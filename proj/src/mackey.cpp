#include "roc2/mackey.hpp"

#include <stdexcept>

namespace roc2 {

namespace {

size_t gen_count(const FGAbelianGroup& g)
{
    return (size_t)g.free_rank + g.invariant_factors.size();
}

long long gen_order(const FGAbelianGroup& g, size_t i)
{
    if (i < (size_t)g.free_rank)
        return 0;
    return g.invariant_factors[i - g.free_rank];
}

IntMat scalar_matrix(size_t rows_of, size_t cols_of, long long c)
{
    IntMat m(rows_of, IntVec(cols_of, 0));
    for (size_t i = 0; i < rows_of && i < cols_of; ++i)
        m[i][i] = c;
    return m;
}

/* multiply with explicit shapes so zero-dimensional levels keep their
 * column counts */
IntMat mul_shaped(const IntMat& x, size_t xr, size_t xc, const IntMat& y, size_t yc)
{
    IntMat z(xr, IntVec(yc, 0));
    for (size_t i = 0; i < xr; ++i)
        for (size_t l = 0; l < xc; ++l)
            for (size_t j = 0; j < yc; ++j)
                z[i][j] += x[i][l] * y[l][j];
    return z;
}

bool maps_equal(const IntMat& x, const IntMat& y, const FGAbelianGroup& target, size_t rows,
                size_t cols)
{
    for (size_t i = 0; i < rows; ++i) {
        long long o = gen_order(target, i);
        for (size_t j = 0; j < cols; ++j) {
            long long xv = i < x.size() && j < x[i].size() ? x[i][j] : 0;
            long long yv = i < y.size() && j < y[i].size() ? y[i][j] : 0;
            long long d = xv - yv;
            if (o == 0 ? d != 0 : (d % o + o) % o != 0)
                return false;
        }
    }
    return true;
}

}  // namespace

bool MackeyFunctor::axioms_hold() const
{
    size_t nf = gen_count(fixed), nu = gen_count(underlying);
    if (res.size() != nu || tr.size() != nf || weyl.size() != nu)
        return false;
    IntMat id_u = identity_matrix(nu);
    if (!maps_equal(mul_shaped(weyl, nu, nu, weyl, nu), id_u, underlying, nu, nu))
        return false;
    if (!maps_equal(mul_shaped(weyl, nu, nu, res, nf), res, underlying, nu, nf))
        return false;
    if (!maps_equal(mul_shaped(tr, nf, nu, weyl, nu), tr, fixed, nf, nu))
        return false;
    IntMat one_plus_weyl = id_u;
    for (size_t i = 0; i < nu; ++i)
        for (size_t j = 0; j < nu; ++j)
            one_plus_weyl[i][j] += weyl[i][j];
    return maps_equal(mul_shaped(res, nu, nf, tr, nu), one_plus_weyl, underlying, nu, nu);
}

MackeyName mackey_name_from_string(const std::string& s)
{
    if (s == "Z")
        return MackeyName::Z;
    if (s == "Zminus" || s == "Z-")
        return MackeyName::Zminus;
    if (s == "Zstar" || s == "Z*")
        return MackeyName::Zstar;
    if (s == "G")
        return MackeyName::G;
    throw std::invalid_argument("unknown Mackey functor name: " + s);
}

std::string to_string(MackeyName n)
{
    switch (n) {
        case MackeyName::Z: return "Z";
        case MackeyName::Zminus: return "Z-";
        case MackeyName::Zstar: return "Z*";
        case MackeyName::G: return "G";
    }
    return "?";
}

MackeyFunctor named_mackey(MackeyName name, const FGAbelianGroup& scalars)
{
    for (long long f : scalars.invariant_factors)
        if (f % 2 == 0)
            throw std::invalid_argument("named_mackey requires 2-torsion-free scalars");
    size_t n = gen_count(scalars);
    MackeyFunctor m;
    m.name = to_string(name);
    switch (name) {
        case MackeyName::Z:
            m.fixed = scalars;
            m.underlying = scalars;
            m.res = scalar_matrix(n, n, 1);
            m.tr = scalar_matrix(n, n, 2);
            m.weyl = scalar_matrix(n, n, 1);
            break;
        case MackeyName::Zstar:
            m.fixed = scalars;
            m.underlying = scalars;
            m.res = scalar_matrix(n, n, 2);
            m.tr = scalar_matrix(n, n, 1);
            m.weyl = scalar_matrix(n, n, 1);
            break;
        case MackeyName::Zminus:
            m.fixed = fg_zero();
            m.underlying = scalars;
            m.res = IntMat(n, IntVec(0));
            m.tr = IntMat();
            m.weyl = scalar_matrix(n, n, -1);
            break;
        case MackeyName::G:
            m.fixed = fg_tensor_cyclic(scalars, 2);
            m.underlying = fg_zero();
            m.res = IntMat();
            m.tr = IntMat(gen_count(m.fixed), IntVec(0));
            m.weyl = IntMat();
            break;
    }
    return m;
}

FGAbelianGroup bredon_homology_sigma_sphere(long long k, long long s)
{
    if (k < 0)
        throw std::invalid_argument("bredon_homology_sigma_sphere: k must be >= 0");
    if (s == 0 && (2 * k - s) % 4 == 0)
        return fg_free(1);
    if (s > 0 && s <= 2 * k - s && ((2 * k - s) - s) % 4 == 0)
        return fg_cyclic(2);
    return fg_zero();
}

FGAbelianGroup bredon_cohomology_sigma_sphere(long long d, long long k)
{
    if (d < 0)
        throw std::invalid_argument("bredon_cohomology_sigma_sphere: d must be >= 0");
    if (d % 2 == 0 && k == d)
        return fg_free(1);
    if (k % 2 != 0 && k > 1 && k <= d)
        return fg_cyclic(2);
    return fg_zero();
}

MackeyFunctor mackey_homology_sigma_sphere(long long k, long long s, const FGAbelianGroup& scalars)
{
    FGAbelianGroup g = bredon_homology_sigma_sphere(k, s);
    if (g.is_zero()) {
        MackeyFunctor z;
        z.name = "0";
        return z;
    }
    return named_mackey(g.free_rank > 0 ? MackeyName::Z : MackeyName::G, scalars);
}

MackeyFunctor mackey_cohomology_sigma_sphere(long long d, long long k,
                                             const FGAbelianGroup& scalars)
{
    FGAbelianGroup g = bredon_cohomology_sigma_sphere(d, k);
    if (g.is_zero()) {
        MackeyFunctor z;
        z.name = "0";
        return z;
    }
    return named_mackey(g.free_rank > 0 ? MackeyName::Zstar : MackeyName::G, scalars);
}

MackeyFunctor homotopy_near_rho(const std::map<long long, FGAbelianGroup>& coefficients,
                                long long k, int j)
{
    auto pi = [&](long long n) -> FGAbelianGroup {
        auto it = coefficients.find(n);
        return it == coefficients.end() ? fg_zero() : it->second;
    };
    auto check = [&](const FGAbelianGroup& g) {
        for (long long f : g.invariant_factors)
            if (f % 2 == 0)
                throw std::invalid_argument("homotopy_near_rho: coefficients have 2-torsion");
        return g;
    };
    MackeyFunctor zero;
    zero.name = "0";
    switch (j) {
        case 1: {
            FGAbelianGroup g = check(pi(2 * k + 2));
            return g.is_zero() ? zero : named_mackey(MackeyName::G, g);
        }
        case 0: {
            FGAbelianGroup g = check(pi(2 * k));
            return g.is_zero() ? zero : named_mackey(MackeyName::Z, g);
        }
        case -1: return zero;
        case -2: {
            FGAbelianGroup g = check(pi(2 * k - 2));
            return g.is_zero() ? zero : named_mackey(MackeyName::Zminus, g);
        }
    }
    throw std::invalid_argument("homotopy_near_rho: j must be in {-2,-1,0,1}");
}

}  // namespace roc2
