#include "roc2/fgab.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace roc2 {

long long FGAbelianGroup::order() const
{
    if (free_rank > 0)
        return 0;
    long long n = 1;
    for (long long f : invariant_factors)
        n *= f;
    return n;
}

std::string FGAbelianGroup::str() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z[1/3]";
        if (free_rank > 1)
            os << "^" << free_rank;
        first = false;
    }
    for (long long f : invariant_factors) {
        if (!first)
            os << " + ";
        os << "Z/" << f;
        first = false;
    }
    return os.str();
}

long long strip_threes(long long n)
{
    if (n == 0)
        return 0;
    if (n < 0)
        n = -n;
    while (n % 3 == 0)
        n /= 3;
    return n;
}

FGAbelianGroup fg_from_diagonal(const std::vector<long long>& diag, long long extra_free,
                                bool over_z_one_third)
{
    FGAbelianGroup g;
    g.free_rank = extra_free;
    std::vector<long long> torsion;
    for (long long d : diag) {
        if (d == 0) {
            ++g.free_rank;
            continue;
        }
        long long q = over_z_one_third ? strip_threes(d) : std::llabs(d);
        if (q > 1)
            torsion.push_back(q);
    }
    // restore the divisibility chain; stripping unit factors can break ordering
    std::sort(torsion.begin(), torsion.end());
    for (size_t i = 0; i + 1 < torsion.size(); ++i) {
        if (torsion[i + 1] % torsion[i] != 0) {
            long long a = torsion[i], b = torsion[i + 1];
            long long g2 = std::gcd(a, b);
            torsion[i] = g2;
            torsion[i + 1] = a / g2 * b;
        }
    }
    for (long long t : torsion)
        if (t > 1)
            g.invariant_factors.push_back(t);
    return g;
}

FGAbelianGroup fg_tensor_cyclic(const FGAbelianGroup& g, long long m)
{
    if (m < 2)
        throw std::invalid_argument("fg_tensor_cyclic: modulus must be >= 2");
    std::vector<long long> diag;
    for (long long i = 0; i < g.free_rank; ++i)
        diag.push_back(m);
    for (long long f : g.invariant_factors)
        diag.push_back(std::gcd(f, m));
    return fg_from_diagonal(diag);
}

}  // namespace roc2
