#include "roc2/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace roc2 {

namespace {

void check_entry(long long x)
{
    // integer arithmetic here is exact; bail out loudly rather than wrap
    if (x > (1LL << 62) || x < -(1LL << 62))
        throw std::overflow_error("integer matrix entry overflow");
}

long long ext_gcd(long long a, long long b, long long& x, long long& y)
{
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::llabs(a);
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

void row_axpy(IntMat& m, size_t dst, size_t src, long long c)
{
    for (size_t j = 0; j < m[dst].size(); ++j) {
        m[dst][j] += c * m[src][j];
        check_entry(m[dst][j]);
    }
}

void col_axpy(IntMat& m, size_t dst, size_t src, long long c)
{
    for (size_t i = 0; i < m.size(); ++i) {
        m[i][dst] += c * m[i][src];
        check_entry(m[i][dst]);
    }
}

}  // namespace

IntMat mat_mul(const IntMat& x, const IntMat& y)
{
    size_t n = x.size(), k = y.size(), m = k ? y[0].size() : 0;
    std::vector<std::vector<__int128>> acc(n, std::vector<__int128>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (x[i][l] == 0)
                continue;
            for (size_t j = 0; j < m; ++j)
                acc[i][j] += (__int128)x[i][l] * y[l][j];
        }
    IntMat z(n, IntVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            if (acc[i][j] > (__int128)(1LL << 62) || acc[i][j] < -(__int128)(1LL << 62))
                throw std::overflow_error("matrix product entry overflow");
            z[i][j] = (long long)acc[i][j];
        }
    return z;
}

IntVec mat_apply(const IntMat& m, const IntVec& v)
{
    IntVec out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            out[i] += m[i][j] * v[j];
    return out;
}

long long mat_det(IntMat mat)
{
    size_t n = mat.size();
    if (n == 0)
        return 1;
    if (mat[0].size() != n)
        throw std::invalid_argument("mat_det: matrix not square");
    // Bareiss fraction-free elimination in 128-bit arithmetic
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m[i][j] = mat[i][j];
    __int128 prev = 1;
    long long sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0)
                ++piv;
            if (piv == n)
                return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    __int128 det = m[n - 1][n - 1];
    if (det > (__int128)(1LL << 62) || det < -(__int128)(1LL << 62))
        throw std::overflow_error("determinant overflow");
    return sign * (long long)det;
}

SmithResult smith_normal_form(const IntMat& mat)
{
    size_t n = mat.size();
    size_t m = n ? mat[0].size() : 0;
    // intermediate entries of a naive reduction can far exceed the final
    // ones; compute in 128-bit and convert at the end
    using Wide = __int128;
    using WMat = std::vector<std::vector<Wide>>;
    auto wident = [](size_t k) {
        WMat w(k, std::vector<Wide>(k, 0));
        for (size_t i = 0; i < k; ++i)
            w[i][i] = 1;
        return w;
    };
    WMat d(n, std::vector<Wide>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j)
            d[i][j] = mat[i][j];
    WMat u = wident(n), v = wident(m);
    auto wabs = [](Wide x) { return x < 0 ? -x : x; };
    const Wide kWideMax = (Wide)1 << 120;
    auto wcheck = [&](Wide x) {
        if (x > kWideMax || x < -kWideMax)
            throw std::overflow_error("smith normal form: entry overflow");
    };

    // phase 1: diagonalize with least-absolute-value pivoting
    size_t t = 0;
    while (t < n && t < m) {
        size_t pi = t, pj = t;
        Wide best = 0;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < m; ++j)
                if (d[i][j] != 0 && (best == 0 || wabs(d[i][j]) < best)) {
                    best = wabs(d[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0)
            break;
        std::swap(d[t], d[pi]);
        std::swap(u[t], u[pi]);
        for (size_t i = 0; i < n; ++i)
            std::swap(d[i][t], d[i][pj]);
        for (size_t i = 0; i < m; ++i)
            std::swap(v[i][t], v[i][pj]);

        bool clean = true;
        for (size_t i = t + 1; i < n; ++i) {
            Wide q = d[i][t] / d[t][t];
            if (q != 0) {
                for (size_t j = 0; j < m; ++j) {
                    d[i][j] -= q * d[t][j];
                    wcheck(d[i][j]);
                }
                for (size_t j = 0; j < n; ++j) {
                    u[i][j] -= q * u[t][j];
                    wcheck(u[i][j]);
                }
            }
            if (d[i][t] != 0)
                clean = false;
        }
        for (size_t j = t + 1; j < m; ++j) {
            Wide q = d[t][j] / d[t][t];
            if (q != 0) {
                for (size_t i = 0; i < n; ++i) {
                    d[i][j] -= q * d[i][t];
                    wcheck(d[i][j]);
                }
                for (size_t i = 0; i < m; ++i) {
                    v[i][j] -= q * v[i][t];
                    wcheck(v[i][j]);
                }
            }
            if (d[t][j] != 0)
                clean = false;
        }
        if (!clean)
            continue;  // remainders are smaller pivot candidates
        if (d[t][t] < 0) {
            for (size_t j = 0; j < m; ++j)
                d[t][j] = -d[t][j];
            for (size_t j = 0; j < n; ++j)
                u[t][j] = -u[t][j];
        }
        ++t;
    }

    // phase 2: sort the diagonal, then repair divisibility with 2x2 gcd
    // blocks: [x y; -b/g a/g] diag(a,b) [1 -yb/g; 1 xa/g] = diag(g, ab/g)
    for (size_t i = 0; i < t; ++i)
        for (size_t j = i + 1; j < t; ++j)
            if (wabs(d[j][j]) < wabs(d[i][i])) {
                std::swap(d[i][i], d[j][j]);
                std::swap(u[i], u[j]);
                for (size_t k = 0; k < m; ++k)
                    std::swap(v[k][i], v[k][j]);
            }
    auto wgcd = [](Wide a, Wide b, Wide& x, Wide& y) {
        Wide old_r = a < 0 ? -a : a, r = b < 0 ? -b : b;
        Wide old_s = 1, s = 0, old_tc = 0, tc = 1;
        while (r != 0) {
            Wide q = old_r / r;
            Wide tmp = old_r - q * r;
            old_r = r;
            r = tmp;
            tmp = old_s - q * s;
            old_s = s;
            s = tmp;
            tmp = old_tc - q * tc;
            old_tc = tc;
            tc = tmp;
        }
        x = a < 0 ? -old_s : old_s;
        y = b < 0 ? -old_tc : old_tc;
        return old_r;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < t; ++i) {
            Wide a = d[i][i], b = d[i + 1][i + 1];
            if (a != 0 && b % a == 0)
                continue;
            changed = true;
            Wide x, y;
            Wide g = wgcd(a, b, x, y);
            Wide l = a / g * b;
            for (size_t j = 0; j < n; ++j) {
                Wide r0 = u[i][j], r1 = u[i + 1][j];
                u[i][j] = x * r0 + y * r1;
                u[i + 1][j] = -(b / g) * r0 + (a / g) * r1;
                wcheck(u[i][j]);
                wcheck(u[i + 1][j]);
            }
            for (size_t j = 0; j < m; ++j) {
                Wide c0 = v[j][i], c1 = v[j][i + 1];
                v[j][i] = c0 + c1;
                v[j][i + 1] = -(y * b / g) * c0 + (x * a / g) * c1;
                wcheck(v[j][i]);
                wcheck(v[j][i + 1]);
            }
            d[i][i] = g;
            d[i + 1][i + 1] = l < 0 ? -l : l;
        }
    }

    SmithResult r;
    r.rank = t;
    auto narrow = [](const WMat& w) {
        IntMat out(w.size(), IntVec(w.empty() ? 0 : w[0].size(), 0));
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t j = 0; j < w[i].size(); ++j) {
                if (w[i][j] > (Wide)(1LL << 62) || w[i][j] < -(Wide)(1LL << 62))
                    throw std::overflow_error("smith normal form: result exceeds 64 bits");
                out[i][j] = (long long)w[i][j];
            }
        return out;
    };
    r.d = narrow(d);
    r.u = narrow(u);
    r.v = narrow(v);
    return r;
}

IntVec SmithResult::diagonal() const
{
    size_t n = d.size(), m = n ? d[0].size() : 0;
    IntVec out(std::min(n, m), 0);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = d[i][i];
    return out;
}

std::vector<IntVec> kernel_basis(const IntMat& m, size_t cols)
{
    if (m.empty()) {
        std::vector<IntVec> full;
        for (size_t j = 0; j < cols; ++j) {
            IntVec v(cols, 0);
            v[j] = 1;
            full.push_back(std::move(v));
        }
        return full;
    }
    SmithResult s = smith_normal_form(m);
    std::vector<IntVec> ker;
    for (size_t j = s.rank; j < cols; ++j) {
        IntVec v(cols);
        for (size_t i = 0; i < cols; ++i)
            v[i] = s.v[i][j];
        ker.push_back(std::move(v));
    }
    return ker;
}

std::optional<IntVec> solve_integer(const IntMat& m, const IntVec& t)
{
    size_t n = m.size();
    size_t cols = n ? m[0].size() : 0;
    SmithResult s = smith_normal_form(m);
    IntVec rhs = mat_apply(s.u, t);
    IntVec y(cols, 0);
    for (size_t i = 0; i < n; ++i) {
        long long di = (i < cols) ? s.d[i][i] : 0;
        if (di == 0) {
            if (rhs[i] != 0)
                return std::nullopt;
        }
        else {
            if (rhs[i] % di != 0)
                return std::nullopt;
            y[i] = rhs[i] / di;
        }
    }
    return mat_apply(s.v, y);
}

}  // namespace roc2
