#include "roc2/anderson.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <tuple>

namespace roc2 {

PairingMatrix serre_pairing(long long k)
{
    if (k < 0)
        throw std::invalid_argument("serre_pairing: k must be >= 0");
    PairingMatrix m;
    m.k = k;
    for (long long j = 0; 3 * j <= k; ++j)
        m.rows.push_back({k - 3 * j, j});
    std::sort(m.rows.begin(), m.rows.end());
    for (long long j = 1; 3 * j <= k + 3; ++j)
        m.cols.push_back({k + 4 - 3 * j, j});
    std::sort(m.cols.begin(), m.cols.end());
    m.entries.assign(m.rows.size(), IntVec(m.cols.size(), 0));
    for (size_t r = 0; r < m.rows.size(); ++r)
        for (size_t c = 0; c < m.cols.size(); ++c) {
            // a1^i a3^j * 1/(a1^i' a3^j') lands on D iff i' = i+1, j' = j+1
            if (m.cols[c].first == m.rows[r].first + 1 &&
                m.cols[c].second == m.rows[r].second + 1)
                m.entries[r][c] = 1;
        }
    return m;
}

bool certify_perfect(const PairingMatrix& m)
{
    if (m.rows.size() != m.cols.size())
        throw std::runtime_error("serre pairing matrix is not square; basis enumeration bug");
    if (m.rows.empty())
        return true;
    long long det = mat_det(m.entries);
    return det != 0 && strip_threes(det) == 1;
}

DualCellReport dual_cell_check(const std::vector<SliceCell>& cells, Degree shift)
{
    DualCellReport rep;
    // HZ* = S^{4-2rho} ^ HZ turns the dual of an HZ-cell back into an HZ-cell
    Degree hz_star_shift = Degree{4, 0} - 2 * deg_rho();
    std::map<std::tuple<int, long long, long long>, int> index;
    auto key = [](const SliceCell& c) {
        return std::make_tuple((int)(c.kind == SliceCell::Kind::Positive), c.g, c.h);
    };
    for (const auto& c : cells)
        ++index[key(c)];
    for (const auto& c : cells) {
        SliceCell dual = c;
        dual.kind = c.kind == SliceCell::Kind::Positive ? SliceCell::Kind::Negative
                                                        : SliceCell::Kind::Positive;
        // duality sends dimension V to -V - shift (as an HZ*-cell)
        Degree expect = -c.dimension() - shift + hz_star_shift;
        if (dual.dimension() != expect || !index.count(key(dual))) {
            rep.unmatched.push_back(c);
            continue;
        }
        if (c.kind == SliceCell::Kind::Positive)
            ++rep.matched_pairs;
    }
    rep.pass = rep.unmatched.empty();
    return rep;
}

Report check_anderson(long long k_max, long long stem_abs_max, long long cell_index_max)
{
    Report rep;
    bool all_perfect = true, all_perm = true;
    std::string first;
    for (long long k = 0; k <= k_max; ++k) {
        PairingMatrix m = serre_pairing(k);
        if (!certify_perfect(m)) {
            all_perfect = false;
            if (first.empty())
                first = "k=" + std::to_string(k);
        }
        // the pairing should be a permutation matrix
        for (const auto& row : m.entries) {
            long long s = 0;
            for (long long e : row)
                s += std::llabs(e);
            if (s != 1)
                all_perm = false;
        }
        // consistency with the compactified homotopy
        if ((long long)m.rows.size() != pi_compactified(2 * k).free_rank) {
            all_perfect = false;
            if (first.empty())
                first = "row count at k=" + std::to_string(k);
        }
    }
    rep.add("serre_pairing(k) unimodular for k <= " + std::to_string(k_max), all_perfect, first);
    rep.add("pairing matrices are permutations", all_perm);

    auto cells = slice_cells(-cell_index_max - 9, cell_index_max);
    DualCellReport dc = dual_cell_check(cells);
    rep.add("dual cell bijection on |index| <= " + std::to_string(cell_index_max), dc.pass,
            "matched pairs: " + std::to_string(dc.matched_pairs) +
                ", unmatched: " + std::to_string(dc.unmatched.size()));

    bool uc_ok = true;
    std::string uc_first;
    for (long long n = -stem_abs_max; n <= stem_abs_max; ++n) {
        if (pi_compactified(n).free_rank != pi_compactified(-9 - n).free_rank) {
            uc_ok = false;
            if (uc_first.empty())
                uc_first = "n=" + std::to_string(n);
        }
    }
    rep.add("universal coefficients: rank pi_n = rank pi_{-9-n}", uc_ok, uc_first);
    return rep;
}

}  // namespace roc2
