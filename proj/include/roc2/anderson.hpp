#pragma once

#include <vector>

#include "roc2/linalg.hpp"
#include "roc2/slice.hpp"

namespace roc2 {

/* The cup-product pairing H^0(O(k)) x H^1(O(-4-k)) -> H^1(O(-4)) = Z[1/3] D
 * on the weighted projective line with weights 1 and 3; D = 1/(a1 a3).
 * Rows are monomials a1^i a3^j with i + 3j = k; columns are 1/(a1^i' a3^j')
 * with i' + 3j' = k + 4, i', j' >= 1; the entry is the D-coefficient of the
 * product. */
struct PairingMatrix {
    long long k = 0;
    std::vector<std::pair<long long, long long>> rows;  // (i, j)
    std::vector<std::pair<long long, long long>> cols;  // (i', j')
    IntMat entries;
};

PairingMatrix serre_pairing(long long k);

/* Unimodular over Z[1/3]: determinant a sign times a power of 3. Throws on
 * a non-square matrix, which would mean the bases are enumerated wrong. */
bool certify_perfect(const PairingMatrix& m);

/* The combinatorial Anderson self-duality of the slice cells: the positive
 * cell over P pairs with the negative cell over the same P, whose dimension
 * is -|P| - 2rho - 5 as an HZ*-cell, i.e. -|P| - 4rho - 1 as an HZ-cell. */
struct DualCellReport {
    long long matched_pairs = 0;
    std::vector<SliceCell> unmatched;
    bool pass = false;
};
DualCellReport dual_cell_check(const std::vector<SliceCell>& cells,
                               Degree shift = Degree{7, 2});

/* Universal coefficient shadow of I_{Z[1/3]} = Sigma^9 on underlying
 * homotopy: rank pi_n = rank pi_{-9-n} for every stem in the range. */
Report check_anderson(long long k_max, long long stem_abs_max, long long cell_index_max);

}  // namespace roc2
