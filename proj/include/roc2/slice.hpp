#pragma once

#include <map>
#include <string>
#include <vector>

#include "roc2/mackey.hpp"
#include "roc2/tmf13.hpp"

namespace roc2 {

/* One slice cell of the compactified spectrum: a regular-representation
 * suspension of HZ[1/3] indexed by a monomial P = a1bar^g a3bar^h. Positive
 * cells sit in dimension |P|, negative ones in -|P| - 4 rho - 1. */
struct SliceCell {
    enum class Kind { Positive, Negative } kind;
    long long g = 0, h = 0;       // exponents of a1bar, a3bar
    long long weight() const { return g + 3 * h; }
    Degree dimension() const
    {
        if (kind == Kind::Positive)
            return regular_multiple(weight());
        return -regular_multiple(weight() + 4) - Degree{1, 0};
    }
    long long slice_index() const
    {
        return kind == Kind::Positive ? 2 * weight() : -2 * weight() - 9;
    }
    std::string label() const;
};

std::vector<SliceCell> slice_cells(long long index_lo, long long index_hi);

/* One spot of the slice chart, with the Mackey types of its summands so the
 * underlying level can be read off. */
struct SliceChartEntry {
    long long z_count = 0;      // constant Z[1/3] summands (underlying rank 1 each)
    long long zstar_count = 0;  // Z[1/3]* summands (underlying rank 1 each)
    long long g_count = 0;      // G summands (underlying 0)
    long long underlying_rank() const { return z_count + zstar_count; }
    FGAbelianGroup fixed_group() const;
    bool empty() const { return z_count == 0 && zstar_count == 0 && g_count == 0; }
};

struct SliceChart {
    std::map<std::pair<long long, long long>, SliceChartEntry> entries;  // (stem, s)
    /* labeled classes in the negative region, by (cell, cohomological index) */
    struct NegClass {
        long long g = 0, h = 0;  // cell monomial
        long long kappa = 0;     // cohomology degree in the sign-sphere formula
        long long stem = 0, s = 0;
    };
    std::vector<NegClass> negative_classes;
};

/* The slice chart over a stem range assembled from the Bredon formulas.
 * Positive cells contribute homology of sign spheres; negative cells enter
 * through an index map validated against two anchors (the stem -9 line and
 * the Mackey value at -5-2rho); anchor failure throws. */
SliceChart slice_e2(const std::vector<SliceCell>& cells, long long stem_lo, long long stem_hi);

/* Mackey value of pi_V of a single negative cell; used for the anchors. */
MackeyFunctor negative_cell_homotopy(const SliceCell& cell, const Degree& v);

/* Differentials in the negative region forced by divisibility by
 * eta = a1bar a_sigma and nu = a3bar a_sigma^3. Classes whose fate the rule
 * does not decide are flagged, never guessed. */
struct ForcedDifferential {
    int r;
    SliceChart::NegClass source;
    std::string note;
};
struct ForcingReport {
    std::vector<ForcedDifferential> differentials;
    std::vector<std::pair<SliceChart::NegClass, std::string>> flags;
};
ForcingReport forced_negative_differentials(const SliceChart& chart);

/* Homotopy of the compactified spectrum: rank #{g+3h = n/2} in even degrees,
 * the top-cohomology monomials 1/(a1^i a3^j), i,j >= 1, in odd ones. */
FGAbelianGroup pi_compactified(long long n);

/* Per-stem Euler characteristics of the chart's underlying level against
 * pi_compactified, plus a degree-reason check that no differential in the
 * chart region can touch a class of positive underlying rank. */
Report check_slice_chart(long long stem_abs_max);

}  // namespace roc2
