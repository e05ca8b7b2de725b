#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roc2/algebra.hpp"
#include "roc2/grading.hpp"

namespace roc2 {

/* Degree window for page computations; exponents of Laurent generators are
 * additionally capped so truncated localizations stay finite. */
struct Window {
    long long a_min = 0, a_max = 0;
    long long b_min = 0, b_max = 0;
    long long s_max = 0;
    int exp_cap = 64;
    std::map<std::string, int> gen_caps;  // per-generator overrides

    bool contains(const Degree& d, long long s) const
    {
        return d.a >= a_min && d.a <= a_max && d.b >= b_min && d.b <= b_max && s >= 0 &&
               s <= s_max;
    }
};

/* A page differential given on generator powers; everything else follows
 * from the Leibniz rule d(xy) = d(x) y + (-1)^{a0(x)} x d(y), where a0 is
 * the trivial part of the degree of the left factor. */
struct DiffValue {
    std::string gen;
    int power = 1;  // the derivation is declared on gen^power
    Element value;
};

struct Differential {
    int r = 2;
    std::vector<DiffValue> values;
};

/* Leibniz extension to a monomial. nullopt means the monomial lies outside
 * the domain of the derivation (an exponent not divisible by a declared
 * power); pages only ever need such values with even multiplicity. */
std::optional<Element> leibniz_extend(const MonomialAlgebra& a, const Differential& d,
                                      const Monomial& m);

struct PieceKey {
    long long a = 0, b = 0, s = 0;
    friend bool operator<(const PieceKey& x, const PieceKey& y)
    {
        if (x.a != y.a)
            return x.a < y.a;
        if (x.b != y.b)
            return x.b < y.b;
        return x.s < y.s;
    }
    friend bool operator==(const PieceKey& x, const PieceKey& y)
    {
        return x.a == y.a && x.b == y.b && x.s == y.s;
    }
    Degree degree() const { return {a, b}; }
};

using SparseVec = std::vector<std::pair<int32_t, long long>>;  // sorted by index

/* One bidegree of a page: a subquotient of the free module on the listed
 * monomials. classes generate, rels span what has become zero (2-torsion
 * relations and accumulated boundaries). */
struct Piece {
    std::vector<Monomial> basis;
    std::vector<SparseVec> class_reps;
    std::vector<long long> class_orders;  // 0 = infinite order
    std::vector<SparseVec> rels;

    bool has_classes() const { return !class_reps.empty(); }
    long long free_rank() const;
    long long torsion_count(long long order = 2) const;
};

struct Page {
    int r = 2;
    MonomialAlgebra alg;
    Window enum_window;              // everything enumerated
    long long resolved_s_max = 0;    // pieces fully resolved up to here
    long long resolved_a_min = 0;
    std::map<PieceKey, Piece> pieces;
    std::vector<std::string> warnings;
    int stable_page = -1;  // set once no further differential can be nonzero

    const Piece* piece(const PieceKey& k) const;
    bool piece_nonzero(const PieceKey& k) const;

    /* Writes an element as class coordinates at its bidegree, reduced
     * modulo the recorded boundaries; nullopt when the element does not
     * represent a class on this page. */
    std::optional<SparseVec> reduce(const Element& e) const;
    bool is_zero_class(const Element& e) const;

    std::string class_label(const PieceKey& k, size_t idx) const;
};

Page initial_page(const MonomialAlgebra& a, const Window& w);

/* Homology with respect to one differential page. Differentials leaving the
 * enumerated window are reported in page.warnings, never truncated. */
Page turn_page(const Page& p, const Differential& d);

struct RunResult {
    Page page;                              // the stable page within the window
    Window claim;                           // the window the run certifies
    std::vector<int> applied;               // differential pages applied, in order
    std::vector<std::string> unresolved;    // d_r that could be nonzero but were not given
    int stable_page = -1;
};

/* Applies the listed differentials in order of r; between and after them,
 * every possible d_r with r <= r_max is checked for degree-reason vanishing
 * inside the window. Nothing is ever guessed: a possibly-nonzero missing
 * differential lands in `unresolved`. */
RunResult run_to_stable(const MonomialAlgebra& a, std::vector<Differential> diffs,
                        const Window& w, int r_max = 16);

struct Abutment {
    std::map<long long, FGAbelianGroup> by_filtration;
    std::optional<FGAbelianGroup> assembled;  // empty when extensions are unresolved
    std::string flag;
};

/* Associated graded of the abutment at one degree; assembles an honest group
 * when at most one torsion class appears across all filtrations. */
Abutment abutment(const Page& e_inf, const Degree& d);

}  // namespace roc2
