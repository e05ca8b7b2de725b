#pragma once

#include <map>
#include <string>
#include <vector>

#include "roc2/fgab.hpp"
#include "roc2/grading.hpp"
#include "roc2/linalg.hpp"
#include "roc2/tmf13.hpp"

namespace roc2 {

/* Suspension Picard group of an evenly graded ring with the listed
 * homogeneous unit degrees: Z modulo the subgroup they generate. With
 * parity the odd suspension contributes its Z/2 through the same lattice. */
FGAbelianGroup algebraic_pic_suspensions(const std::vector<long long>& unit_degrees,
                                         bool include_parity = true);

/* Input datum for the descent column: an F2[gamma]-module generator of the
 * (-1)-column whose page-s differential equals its own square. */
struct TailGenerator {
    std::string name;
    long long s = 0;           // cohomological degree
    bool square_is_diff = true;  // d_s(x) = x^2 on the gamma-free generator
};

struct PicColumnRow {
    long long s = 0;
    std::string klass;
    long long order = 0;  // order of the surviving contribution (1 = dies)
    std::string fate;
};

struct PicColumn {
    std::vector<PicColumnRow> rows;
    std::vector<std::string> notes;
};

/* Fate analysis of the zero column of the descent spectral sequence for the
 * Picard spectrum: d_s(x) = d_s^{page}(x) + x^2 on the diagonal, so the
 * gamma^k-multiples die for k >= 1 and only the gamma-free generators of the
 * tail survive. The s >= 8 region vanishes by the comparison rule. */
PicColumn picard_ss_zero_column(const FGAbelianGroup& h0, const FGAbelianGroup& h1,
                                const std::vector<TailGenerator>& tail,
                                long long gamma_window = 8);

long long assemble_order_bound(const PicColumn& column);

/* Mayer-Vietoris assembly of the compactified Picard group: builds the
 * ladder 0 -> Z -> RO(C2)/(8-8sigma) -> Z/48 -> 0 against coker(f) and
 * ker(g) and returns RO(C2)/(8-8sigma) in Smith normal form. */
struct MVInput {
    FGAbelianGroup units_double_localization;  // labeled: 3, x, -1
    std::string boundary_label;                // the unit hitting a suspension
    Degree boundary_degree;                    // its image suspension
    FGAbelianGroup ker_g;                      // from the localized pipeline
};
FGAbelianGroup mv_assemble(const MVInput& in);

/* End-to-end pipeline per target. */
struct PicardResult {
    std::string target;
    FGAbelianGroup algebraic;    // Pic of the underlying graded ring
    PicColumn column;            // descent column with fates
    long long order_bound = 0;
    FGAbelianGroup group;        // the final answer
    std::vector<std::string> generators;
    std::vector<std::string> assumptions;
};

PicardResult picard_compute(const std::string& target);

Report check_picard();

}  // namespace roc2
