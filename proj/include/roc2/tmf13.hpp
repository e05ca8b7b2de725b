#pragma once

#include <string>
#include <vector>

#include "roc2/mackey.hpp"
#include "roc2/sseq.hpp"

namespace roc2 {

/* One line of a verification report. */
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct Report {
    std::vector<CheckResult> items;
    bool all_pass() const
    {
        for (const auto& c : items)
            if (!c.pass)
                return false;
        return true;
    }
    void add(const std::string& name, bool pass, const std::string& details = "");
};

/* Fixed point spectral sequence inputs for the level-3 family. Generators:
 * a_sigma (-sigma, filtration 1, 2-torsion), u_2sigma (2-2sigma, Laurent),
 * a1bar (rho), a3bar (3rho); d3(u) = a_sigma^3 a1bar, d7(u^2) = a_sigma^7 a3bar.
 * The periodic variant carries Dbar (12rho, Laurent) as a formal generator
 * with defining expansion a1bar^3 a3bar^3 - 27 a3bar^4. */
struct Scenario {
    std::string name;
    MonomialAlgebra algebra;
    std::vector<Differential> differentials;
    bool has_dbar = false;
};

Scenario build_scenario(const std::string& name);
std::vector<std::string> scenario_names();

/* Closed-form rank of the torsion-free part of the abutment at one degree:
 * #{(g,h) >= 0 : g + 3h = (a+b)/2} when a+b is even, nonnegative and
 * 4 | (a-b); zero otherwise. */
long long presentation_free_rank(const Degree& d);

/* Number of Z/2 summands at one degree read off the E-infinity presentation,
 * with the a_sigma exponent capped by s_max. */
long long presentation_torsion_count(const Degree& d, long long s_max);

/* Full comparison of a stable page against the presentation: ranks and
 * torsion counts per degree in the window, plus the relation families. */
Report verify_presentation(const RunResult& run);

/* Evenness: homotopy vanishes in degrees k*rho - 1. For k >= 1 the page must
 * vanish there; for k <= 0 vanishing is forced by connectivity of the
 * spectrum (negative trivial part and negative total degree), which is also
 * recorded. The filtration-0 rank at k*rho must match the monomial count. */
Report check_strongly_even(const RunResult& run, long long k_abs_max);

/* Certificates on the periodic variant, computed through the defining
 * expansion of Dbar inside a truncated window and re-checked on a grown
 * window: u^4 and Dbar^2 u^12 are permanent cycles, Dbar u^6 supports a d7. */
Report periodicity_check();

/* eta = a_sigma a1bar and nu = a_sigma^3 a3bar power chains at E-infinity. */
Report check_eta_nu_chains(const RunResult& run);

/* Homotopy near multiples of rho for every scenario, checked two ways:
 * the four-case table against the page, and the table against Bredon
 * homology of the contributing slices. For the non-localized scenario only
 * k >= 0 is compared against the page; its fixed points differ from the
 * Borel completion in the negative cone. */
Report check_near_rho(long long k_abs_max);

/* Rank of the degree-n part of the underlying coefficient ring of a
 * scenario, within the exponent cap. */
long long underlying_rank(const Scenario& sc, long long n, int cap);

}  // namespace roc2
