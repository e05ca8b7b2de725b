#include "roc2/slice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace roc2 {

std::string SliceCell::label() const
{
    std::ostringstream os;
    os << (kind == Kind::Positive ? "S^{" : "S^{-");
    if (kind == Kind::Positive)
        os << weight() << "rho}";
    else
        os << weight() + 4 << "rho-1}";
    os << " a1^" << g << " a3^" << h;
    return os.str();
}

std::vector<SliceCell> slice_cells(long long index_lo, long long index_hi)
{
    std::vector<SliceCell> out;
    for (long long t = index_lo; t <= index_hi; ++t) {
        if (t >= 0 && t % 2 == 0) {
            long long k = t / 2;
            for (long long h = 0; 3 * h <= k; ++h)
                out.push_back({SliceCell::Kind::Positive, k - 3 * h, h});
        }
        if (t < 0 && (-t) % 2 == 1 && -t >= 9) {
            long long k = (-t - 9) / 2;
            for (long long h = 0; 3 * h <= k; ++h)
                out.push_back({SliceCell::Kind::Negative, k - 3 * h, h});
        }
    }
    return out;
}

MackeyFunctor negative_cell_homotopy(const SliceCell& cell, const Degree& v)
{
    if (cell.kind != SliceCell::Kind::Negative)
        throw std::invalid_argument("negative_cell_homotopy expects a negative cell");
    // pi_V(S^{-d rho - 1} ^ HZ[1/3]) = H^0(S^{V + d rho + 1}); writing the
    // shifted degree as w_a + w_b sigma this is H^{-w_a}(S^{w_b sigma})
    long long d = cell.weight() + 4;
    Degree shifted = v + regular_multiple(d) + Degree{1, 0};
    if (shifted.b < 0) {
        MackeyFunctor z;
        z.name = "0";
        return z;
    }
    return mackey_cohomology_sigma_sphere(shifted.b, -shifted.a, fg_free(1));
}

namespace {

void validate_negative_index_map()
{
    // anchor 1: the cell over P = 1 carries pi_{-9} = Z[1/3] via the top
    // cohomology of S^{4 sigma}
    SliceCell unit{SliceCell::Kind::Negative, 0, 0};
    MackeyFunctor at_m9 = negative_cell_homotopy(unit, Degree{-9, 0});
    if (!(at_m9.fixed == fg_free(1)) || !(at_m9.underlying == fg_free(1)))
        throw std::logic_error("negative slice index map failed the stem -9 anchor");
    // anchor 2: pi_{-5-2rho} is Z[1/3]* (transfer an isomorphism)
    MackeyFunctor at_transfer = negative_cell_homotopy(unit, Degree{-7, -2});
    bool zstar = at_transfer.name == "Z*" && at_transfer.fixed == fg_free(1) &&
                 at_transfer.underlying == fg_free(1);
    if (!zstar)
        throw std::logic_error("negative slice index map failed the -5-2rho anchor");
    // nothing else may contribute to stem -1..-8
    for (long long n = -8; n <= -1; ++n) {
        for (long long k = 0; k <= 8; ++k) {
            SliceCell c{SliceCell::Kind::Negative, k, 0};
            long long d = c.weight() + 4;
            long long s = c.slice_index() - n;
            long long kappa = d + s;
            if (!bredon_cohomology_sigma_sphere(d, kappa).is_zero() && kappa == d)
                throw std::logic_error("negative cells leak free classes into stems -1..-8");
        }
    }
}

}  // namespace

FGAbelianGroup SliceChartEntry::fixed_group() const
{
    FGAbelianGroup g;
    g.free_rank = z_count + zstar_count;
    for (long long i = 0; i < g_count; ++i)
        g.invariant_factors.push_back(2);
    return g;
}

SliceChart slice_e2(const std::vector<SliceCell>& cells, long long stem_lo, long long stem_hi)
{
    validate_negative_index_map();
    SliceChart chart;
    for (const auto& cell : cells) {
        if (cell.kind == SliceCell::Kind::Positive) {
            long long k = cell.weight();
            // filtration s >= 0 contributes at stem 2k - s
            for (long long s = 0; 2 * k - s >= stem_lo; ++s) {
                long long stem = 2 * k - s;
                if (stem > stem_hi)
                    continue;
                FGAbelianGroup g = bredon_homology_sigma_sphere(k, s);
                if (g.is_zero())
                    continue;
                auto& e = chart.entries[{stem, s}];
                if (g.free_rank > 0)
                    ++e.z_count;
                else
                    ++e.g_count;
            }
        }
        else {
            long long d = cell.weight() + 4;
            // kappa = d gives the Z[1/3]* class, odd kappa in (1, d] gives G
            for (long long kappa = 2; kappa <= d; ++kappa) {
                FGAbelianGroup g = bredon_cohomology_sigma_sphere(d, kappa);
                if (g.is_zero())
                    continue;
                long long s = kappa - d;
                long long stem = -d - 1 - kappa;
                if (stem < stem_lo || stem > stem_hi)
                    continue;
                auto& e = chart.entries[{stem, s}];
                if (g.free_rank > 0)
                    ++e.zstar_count;
                else {
                    ++e.g_count;
                    chart.negative_classes.push_back({cell.g, cell.h, kappa, stem, s});
                }
            }
        }
    }
    return chart;
}

ForcingReport forced_negative_differentials(const SliceChart& chart)
{
    ForcingReport rep;
    for (const auto& c : chart.negative_classes) {
        if (c.kappa != 3) {
            // off the slope-one line: fate is decided by the module action,
            // recorded as hit-candidates only when a forced source exists
            continue;
        }
        // the line L: every kappa = 3 class; divisibility bookkeeping
        if (c.g >= 3) {
            rep.differentials.push_back(
                {3, c, "eta^-3 translate of the line class supports a d3"});
        }
        else if (c.h >= 3) {
            rep.differentials.push_back(
                {7, c, "nu^-3 translate supports a d7 (no d3 applies)"});
        }
        else if (c.h >= 1 && c.g >= 1) {
            rep.flags.push_back({c, "dies by d3 or d7; which one is undetermined"});
        }
        else {
            rep.flags.push_back(
                {c, "not hit by any differential for degree reasons; permanent-source candidate"});
        }
    }
    return rep;
}

FGAbelianGroup pi_compactified(long long n)
{
    if (n % 2 == 0) {
        if (n < 0)
            return fg_zero();
        long long k = n / 2;
        return fg_free(k / 3 + 1);
    }
    // odd n = 2t - 1: monomials 1/(a1^i a3^j), i, j >= 1, i + 3j = -t
    long long t = (n + 1) / 2;
    long long target = -t;
    long long rank = 0;
    for (long long j = 1; 3 * j <= target - 1; ++j)
        ++rank;  // i = target - 3j >= 1
    return rank > 0 ? fg_free(rank) : fg_zero();
}

Report check_slice_chart(long long stem_abs_max)
{
    Report rep;
    long long lo = -stem_abs_max, hi = stem_abs_max;
    // cells whose contributions can reach the stem range
    auto cells = slice_cells(-(2 * stem_abs_max + 32), 2 * stem_abs_max + 32);
    SliceChart chart = slice_e2(cells, lo - 16, hi + 16);

    bool euler_ok = true, diff_ok = true;
    std::string first;
    for (long long n = lo; n <= hi; ++n) {
        long long got = 0;
        for (const auto& [key, e] : chart.entries)
            if (key.first == n)
                got += e.underlying_rank();
        long long want = pi_compactified(n).free_rank;
        if (got != want) {
            euler_ok = false;
            if (first.empty())
                first = "stem " + std::to_string(n) + ": got " + std::to_string(got) + " want " +
                        std::to_string(want);
        }
    }
    rep.add("underlying Euler characteristic matches pi of the compactification", euler_ok,
            first);

    // no possible differential touches a class of positive underlying rank
    std::string why;
    for (const auto& [key, e] : chart.entries) {
        if (e.underlying_rank() == 0)
            continue;
        auto [stem, s] = key;
        if (stem < lo || stem > hi)
            continue;
        for (int r = 2; r <= 16; ++r) {
            auto tgt = chart.entries.find({stem - 1, s + r});
            if (tgt != chart.entries.end() && tgt->second.underlying_rank() > 0) {
                diff_ok = false;
                why = "rank classes in differential position at stem " + std::to_string(stem);
            }
            auto src = chart.entries.find({stem + 1, s - r});
            if (src != chart.entries.end() && src->second.underlying_rank() > 0) {
                diff_ok = false;
                why = "rank class could be hit at stem " + std::to_string(stem);
            }
        }
    }
    rep.add("no differential can move underlying rank", diff_ok, why);

    // the forced-differential bookkeeping runs clean
    ForcingReport forcing = forced_negative_differentials(chart);
    bool start_found = false;
    for (const auto& f : forcing.flags)
        if (f.first.stem == -8 && f.first.s == -1)
            start_found = true;
    bool d3_found = false;
    for (const auto& d : forcing.differentials)
        if (d.r == 3 && d.source.stem == -11 && d.source.s == -4 && d.source.g == 3)
            d3_found = true;
    rep.add("line start at (-8,-1) flagged as permanent-source candidate", start_found);
    rep.add("eta^-3 translate at (-11,-4) supports a d3", d3_found);
    return rep;
}

}  // namespace roc2
