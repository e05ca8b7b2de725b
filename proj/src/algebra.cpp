#include "roc2/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace roc2 {

MonomialAlgebra::MonomialAlgebra(std::vector<Generator> gens) : gens_(std::move(gens))
{
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (index_.count(gens_[i].name))
            throw std::invalid_argument("duplicate generator name: " + gens_[i].name);
        index_[gens_[i].name] = (int)i;
    }
    for (size_t i = 0; i < gens_.size(); ++i)
        name_order_.push_back((int)i);
    std::sort(name_order_.begin(), name_order_.end(),
              [&](int x, int y) { return gens_[x].name < gens_[y].name; });
    validate();
}

void MonomialAlgebra::validate() const
{
    for (const auto& g : gens_) {
        if (g.filtration < 0)
            throw std::invalid_argument("negative filtration on " + g.name);
        if (g.annihilator != 0 && g.annihilator != 2)
            throw std::invalid_argument("annihilator must be 0 or 2: " + g.name);
        if (g.invertible && g.annihilator == 2)
            throw std::invalid_argument("Laurent torsion generator not allowed: " + g.name);
    }
}

int MonomialAlgebra::index_of(const std::string& name) const
{
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

const Generator& MonomialAlgebra::gen(const std::string& name) const
{
    int i = index_of(name);
    if (i < 0)
        throw std::invalid_argument("unknown generator: " + name);
    return gens_[i];
}

Degree MonomialAlgebra::degree_of(const Monomial& m) const
{
    Degree d;
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0)
            d = d + (long long)m[i] * gens_[i].degree;
    return d;
}

long long MonomialAlgebra::filtration_of(const Monomial& m) const
{
    long long s = 0;
    for (size_t i = 0; i < m.size(); ++i)
        s += (long long)m[i] * gens_[i].filtration;
    return s;
}

int MonomialAlgebra::annihilator_of(const Monomial& m) const
{
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] >= 1 && gens_[i].annihilator == 2)
            return 2;
    return 0;
}

Monomial MonomialAlgebra::monomial(const std::map<std::string, int>& exps) const
{
    Monomial m(gens_.size(), 0);
    for (const auto& [name, e] : exps) {
        int i = index_of(name);
        if (i < 0)
            throw std::invalid_argument("unknown generator: " + name);
        if (e < 0 && !gens_[i].invertible)
            throw std::invalid_argument("negative exponent on non-invertible generator " + name);
        m[i] = e;
    }
    return m;
}

std::string MonomialAlgebra::monomial_str(const Monomial& m) const
{
    std::ostringstream os;
    bool first = true;
    for (int i : name_order_) {
        if (i >= (int)m.size() || m[i] == 0)
            continue;
        if (!first)
            os << "*";
        os << gens_[i].name;
        if (m[i] != 1)
            os << "^" << m[i];
        first = false;
    }
    if (first)
        os << "1";
    return os.str();
}

std::string MonomialAlgebra::element_str(const Element& e) const
{
    if (e.terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : e.terms) {
        if (!first)
            os << (c >= 0 ? " + " : " - ");
        else if (c < 0)
            os << "-";
        long long a = std::llabs(c);
        if (a != 1)
            os << a << "*";
        os << monomial_str(m);
        first = false;
    }
    return os.str();
}

void MonomialAlgebra::normalize(Element& e) const
{
    for (auto it = e.terms.begin(); it != e.terms.end();) {
        if (annihilator_of(it->first) == 2)
            it->second = ((it->second % 2) + 2) % 2;
        if (it->second == 0)
            it = e.terms.erase(it);
        else
            ++it;
    }
}

Element MonomialAlgebra::element(const Monomial& m, long long c) const
{
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] < 0 && !gens_[i].invertible)
            throw std::invalid_argument("negative exponent on non-invertible generator " +
                                        gens_[i].name);
    Element e;
    e.terms[m] = c;
    normalize(e);
    return e;
}

Element MonomialAlgebra::add(const Element& x, const Element& y) const
{
    Element z = x;
    for (const auto& [m, c] : y.terms)
        z.terms[m] += c;
    normalize(z);
    return z;
}

Element MonomialAlgebra::scale(long long c, const Element& x) const
{
    Element z;
    for (const auto& [m, co] : x.terms)
        z.terms[m] = c * co;
    normalize(z);
    return z;
}

Element MonomialAlgebra::multiply(const Element& x, const Element& y) const
{
    Element z;
    for (const auto& [mx, cx] : x.terms)
        for (const auto& [my, cy] : y.terms) {
            Monomial m(gens_.size(), 0);
            for (size_t i = 0; i < gens_.size(); ++i) {
                m[i] = mx[i] + my[i];
                if (m[i] < 0 && !gens_[i].invertible)
                    throw std::invalid_argument(
                        "negative exponent on non-invertible generator " + gens_[i].name);
            }
            z.terms[m] += cx * cy;
        }
    normalize(z);
    return z;
}

bool MonomialAlgebra::associate(const Element& x, const Element& y) const
{
    if (x.terms.size() != y.terms.size())
        return false;
    auto ix = x.terms.begin();
    auto iy = y.terms.begin();
    for (; ix != x.terms.end(); ++ix, ++iy) {
        if (ix->first != iy->first)
            return false;
        long long a = ix->second, b = iy->second;
        if (annihilator_of(ix->first) == 2) {
            if (((a - b) % 2 + 2) % 2 != 0)
                return false;
            continue;
        }
        if ((a < 0) != (b < 0))
            return false;
        a = std::llabs(a);
        b = std::llabs(b);
        if (strip_threes(a) != strip_threes(b))
            return false;
    }
    return true;
}

bool MonomialAlgebra::cone_has_kernel_direction() const
{
    // a nonzero vector v with deg(v) = 0, filtration(v) = 0 and v_i >= 0 on
    // every non-invertible generator makes bidegree pieces infinite
    IntMat m(3, IntVec(gens_.size(), 0));
    for (size_t i = 0; i < gens_.size(); ++i) {
        m[0][i] = gens_[i].degree.a;
        m[1][i] = gens_[i].degree.b;
        m[2][i] = gens_[i].filtration;
    }
    auto ker = kernel_basis(m, gens_.size());
    if (ker.empty())
        return false;
    if (ker.size() > 2)
        return true;  // too coarse to certify; demand a window
    auto in_cone = [&](const IntVec& v) {
        bool nonzero = false;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] != 0)
                nonzero = true;
            if (v[i] < 0 && !gens_[i].invertible)
                return false;
        }
        return nonzero;
    };
    const int B = 8;
    if (ker.size() == 1) {
        for (int c = -B; c <= B; ++c) {
            if (c == 0)
                continue;
            IntVec v(gens_.size());
            for (size_t i = 0; i < v.size(); ++i)
                v[i] = c * ker[0][i];
            if (in_cone(v))
                return true;
        }
        return false;
    }
    for (int c0 = -B; c0 <= B; ++c0)
        for (int c1 = -B; c1 <= B; ++c1) {
            if (c0 == 0 && c1 == 0)
                continue;
            IntVec v(gens_.size());
            for (size_t i = 0; i < v.size(); ++i)
                v[i] = c0 * ker[0][i] + c1 * ker[1][i];
            if (in_cone(v))
                return true;
        }
    return false;
}

std::vector<Monomial> MonomialAlgebra::basis_in_bidegree(Degree d, long long s,
                                                         std::optional<ExponentWindow> window) const
{
    size_t n = gens_.size();
    if (!window) {
        // without a window the answer must be exact: handle the kernel-free
        // and one-parameter cases directly, refuse anything unbounded
        if (cone_has_kernel_direction())
            throw std::runtime_error(
                "unbounded enumeration: degree map has kernel in the exponent cone; give a window");
        IntMat m(3, IntVec(n, 0));
        for (size_t i = 0; i < n; ++i) {
            m[0][i] = gens_[i].degree.a;
            m[1][i] = gens_[i].degree.b;
            m[2][i] = gens_[i].filtration;
        }
        auto ker = kernel_basis(m, n);
        auto sol = solve_integer(m, {d.a, d.b, s});
        std::vector<Monomial> out;
        if (!sol)
            return out;
        auto admissible = [&](const IntVec& v) {
            for (size_t i = 0; i < n; ++i)
                if (v[i] < 0 && !gens_[i].invertible)
                    return false;
            return true;
        };
        if (ker.empty()) {
            if (admissible(*sol))
                out.push_back(Monomial(sol->begin(), sol->end()));
            return out;
        }
        if (ker.size() == 1) {
            // cone-freeness bounds the parameter on both sides
            auto floor_div = [](long long x, long long y) {
                long long q = x / y, r = x % y;
                return (r != 0 && ((r < 0) != (y < 0))) ? q - 1 : q;
            };
            long long t_lo = -(1LL << 40), t_hi = (1LL << 40);
            for (size_t i = 0; i < n; ++i) {
                if (gens_[i].invertible || ker[0][i] == 0)
                    continue;
                long long k = ker[0][i], e0 = (*sol)[i];
                // need e0 + t k >= 0
                if (k > 0)
                    t_lo = std::max(t_lo, -floor_div(e0, k));
                else
                    t_hi = std::min(t_hi, floor_div(e0, -k));
            }
            for (long long t = t_lo; t <= t_hi; ++t) {
                IntVec v(n);
                for (size_t i = 0; i < n; ++i)
                    v[i] = (*sol)[i] + t * ker[0][i];
                if (admissible(v))
                    out.push_back(Monomial(v.begin(), v.end()));
            }
            std::sort(out.begin(), out.end(), [&](const Monomial& x, const Monomial& y) {
                for (int i : name_order_)
                    if (x[i] != y[i])
                        return x[i] > y[i];
                return false;
            });
            return out;
        }
        throw std::runtime_error("enumeration requires a window at kernel rank >= 2");
    }
    int cap = window->cap;

    // DFS in name order with interval pruning on (deg.a, deg.b, filtration)
    std::vector<int> lo(n), hi(n);
    for (size_t k = 0; k < n; ++k) {
        int i = name_order_[k];
        lo[k] = gens_[i].invertible ? -cap : 0;
        hi[k] = cap;
    }
    // suffix extremes of each linear functional over the remaining box
    auto suffix_bounds = [&](auto&& coeff) {
        std::vector<std::pair<long long, long long>> mm(n + 1, {0, 0});
        for (size_t k = n; k-- > 0;) {
            long long c = coeff(name_order_[k]);
            long long m1 = c * lo[k], m2 = c * hi[k];
            mm[k] = {mm[k + 1].first + std::min(m1, m2), mm[k + 1].second + std::max(m1, m2)};
        }
        return mm;
    };
    auto ba = suffix_bounds([&](int i) { return gens_[i].degree.a; });
    auto bb = suffix_bounds([&](int i) { return gens_[i].degree.b; });
    auto bs = suffix_bounds([&](int i) { return gens_[i].filtration; });

    std::vector<Monomial> out;
    Monomial cur(n, 0);
    auto rec = [&](auto&& self, size_t k, long long ra, long long rb, long long rs) -> void {
        if (k == n) {
            if (ra == 0 && rb == 0 && rs == 0)
                out.push_back(cur);
            return;
        }
        if (ra < ba[k].first || ra > ba[k].second || rb < bb[k].first || rb > bb[k].second ||
            rs < bs[k].first || rs > bs[k].second)
            return;
        int i = name_order_[k];
        for (int e = lo[k]; e <= hi[k]; ++e) {
            cur[i] = e;
            self(self, k + 1, ra - e * gens_[i].degree.a, rb - e * gens_[i].degree.b,
                 rs - e * gens_[i].filtration);
        }
        cur[i] = 0;
    };
    rec(rec, 0, d.a, d.b, s);

    std::sort(out.begin(), out.end(), [&](const Monomial& x, const Monomial& y) {
        for (int i : name_order_) {
            if (x[i] != y[i])
                return x[i] > y[i];
        }
        return false;
    });
    return out;
}

MonomialAlgebra MonomialAlgebra::localize(const std::string& gen_name) const
{
    int i = index_of(gen_name);
    if (i < 0)
        throw std::invalid_argument("unknown generator: " + gen_name);
    if (gens_[i].annihilator != 0)
        throw std::invalid_argument("cannot invert torsion generator " + gen_name);
    auto gens = gens_;
    gens[i].invertible = true;
    return MonomialAlgebra(gens);
}

Element expand_named(const MonomialAlgebra& a, const std::string& name)
{
    auto pick = [&](const char* plain, const char* barred) -> std::string {
        if (a.index_of(plain) >= 0)
            return plain;
        if (a.index_of(barred) >= 0)
            return barred;
        throw std::invalid_argument(std::string("algebra has neither ") + plain + " nor " + barred);
    };
    std::string a1 = pick("a1", "a1bar");
    std::string a3 = pick("a3", "a3bar");
    if (name == "c4") {
        // a1^4 - 24 a1 a3
        Element e = a.element(a.monomial({{a1, 4}}));
        return a.add(e, a.element(a.monomial({{a1, 1}, {a3, 1}}), -24));
    }
    if (name == "Delta" || name == "Dbar") {
        // a3^3 (a1^3 - 27 a3)
        Element e = a.element(a.monomial({{a1, 3}, {a3, 3}}));
        return a.add(e, a.element(a.monomial({{a3, 4}}), -27));
    }
    throw std::invalid_argument("unknown named element: " + name);
}

namespace {

struct ConeGen {
    IntVec exps;
    bool invertible;
};

/* Monoid generators of the degree-zero exponent cone. The two-sided part
 * (vectors invertible together with their negatives) contributes Laurent
 * generators; a leftover ray contributes one polynomial generator. Pointed
 * parts of rank >= 2 do not occur for the algebras handled here. */
std::vector<ConeGen> cone_generators(const std::vector<IntVec>& ker,
                                     const std::vector<bool>& invertible)
{
    std::vector<ConeGen> out;
    size_t rank = ker.size();
    if (rank == 0)
        return out;
    if (rank > 4)
        throw std::runtime_error("degree-zero cone rank > 4 unsupported");
    size_t n = invertible.size();
    auto in_cone = [&](const IntVec& v) {
        bool nz = false;
        for (size_t i = 0; i < n; ++i) {
            if (v[i] != 0)
                nz = true;
            if (v[i] < 0 && !invertible[i])
                return false;
        }
        return nz;
    };
    auto primitive = [](IntVec v) {
        long long g = 0;
        for (long long c : v)
            g = std::gcd(g, std::llabs(c));
        if (g > 1)
            for (auto& c : v)
                c /= g;
        return v;
    };

    // two-sided directions vanish on every non-invertible coordinate;
    // express membership in the kernel lattice, v = sum c_r ker_r with
    // v_i = 0 for non-invertible i, and solve in the c-coordinates
    size_t n_fixed = 0;
    IntMat fix;
    for (size_t i = 0; i < n; ++i)
        if (!invertible[i]) {
            IntVec row(rank, 0);
            for (size_t r = 0; r < rank; ++r)
                row[r] = ker[r][i];
            fix.push_back(std::move(row));
            ++n_fixed;
        }
    std::vector<IntVec> lin = n_fixed ? kernel_basis(fix, rank) : kernel_basis(IntMat{}, rank);
    for (const auto& c : lin) {
        IntVec v(n, 0);
        for (size_t r = 0; r < rank; ++r)
            for (size_t i = 0; i < n; ++i)
                v[i] += c[r] * ker[r][i];
        bool nz = false;
        for (long long x : v)
            if (x != 0)
                nz = true;
        if (nz)
            out.push_back({primitive(v), true});
    }

    if (lin.size() < rank) {
        if (rank - lin.size() > 1)
            throw std::runtime_error("pointed degree-zero cone of rank >= 2 unsupported");
        // a single remaining ray: pick the kernel direction outside the
        // two-sided part and orient it into the cone
        for (size_t r = 0; r < rank; ++r) {
            IntVec v = primitive(ker[r]);
            bool in_lin = true;
            for (size_t i = 0; i < n; ++i)
                if (!invertible[i] && v[i] != 0)
                    in_lin = false;
            if (in_lin)
                continue;
            IntVec neg(n);
            for (size_t i = 0; i < n; ++i)
                neg[i] = -v[i];
            if (in_cone(v))
                out.push_back({v, false});
            else if (in_cone(neg))
                out.push_back({neg, false});
            break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ConeGen& x, const ConeGen& y) { return x.exps < y.exps; });
    return out;
}

}  // namespace

SubringPresentation degree_zero_subring(const MonomialAlgebra& a, GradingKind grading)
{
    // only filtration-0 torsion-free generators take part
    std::vector<int> keep;
    for (size_t i = 0; i < a.size(); ++i)
        if (a.gens()[i].filtration == 0 && a.gens()[i].annihilator == 0)
            keep.push_back((int)i);

    size_t rows = grading == GradingKind::RepresentationDegree ? 2 : 1;
    IntMat m(rows, IntVec(keep.size(), 0));
    for (size_t j = 0; j < keep.size(); ++j) {
        const auto& g = a.gens()[keep[j]];
        if (grading == GradingKind::RepresentationDegree) {
            m[0][j] = g.degree.a;
            m[1][j] = g.degree.b;
        }
        else {
            m[0][j] = g.degree.underlying_dimension();
        }
    }
    std::vector<bool> inv(keep.size());
    for (size_t j = 0; j < keep.size(); ++j)
        inv[j] = a.gens()[keep[j]].invertible;

    auto ker = kernel_basis(m, keep.size());
    auto gens = cone_generators(ker, inv);

    SubringPresentation out;
    if (gens.empty()) {
        out.kind = SubringPresentation::Kind::Constants;
        return out;
    }
    bool all_laurent = true, none_laurent = true;
    for (const auto& cg : gens) {
        SubringPresentation::Gen g;
        g.invertible = cg.invertible;
        for (size_t j = 0; j < keep.size(); ++j)
            if (cg.exps[j] != 0)
                g.exps[a.gens()[keep[j]].name] = (int)cg.exps[j];
        Monomial mono = a.unit_monomial();
        for (size_t j = 0; j < keep.size(); ++j)
            mono[keep[j]] = (int)cg.exps[j];
        g.label = a.monomial_str(mono);
        out.generators.push_back(std::move(g));
        (cg.invertible ? none_laurent : all_laurent) = false;
    }
    out.kind = all_laurent    ? SubringPresentation::Kind::Laurent
               : none_laurent ? SubringPresentation::Kind::Polynomial
                              : SubringPresentation::Kind::Mixed;
    return out;
}

FGAbelianGroup unit_group(const SubringPresentation& r)
{
    if (r.kind == SubringPresentation::Kind::Mixed)
        throw std::runtime_error("unit group of a mixed presentation is unsupported");
    FGAbelianGroup g;
    g.free_rank = 1;
    g.generator_labels.push_back("3");
    for (const auto& gen : r.generators)
        if (gen.invertible) {
            ++g.free_rank;
            g.generator_labels.push_back(gen.label);
        }
    g.invariant_factors.push_back(2);
    g.generator_labels.push_back("-1");
    return g;
}

bool irreducible_linear_in(const MonomialAlgebra& a, const Element& e, const std::string& var)
{
    int vi = a.index_of(var);
    if (vi < 0)
        return false;
    long long top = 0, constant_gcd = 0;
    int max_deg = 0;
    for (const auto& [m, c] : e.terms)
        max_deg = std::max(max_deg, (int)m[vi]);
    if (max_deg != 1)
        return false;
    for (const auto& [m, c] : e.terms) {
        if (m[vi] == 1)
            top = std::gcd(top, std::llabs(c));
        else
            constant_gcd = std::gcd(constant_gcd, std::llabs(c));
    }
    // linear in var with unit top coefficient: irreducible when the
    // var-free part is not divisible by the top part in a trivializing way
    return strip_threes(top) == 1 && constant_gcd != 0;
}

}  // namespace roc2
