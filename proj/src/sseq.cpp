#include "roc2/sseq.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace roc2 {

namespace {

/* d(g^e) = c * g^(e-1) d(g) with c depending on the parity of the trivial
 * degree of g: c = e when it is even, alternating otherwise. */
long long power_rule_coefficient(long long e, long long a0)
{
    if (a0 % 2 == 0)
        return e;
    if (e >= 0)
        return e % 2;
    // from 0 = d(g^e g^{-e}): c_e = -(-1)^{e a0} c_{-e}
    long long c = (-e) % 2;
    long long sign = (e % 2 == 0) ? 1 : -1;
    return -sign * c;
}

SparseVec to_sparse(const IntVec& v)
{
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            s.emplace_back((int32_t)i, v[i]);
    return s;
}

IntVec to_dense(const SparseVec& s, size_t n)
{
    IntVec v(n, 0);
    for (auto [i, c] : s)
        v[i] = c;
    return v;
}

int find_basis_index(const std::vector<Monomial>& basis, const Monomial& m)
{
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m)
        return -1;
    return (int)(it - basis.begin());
}

/* Element -> coordinates in a piece basis; nullopt if a monomial is absent. */
std::optional<IntVec> element_coords(const Piece& piece, const Element& e)
{
    IntVec v(piece.basis.size(), 0);
    for (const auto& [m, c] : e.terms) {
        int i = find_basis_index(piece.basis, m);
        if (i < 0)
            return std::nullopt;
        v[i] = c;
    }
    return v;
}

/* Solves target = classes * alpha + rels * beta over Z; returns alpha. */
std::optional<IntVec> solve_in_piece(const Piece& piece, const IntVec& target)
{
    size_t rows = piece.basis.size();
    size_t nc = piece.class_reps.size(), nr = piece.rels.size();
    IntMat m(rows, IntVec(nc + nr, 0));
    for (size_t j = 0; j < nc; ++j)
        for (auto [i, c] : piece.class_reps[j])
            m[i][j] = c;
    for (size_t j = 0; j < nr; ++j)
        for (auto [i, c] : piece.rels[j])
            m[i][nc + j] = c;
    auto sol = solve_integer(m, target);
    if (!sol)
        return std::nullopt;
    return IntVec(sol->begin(), sol->begin() + nc);
}

}  // namespace

long long Piece::free_rank() const
{
    long long n = 0;
    for (long long o : class_orders)
        if (o == 0)
            ++n;
    return n;
}

long long Piece::torsion_count(long long order) const
{
    long long n = 0;
    for (long long o : class_orders)
        if (o == order)
            ++n;
    return n;
}

const Piece* Page::piece(const PieceKey& k) const
{
    auto it = pieces.find(k);
    return it == pieces.end() ? nullptr : &it->second;
}

bool Page::piece_nonzero(const PieceKey& k) const
{
    const Piece* p = piece(k);
    return p && p->has_classes();
}

std::optional<SparseVec> Page::reduce(const Element& e) const
{
    if (e.terms.empty())
        return SparseVec{};
    Degree d = alg.degree_of(e.terms.begin()->first);
    long long s = alg.filtration_of(e.terms.begin()->first);
    for (const auto& [m, c] : e.terms)
        if (alg.degree_of(m) != d || alg.filtration_of(m) != s)
            throw std::invalid_argument("reduce: element is not homogeneous");
    PieceKey key{d.a, d.b, s};
    const Piece* p = piece(key);
    if (!p)
        return std::nullopt;
    auto coords = element_coords(*p, e);
    if (!coords)
        return std::nullopt;
    auto alpha = solve_in_piece(*p, *coords);
    if (!alpha)
        return std::nullopt;
    SparseVec out;
    for (size_t i = 0; i < alpha->size(); ++i) {
        long long c = (*alpha)[i];
        long long o = p->class_orders[i];
        if (o != 0)
            c = ((c % o) + o) % o;
        if (c != 0)
            out.emplace_back((int32_t)i, c);
    }
    return out;
}

bool Page::is_zero_class(const Element& e) const
{
    auto r = reduce(e);
    return r && r->empty();
}

std::string Page::class_label(const PieceKey& k, size_t idx) const
{
    const Piece* p = piece(k);
    if (!p || idx >= p->class_reps.size())
        return "?";
    const SparseVec& rep = p->class_reps[idx];
    if (rep.size() == 1) {
        long long c = rep[0].second;
        std::string base = alg.monomial_str(p->basis[rep[0].first]);
        if (c == 1 || c == -1)
            return base;
        std::ostringstream os;
        os << std::llabs(c) << "*" << base;
        return os.str();
    }
    // prefer a monomial that shows up in no boundary
    std::set<int> in_rels;
    for (const auto& r : p->rels)
        for (auto [i, c] : r)
            in_rels.insert(i);
    int pick = -1;
    for (auto [i, c] : rep)
        if (!in_rels.count(i)) {
            pick = i;
            break;
        }
    if (pick < 0 && !rep.empty())
        pick = rep[0].first;
    return alg.monomial_str(p->basis[pick]) + "+...";
}

std::optional<Element> leibniz_extend(const MonomialAlgebra& a, const Differential& d,
                                      const Monomial& m)
{
    Element total;
    long long prefix_a0 = 0;  // trivial degree of the factors to the left
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        const Generator& g = a.gens()[i];
        const DiffValue* dv = nullptr;
        for (const auto& v : d.values)
            if (a.index_of(v.gen) == (int)i) {
                dv = &v;
                break;
            }
        if (dv && !dv->value.is_zero()) {
            if (m[i] % dv->power != 0)
                return std::nullopt;  // outside the derivation's domain
            long long e = m[i] / dv->power;
            long long block_a0 = (long long)dv->power * g.degree.a;
            long long c = power_rule_coefficient(e, block_a0);
            if (c != 0) {
                // m with g^power removed, times the declared value
                Monomial rest = m;
                rest[i] -= dv->power;
                long long sign = (prefix_a0 % 2 == 0) ? 1 : -1;
                Element term = a.multiply(a.element(rest, sign * c), dv->value);
                total = a.add(total, term);
            }
        }
        prefix_a0 += (long long)m[i] * g.degree.a;
    }
    return total;
}

Page initial_page(const MonomialAlgebra& a, const Window& w)
{
    Page page;
    page.r = 2;
    page.alg = a;
    page.enum_window = w;
    page.resolved_s_max = w.s_max;
    page.resolved_a_min = w.a_min;

    size_t n = a.size();
    std::vector<int> lo(n), hi(n);
    for (size_t i = 0; i < n; ++i) {
        int cap = w.exp_cap;
        auto it = w.gen_caps.find(a.gens()[i].name);
        if (it != w.gen_caps.end())
            cap = it->second;
        lo[i] = a.gens()[i].invertible ? -cap : 0;
        hi[i] = cap;
    }
    // suffix bounds for pruning
    std::vector<std::array<long long, 6>> suf(n + 1, {0, 0, 0, 0, 0, 0});
    for (size_t i = n; i-- > 0;) {
        const Generator& g = a.gens()[i];
        auto mm = [&](long long c) {
            long long x = c * lo[i], y = c * hi[i];
            return std::pair<long long, long long>{std::min(x, y), std::max(x, y)};
        };
        auto [a1, a2] = mm(g.degree.a);
        auto [b1, b2] = mm(g.degree.b);
        auto [s1, s2] = mm(g.filtration);
        suf[i] = {suf[i + 1][0] + a1, suf[i + 1][1] + a2, suf[i + 1][2] + b1,
                  suf[i + 1][3] + b2, suf[i + 1][4] + s1, suf[i + 1][5] + s2};
    }

    std::map<PieceKey, std::vector<Monomial>> buckets;
    Monomial cur(n, 0);
    auto floor_div = [](long long x, long long y) {
        long long q = x / y, r = x % y;
        return (r != 0 && ((r < 0) != (y < 0))) ? q - 1 : q;
    };
    auto ceil_div = [&](long long x, long long y) { return -floor_div(-x, y); };
    auto rec = [&](auto&& self, size_t i, long long da, long long db, long long ds) -> void {
        if (i == n) {
            if (da >= w.a_min && da <= w.a_max && db >= w.b_min && db <= w.b_max && ds >= 0 &&
                ds <= w.s_max)
                buckets[PieceKey{da, db, ds}].push_back(cur);
            return;
        }
        const Generator& g = a.gens()[i];
        long long e_lo = lo[i], e_hi = hi[i];
        // shrink the exponent range so each linear functional can still land
        auto clamp = [&](long long c, long long acc, long long fmin, long long fmax,
                         long long smin, long long smax) {
            if (c == 0) {
                if (acc + smax < fmin || acc + smin > fmax)
                    e_hi = e_lo - 1;
                return;
            }
            long long num_lo = fmin - acc - smax, num_hi = fmax - acc - smin;
            if (c > 0) {
                e_lo = std::max(e_lo, ceil_div(num_lo, c));
                e_hi = std::min(e_hi, floor_div(num_hi, c));
            }
            else {
                e_lo = std::max(e_lo, ceil_div(num_hi, c));
                e_hi = std::min(e_hi, floor_div(num_lo, c));
            }
        };
        clamp(g.degree.a, da, w.a_min, w.a_max, suf[i + 1][0], suf[i + 1][1]);
        clamp(g.degree.b, db, w.b_min, w.b_max, suf[i + 1][2], suf[i + 1][3]);
        clamp(g.filtration, ds, 0, w.s_max, suf[i + 1][4], suf[i + 1][5]);
        for (long long e = e_lo; e <= e_hi; ++e) {
            cur[i] = (int32_t)e;
            self(self, i + 1, da + e * g.degree.a, db + e * g.degree.b, ds + e * g.filtration);
        }
        cur[i] = 0;
    };
    rec(rec, 0, 0, 0, 0);

    for (auto& [key, monos] : buckets) {
        Piece piece;
        std::sort(monos.begin(), monos.end());
        piece.basis = std::move(monos);
        for (size_t i = 0; i < piece.basis.size(); ++i) {
            piece.class_reps.push_back({{(int32_t)i, 1}});
            bool torsion = a.annihilator_of(piece.basis[i]) == 2;
            piece.class_orders.push_back(torsion ? 2 : 0);
            if (torsion)
                piece.rels.push_back({{(int32_t)i, 2}});
        }
        page.pieces.emplace(key, std::move(piece));
    }
    return page;
}

namespace {

/* invert a unimodular matrix by integer solves */
IntMat unimodular_inverse(const IntMat& u)
{
    size_t n = u.size();
    IntMat inv(n, IntVec(n, 0));
    for (size_t j = 0; j < n; ++j) {
        IntVec e(n, 0);
        e[j] = 1;
        auto col = solve_integer(u, e);
        if (!col)
            throw std::logic_error("unimodular_inverse: matrix not invertible");
        for (size_t i = 0; i < n; ++i)
            inv[i][j] = (*col)[i];
    }
    return inv;
}

struct DiffData {
    bool defined = true;          // false: value needed outside enumerated window
    IntVec class_coords;          // in the target piece's class coordinates
    bool nonzero = false;
};

}  // namespace

Page turn_page(const Page& p, const Differential& d)
{
    if (d.r < p.r)
        throw std::invalid_argument("turn_page: differential page below current page");
    Page next;
    next.r = d.r + 1;
    next.alg = p.alg;
    next.enum_window = p.enum_window;
    next.resolved_a_min = p.resolved_a_min + 1;
    next.resolved_s_max = p.resolved_s_max - d.r;
    next.warnings = p.warnings;
    const MonomialAlgebra& A = p.alg;

    // phase 1: differentials of every class, expressed in target class coords
    std::map<PieceKey, std::vector<DiffData>> outgoing;
    for (const auto& [key, piece] : p.pieces) {
        PieceKey tgt{key.a - 1, key.b, key.s + d.r};
        std::vector<DiffData> out(piece.class_reps.size());
        const Piece* tp = p.piece(tgt);
        for (size_t ci = 0; ci < piece.class_reps.size(); ++ci) {
            Element value;
            bool undefined_even = false;
            bool ok = true;
            for (auto [bi, coeff] : piece.class_reps[ci]) {
                auto dv = leibniz_extend(A, d, piece.basis[bi]);
                if (!dv) {
                    // whole-monomial value unknown; harmless iff it enters
                    // with even coefficient into an all-torsion target
                    if (coeff % 2 != 0) {
                        ok = false;
                        break;
                    }
                    undefined_even = true;
                    continue;
                }
                value = A.add(value, A.scale(coeff, *dv));
            }
            if (!ok) {
                next.warnings.push_back("differential undefined on a class at " +
                                        A.monomial_str(piece.basis[piece.class_reps[ci][0].first]));
                out[ci].defined = false;
                continue;
            }
            if (undefined_even) {
                // twice an unknown class is zero only in an all-Z/2 target
                bool safe = true;
                if (tp) {
                    for (long long o : tp->class_orders)
                        if (o != 2)
                            safe = false;
                }
                else if (!p.enum_window.contains(Degree{tgt.a, tgt.b}, tgt.s)) {
                    safe = false;  // target unknown beyond the window
                }
                if (!safe) {
                    next.warnings.push_back("even undefined value with untrusted target");
                    out[ci].defined = false;
                    continue;
                }
            }
            if (value.is_zero()) {
                out[ci].class_coords.assign(tp ? tp->class_reps.size() : 0, 0);
                continue;
            }
            if (!tp) {
                if (p.enum_window.contains(Degree{tgt.a, tgt.b}, tgt.s)) {
                    // enumerated and empty, yet the value is nonzero
                    next.warnings.push_back("nonzero differential into an empty piece at a=" +
                                            std::to_string(tgt.a));
                    out[ci].defined = false;
                }
                else {
                    next.warnings.push_back("differential exits the window at a=" +
                                            std::to_string(key.a) + ",b=" + std::to_string(key.b) +
                                            ",s=" + std::to_string(key.s));
                    out[ci].defined = false;
                }
                continue;
            }
            auto coords = element_coords(*tp, value);
            std::optional<IntVec> alpha;
            if (coords)
                alpha = solve_in_piece(*tp, *coords);
            if (!coords || !alpha) {
                next.warnings.push_back("differential value is not a class on this page");
                out[ci].defined = false;
                continue;
            }
            out[ci].class_coords = *alpha;
            for (long long c : *alpha)
                if (c != 0)
                    out[ci].nonzero = true;
        }
        outgoing.emplace(key, std::move(out));
    }

    // phase 2: homology per piece
    for (const auto& [key, piece] : p.pieces) {
        PieceKey src{key.a + 1, key.b, key.s - d.r};
        const auto& out = outgoing.at(key);
        bool any_out = false, any_undefined = false;
        for (const auto& o : out) {
            if (!o.defined)
                any_undefined = true;
            else if (o.nonzero)
                any_out = true;
        }
        const Piece* sp = p.piece(src);
        const std::vector<DiffData>* in = nullptr;
        bool any_in = false;
        if (sp) {
            in = &outgoing.at(src);
            for (const auto& o : *in)
                if (o.defined && o.nonzero)
                    any_in = true;
        }
        if (any_undefined) {
            // cannot trust this piece; keep it but flag
            next.warnings.push_back("piece left unresolved at s=" + std::to_string(key.s));
            next.pieces.emplace(key, piece);
            continue;
        }
        if (!any_out && !any_in) {
            next.pieces.emplace(key, piece);  // untouched by this differential
            continue;
        }

        size_t n = piece.class_reps.size();
        // kernel of the induced map: T beta = 0 in the target group
        PieceKey tkey{key.a - 1, key.b, key.s + d.r};
        const Piece* tp = p.piece(tkey);
        std::vector<IntVec> K;
        if (!any_out) {
            for (size_t i = 0; i < n; ++i) {
                IntVec e(n, 0);
                e[i] = 1;
                K.push_back(std::move(e));
            }
        }
        else {
            size_t m = tp->class_reps.size();
            std::vector<size_t> torsion_idx;
            for (size_t j = 0; j < m; ++j)
                if (tp->class_orders[j] != 0)
                    torsion_idx.push_back(j);
            IntMat sys(m, IntVec(n + torsion_idx.size(), 0));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < m; ++j)
                    sys[j][i] = out[i].class_coords[j];
            for (size_t t = 0; t < torsion_idx.size(); ++t)
                sys[torsion_idx[t]][n + t] = tp->class_orders[torsion_idx[t]];
            for (const auto& kv : kernel_basis(sys, n + torsion_idx.size())) {
                IntVec beta(kv.begin(), kv.begin() + n);
                bool nz = false;
                for (long long c : beta)
                    if (c != 0)
                        nz = true;
                if (nz)
                    K.push_back(std::move(beta));
            }
        }

        // relations inside the kernel: incoming boundaries and old orders
        std::vector<IntVec> relvecs;
        if (any_in)
            for (const auto& o : *in)
                if (o.defined && o.nonzero)
                    relvecs.push_back(o.class_coords);
        for (size_t i = 0; i < n; ++i)
            if (piece.class_orders[i] != 0) {
                IntVec v(n, 0);
                v[i] = piece.class_orders[i];
                relvecs.push_back(std::move(v));
            }

        size_t kp = K.size();
        Piece np;
        np.basis = piece.basis;
        np.rels = piece.rels;
        if (any_in)
            for (const auto& o : *in)
                if (o.defined && o.nonzero) {
                    // record the boundary in basis coordinates
                    IntVec bd(piece.basis.size(), 0);
                    for (size_t j = 0; j < n; ++j)
                        if (o.class_coords[j] != 0)
                            for (auto [bi, c] : piece.class_reps[j])
                                bd[bi] += o.class_coords[j] * c;
                    SparseVec sv = to_sparse(bd);
                    if (!sv.empty())
                        np.rels.push_back(std::move(sv));
                }

        if (kp > 0) {
            IntMat kmat(n, IntVec(kp, 0));
            for (size_t j = 0; j < kp; ++j)
                for (size_t i = 0; i < n; ++i)
                    kmat[i][j] = K[j][i];
            IntMat relmat;  // relation columns in K coordinates
            std::vector<IntVec> relcols;
            for (const auto& rv : relvecs) {
                auto gamma = solve_integer(kmat, rv);
                if (!gamma)
                    throw std::logic_error("boundary is not a cycle (d∘d != 0?)");
                relcols.push_back(*gamma);
            }
            IntMat R(kp, IntVec(relcols.size(), 0));
            for (size_t j = 0; j < relcols.size(); ++j)
                for (size_t i = 0; i < kp; ++i)
                    R[i][j] = relcols[j][i];
            SmithResult s = smith_normal_form(R);
            IntMat uinv = unimodular_inverse(s.u);
            for (size_t j = 0; j < kp; ++j) {
                long long dj = (j < s.rank) ? s.d[j][j] : 0;
                long long order = dj == 0 ? 0 : strip_threes(dj);
                if (order == 1)
                    continue;  // unit diagonal: class is trivial
                // generator j of the quotient in old class coordinates
                IntVec beta(n, 0);
                for (size_t i = 0; i < kp; ++i)
                    if (uinv[i][j] != 0)
                        for (size_t l = 0; l < n; ++l)
                            beta[l] += uinv[i][j] * K[i][l];
                IntVec rep(piece.basis.size(), 0);
                for (size_t l = 0; l < n; ++l)
                    if (beta[l] != 0)
                        for (auto [bi, c] : piece.class_reps[l])
                            rep[bi] += beta[l] * c;
                SparseVec sv = to_sparse(rep);
                if (sv.empty())
                    continue;
                np.class_reps.push_back(std::move(sv));
                np.class_orders.push_back(order);
            }
        }
        if (np.has_classes() || !np.rels.empty())
            next.pieces.emplace(key, std::move(np));
    }
    return next;
}

namespace {

bool possible_nonzero_dr(const Page& page, int r, const Window& claim)
{
    for (const auto& [key, piece] : page.pieces) {
        if (!piece.has_classes())
            continue;
        PieceKey tgt{key.a - 1, key.b, key.s + r};
        bool src_in_claim = claim.contains(key.degree(), key.s);
        bool tgt_in_claim = claim.contains(tgt.degree(), tgt.s);
        if (!src_in_claim && !tgt_in_claim)
            continue;
        if (page.piece_nonzero(tgt))
            return true;
    }
    return false;
}

}  // namespace

RunResult run_to_stable(const MonomialAlgebra& a, std::vector<Differential> diffs,
                        const Window& w, int r_max)
{
    std::sort(diffs.begin(), diffs.end(),
              [](const Differential& x, const Differential& y) { return x.r < y.r; });

    // enumerate beyond the claimed window so that every piece consulted by
    // the degree-reason checks is fully resolved
    Window ew = w;
    ew.a_min -= 3;
    ew.a_max += 3;
    ew.s_max += r_max + 10;
    if (!a.requires_exponent_window()) {
        // the cap is then only a convenience bound; make it irrelevant
        long long reach = std::max(std::llabs(ew.a_min), std::llabs(ew.a_max)) +
                          std::max(std::llabs(ew.b_min), std::llabs(ew.b_max)) + ew.s_max + 8;
        ew.exp_cap = (int)std::max<long long>(ew.exp_cap, reach);
    }

    RunResult res;
    res.claim = w;
    Page page = initial_page(a, ew);
    int r_cur = 2;
    for (const auto& d : diffs) {
        for (int r = r_cur; r < d.r; ++r)
            if (possible_nonzero_dr(page, r, w))
                res.unresolved.push_back("d_" + std::to_string(r) +
                                         " could be nonzero but was not given");
        page = turn_page(page, d);
        res.applied.push_back(d.r);
        r_cur = d.r + 1;
    }
    int stable = r_cur;
    for (int r = r_cur; r <= r_max; ++r)
        if (possible_nonzero_dr(page, r, w)) {
            res.unresolved.push_back("d_" + std::to_string(r) +
                                     " possible beyond the listed differentials (unresolved)");
            stable = -1;
            break;
        }
    page.stable_page = stable;
    res.stable_page = stable;
    res.page = std::move(page);
    return res;
}

Abutment abutment(const Page& e_inf, const Degree& d)
{
    Abutment out;
    if (d.a < e_inf.resolved_a_min)
        throw std::invalid_argument("abutment: degree outside the computed window");
    long long total_free = 0;
    std::vector<long long> torsion;
    for (const auto& [key, piece] : e_inf.pieces) {
        if (key.a != d.a || key.b != d.b || !piece.has_classes())
            continue;
        if (key.s > e_inf.resolved_s_max) {
            out.flag = "window-truncated above s=" + std::to_string(e_inf.resolved_s_max);
            continue;  // stale edge pieces carry no trusted information
        }
        std::vector<long long> diag;
        long long free_here = 0;
        for (long long o : piece.class_orders) {
            if (o == 0)
                ++free_here;
            else {
                diag.push_back(o);
                torsion.push_back(o);
            }
        }
        out.by_filtration[key.s] = fg_from_diagonal(diag, free_here);
        total_free += free_here;
    }
    if (torsion.size() <= 1) {
        FGAbelianGroup g;
        g.free_rank = total_free;
        g.invariant_factors = torsion;
        out.assembled = g;
    }
    else {
        out.flag = "extension unresolved: torsion in several filtrations";
    }
    return out;
}

}  // namespace roc2
