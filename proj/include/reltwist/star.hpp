/*
 * star.hpp -- the deformed Lie structure on g* and its consequences.
 *
 * The dual g* carries the semidirect bracket in which the small Levi acts
 * adjontly on the relative nilpotents, the relative centre acts by +-1/2,
 * the two nilpotent halves do not interact, and the lower half has its
 * bracket flipped.  The induced Chevalley-Eilenberg differential, coadjoint
 * action, contraction homotopy and Casimir give exact control over the
 * complex ((exterior g)^{g_D}, [[r_big - r_small, .]]): the homotopy
 * identity d h + h d = 2 C holds with ker C = exterior(l_D), which is what
 * both the cohomology table and the twist construction rely on.
 */
#pragma once

#include "ext.hpp"
#include "invariants.hpp"
#include "linalg.hpp"

namespace reltwist {

class StarComplex {
public:
    explicit StarComplex(const LeviData& lev) : lev_(&lev), L_(lev.L) {
        build_duals();
        rrel_ = relative_r(lev);
        build_delta_table();
    }

    const LeviData& pair() const { return *lev_; }
    const ExtElement& r_rel() const { return rrel_; }

    // bracket of g* transported to g through the bilinear form
    SparseGVec star_bracket(const SparseGVec& x, const SparseGVec& y) const {
        const LieAlgebra& L = *L_;
        SparseGVec xD = comp(x, 'D'), xp = comp(x, '+'), xm = comp(x, '-'), x0 = comp(x, '0');
        SparseGVec yD = comp(y, 'D'), yp = comp(y, '+'), ym = comp(y, '-'), y0 = comp(y, '0');
        SparseGVec out;
        auto acc = [&](const SparseGVec& a, const SparseGVec& b, const Rational& c) {
            for (const auto& [g, v] : gv_bracket(L, a, b)) out.emplace_back(g, c * v);
        };
        acc(xD, yD, 1);
        acc(xD, yp, 1);
        acc(xD, ym, 1);
        acc(xp, yD, 1);
        acc(xm, yD, 1);
        acc(xp, yp, 1);
        acc(xm, ym, -1);
        acc(x0, yp, Rational(1, 2));
        acc(x0, ym, Rational(-1, 2));
        acc(xp, y0, Rational(1, 2));
        acc(xm, y0, Rational(-1, 2));
        return gv_normalize(std::move(out));
    }

    // Chevalley-Eilenberg differential of g* on its exterior coalgebra,
    // fixed by <delta X, u ^ v> = (X, [u,v]*) and derivation extension
    ExtElement delta(const ExtElement& a) const {
        return extend_odd(a, delta_gen_);
    }

    // perturbed differential, Schouten bracket with r_big - r_small
    ExtElement d(const ExtElement& a) const { return schouten(rrel_, a); }

    // right hand side of the comparison with the Chevalley-Eilenberg
    // differential: 2 delta + sum_j e(v_j) [(1 + 2 P_+) ad(v^j)]^wedge
    ExtElement ce_rhs(const ExtElement& a) const {
        const LieAlgebra& L = *L_;
        ExtElement out = delta(a) * Rational(2);
        auto [vs, vduals] = lev_->small_dual_bases();
        for (size_t j = 0; j < vs.size(); ++j) {
            ExtElement ta = derivation(a, [&](int g) {
                SparseGVec br = gv_bracket(L, vduals[j], SparseGVec{{g, Rational(1)}});
                SparseGVec out2 = br;
                for (const auto& [gg, c] : br)
                    if (lev_->zone[gg] == LeviData::Zone::NPlusRel)
                        out2.emplace_back(gg, 2 * c);
                return gv_normalize(std::move(out2));
            });
            ExtElement ext_v(L, 1);
            for (const auto& [g, c] : vs[j]) ext_v.add_term({(uint16_t)g}, c);
            out += wedge(ext_v, ta);
        }
        return out;
    }

    // coadjoint action of xi in g* on g, <ad*(xi) y, eta> = (y, [xi,eta]*)
    SparseGVec adstar_vec(const SparseGVec& xi, const SparseGVec& y) const {
        SparseGVec out;
        for (const auto& [bp, bdual] : duals_) {
            Rational c = 0;
            for (const auto& [g, v] : star_bracket(xi, bdual))
                c += v * gv_form_with(y, g);
            if (c != 0) out.emplace_back(bp, c);
        }
        return gv_normalize(std::move(out));
    }

    // derivation extension of ad*(xi) to the exterior algebra
    ExtElement adstar(const SparseGVec& xi, const ExtElement& a) const {
        return derivation(a, [&](int g) {
            return adstar_vec(xi, SparseGVec{{g, Rational(1)}});
        });
    }

    // contraction against the bilinear form
    ExtElement iota(const SparseGVec& x, const ExtElement& a) const {
        const LieAlgebra& L = *L_;
        ExtElement out(L, a.deg() - 1);
        for (const auto& [m, c] : a.terms())
            for (size_t i = 0; i < m.size(); ++i) {
                Rational v = gv_form_with(x, m[i]);
                if (v == 0) continue;
                ExtIdx idx;
                for (size_t t = 0; t < m.size(); ++t)
                    if (t != i) idx.push_back(m[t]);
                out.add_term(std::move(idx), (i % 2 ? -c : c) * v);
            }
        return out;
    }

    // h = sum_i ad*(t_i) iota(t^i) over dual bases of the relative centre
    ExtElement homotopy(const ExtElement& a) const {
        ExtElement out(*L_, a.deg() - 1);
        auto [ts, tduals] = lev_->crel_dual_bases();
        for (size_t i = 0; i < ts.size(); ++i) out += adstar(ts[i], iota(tduals[i], a));
        return out;
    }

    // C = sum_i ad*(t_i) ad*(t^i), diagonalisable with kernel exterior(l_D)
    ExtElement casimir_op(const ExtElement& a) const {
        ExtElement out(*L_, a.deg());
        auto [ts, tduals] = lev_->crel_dual_bases();
        for (size_t i = 0; i < ts.size(); ++i) out += adstar(ts[i], adstar(tduals[i], a));
        return out;
    }

private:
    const LeviData* lev_;
    const LieAlgebra* L_;
    std::vector<std::pair<int, SparseGVec>> duals_; // basis index, dual vector
    std::vector<ExtElement> delta_gen_;
    ExtElement rrel_;

    SparseGVec comp(const SparseGVec& x, char which) const {
        SparseGVec out;
        for (const auto& [g, c] : x)
            for (const auto& [g2, c2] : lev_->project(g, which)) out.emplace_back(g2, c * c2);
        return gv_normalize(std::move(out));
    }

    Rational gv_form_with(const SparseGVec& x, int g) const {
        Rational c = 0;
        for (const auto& [g2, v] : x) c += v * L_->form(g2, g);
        return c;
    }

    void build_duals() {
        const LieAlgebra& L = *L_;
        for (int i = 0; i < L.dim; ++i) {
            if (lev_->zone[i] == LeviData::Zone::OutsideBig) continue;
            if (L.kind(i) == LieAlgebra::Kind::H) continue;
            int pid = L.root_of(i);
            int partner = L.kind(i) == LieAlgebra::Kind::E ? L.fidx(pid) : L.eidx(pid);
            duals_.push_back({i, {{partner, Rational(1) / L.form(i, partner)}}});
        }
        const auto& nodes = lev_->big.nodes;
        const int n = (int)nodes.size();
        std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                gram[a][b] = L.form(L.hidx(nodes[a]), L.hidx(nodes[b]));
        for (int a = 0; a < n; ++a) {
            std::vector<Rational> rhs(n, 0);
            rhs[a] = 1;
            auto x = detail::solve_dense(gram, rhs);
            SparseGVec dv;
            for (int b = 0; b < n; ++b)
                if (x[b] != 0) dv.emplace_back(L.hidx(nodes[b]), x[b]);
            duals_.push_back({L.hidx(nodes[a]), std::move(dv)});
        }
    }

    void build_delta_table() {
        const LieAlgebra& L = *L_;
        delta_gen_.assign(L.dim, ExtElement(L, 2));
        std::vector<std::vector<SparseGVec>> starbr(duals_.size());
        for (size_t p = 0; p < duals_.size(); ++p) {
            starbr[p].resize(duals_.size());
            for (size_t q = p + 1; q < duals_.size(); ++q)
                starbr[p][q] = star_bracket(duals_[p].second, duals_[q].second);
        }
        for (int g = 0; g < L.dim; ++g) {
            if (lev_->zone[g] == LeviData::Zone::OutsideBig) continue;
            ExtElement dx(L, 2);
            for (size_t p = 0; p < duals_.size(); ++p)
                for (size_t q = p + 1; q < duals_.size(); ++q) {
                    Rational c = 0;
                    for (const auto& [b, v] : starbr[p][q]) c += v * L.form(g, b);
                    if (c != 0)
                        dx.add_unsorted({(uint16_t)duals_[p].first, (uint16_t)duals_[q].first},
                                        c);
                }
            delta_gen_[g] = std::move(dx);
        }
    }

    // odd derivation determined by a per-generator table of degree-2 images,
    // with the Koszul sign for moving it past the first i factors
    ExtElement extend_odd(const ExtElement& a, const std::vector<ExtElement>& table) const {
        const LieAlgebra& L = *L_;
        ExtElement out(L, a.deg() + 1);
        for (const auto& [m, c] : a.terms())
            for (size_t i = 0; i < m.size(); ++i) {
                const ExtElement& im = table[m[i]];
                for (const auto& [pq, v] : im.terms()) {
                    ExtIdx idx;
                    idx.reserve(m.size() + 1);
                    for (size_t t = 0; t < i; ++t) idx.push_back(m[t]);
                    idx.insert(idx.end(), pq.begin(), pq.end());
                    for (size_t t = i + 1; t < m.size(); ++t) idx.push_back(m[t]);
                    Rational cv = c * v;
                    if (i % 2) cv = -cv;
                    out.add_unsorted(std::move(idx), cv);
                }
            }
        return out;
    }

    // even derivation from a generator-level linear map
    template <typename F>
    ExtElement derivation(const ExtElement& a, F&& f) const {
        ExtElement out(*L_, a.deg());
        for (const auto& [m, c] : a.terms())
            for (size_t i = 0; i < m.size(); ++i)
                for (const auto& [g, v] : f((int)m[i])) {
                    ExtIdx idx = m;
                    idx[i] = (uint16_t)g;
                    out.add_unsorted(std::move(idx), c * v);
                }
        return out;
    }
};

// ---------------------------------------------------------------------------
// invariant wedge bases and cohomology of the perturbed complex
// ---------------------------------------------------------------------------

namespace detail {

struct TagExtLess {
    bool operator()(const std::pair<int, ExtIdx>& a, const std::pair<int, ExtIdx>& b) const {
        return a < b;
    }
};

} // namespace detail

using ExtVec = std::map<ExtIdx, Rational>;
using StackedExtSolver = EchelonSolver<std::pair<int, ExtIdx>, detail::TagExtLess>;

inline void stack_ext(std::map<std::pair<int, ExtIdx>, Rational, detail::TagExtLess>& dst,
                      int tag, const ExtElement& a) {
    for (const auto& [m, c] : a.terms()) {
        auto [it, fresh] = dst.try_emplace({tag, m}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) dst.erase(it);
        }
    }
}

// all k-subsets of the given generators
inline std::vector<ExtIdx> ext_subsets(const std::vector<int>& gens, int k) {
    std::vector<ExtIdx> out;
    ExtIdx cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if ((int)cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i + (k - cur.size()) <= gens.size(); ++i) {
            cur.push_back((uint16_t)gens[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// basis of the invariant part of exterior^k(big)
inline std::vector<ExtElement> invariant_ext_basis(const LeviData& lev, int k,
                                                   InvarianceLevel lvl) {
    const LieAlgebra& L = *lev.L;
    std::vector<ExtElement> basis;
    std::vector<SparseGVec> action;
    if (lvl == InvarianceLevel::Levi) action = levi_raising_lowering(lev);
    if (lvl == InvarianceLevel::Big)
        action = levi_raising_lowering(LeviData::make(L, lev.big, lev.big));

    StackedExtSolver solver;
    std::vector<ExtElement> singletons;
    for (const ExtIdx& m : ext_subsets(big_generators(lev), k)) {
        RootCoords w = ext_weight(L, m);
        if (lvl == InvarianceLevel::CRel) {
            if (!lev.crel_weight_zero(w)) continue;
        } else {
            bool zero = true;
            for (int x : w) zero &= (x == 0);
            if (!zero) continue;
        }
        ExtElement t = ext_monomial(L, m);
        if (action.empty()) {
            basis.push_back(std::move(t));
            continue;
        }
        std::map<std::pair<int, ExtIdx>, Rational, detail::TagExtLess> col;
        for (size_t a = 0; a < action.size(); ++a)
            stack_ext(col, (int)a, adjoint_ext(action[a], t));
        auto dep = solver.add_column(std::move(col));
        if (dep) {
            ExtElement v = t;
            for (const auto& [j, c] : *dep) v -= singletons[j] * c;
            basis.push_back(std::move(v));
        }
        singletons.push_back(std::move(t));
    }
    return basis;
}

// solve [[r_big - r_small, chi]] = rhs for an invariant chi of the given
// degree; candidates restricted to the requested invariance level
inline std::optional<ExtElement> solve_schouten_coboundary(const StarComplex& sc,
                                                           const ExtElement& rhs, int deg,
                                                           InvarianceLevel lvl) {
    std::vector<ExtElement> cands = invariant_ext_basis(sc.pair(), deg, lvl);
    EchelonSolver<ExtIdx> solver;
    for (const auto& b : cands) {
        ExtElement db = sc.d(b);
        ExtVec col;
        for (const auto& [m, c] : db.terms()) col.emplace(m, c);
        solver.add_column(std::move(col));
    }
    ExtVec target;
    for (const auto& [m, c] : rhs.terms()) target.emplace(m, c);
    auto sol = solver.solve(std::move(target));
    if (!sol) return std::nullopt;
    ExtElement out(*sc.pair().L, deg);
    for (const auto& [j, c] : *sol) out += cands[j] * c;
    return out;
}

// dimensions of the cohomology of ((exterior big)^{g_small}, d) by degree,
// next to the dimensions of (exterior l_D)^{l_D} they should match
struct CohomologyTable {
    std::vector<int> dims;
    std::vector<int> predicted;
};

// Table of H^k dims for k <= kmax (kmax < 0 computes the whole complex).
inline CohomologyTable cohomology_dims(const LeviData& lev, int kmax = -1) {
    const LieAlgebra& L = *lev.L;
    StarComplex sc(lev);
    std::vector<int> gens = big_generators(lev);
    const int dim_big = (int)gens.size();
    const int ktop = kmax < 0 ? dim_big : std::min(kmax, dim_big);
    std::vector<SparseGVec> action = levi_raising_lowering(lev);

    // small-coroot pairings of a weight, the part every invariant kills
    auto small_pairings = [&](const RootCoords& w) {
        std::vector<long> out;
        for (int node : lev.small.nodes) {
            long v = 0;
            for (int i = 0; i < L.rs.rank; ++i) v += w[i] * L.rs.cart[node][i];
            out.push_back(v);
        }
        return out;
    };
    // centre class of a weight: its values on the relative centre basis
    auto crel_class = [&](const RootCoords& w) {
        std::vector<Rational> key;
        for (const auto& t : lev.crel) {
            Rational v = 0;
            for (int m = 0; m < L.rs.rank; ++m) {
                if (t[m] == 0) continue;
                long pair = 0;
                for (int i = 0; i < L.rs.rank; ++i) pair += w[i] * L.rs.cart[m][i];
                v += t[m] * pair;
            }
            key.push_back(v);
        }
        return key;
    };

    std::vector<int> inv_dim(dim_big + 2, 0), rank(dim_big + 2, 0);
    for (int k = 0; k <= ktop; ++k) {
        // group candidate monomials by centre class; the small action and
        // the differential both preserve the class
        std::map<std::vector<Rational>, std::vector<ExtIdx>> classes;
        for (const ExtIdx& m : ext_subsets(gens, k)) {
            RootCoords w = ext_weight(L, m);
            bool flat = true;
            for (long v : small_pairings(w)) flat &= (v == 0);
            if (!flat) continue;
            classes[crel_class(w)].push_back(m);
        }
        for (const auto& [key, monos] : classes) {
            // invariants within the class, then the rank of d on them
            StackedExtSolver ksolver;
            std::vector<ExtElement> singles;
            std::vector<ExtElement> inv;
            for (const ExtIdx& m : monos) {
                ExtElement t = ext_monomial(L, m);
                if (action.empty()) {
                    inv.push_back(std::move(t));
                    continue;
                }
                std::map<std::pair<int, ExtIdx>, Rational, detail::TagExtLess> col;
                for (size_t a = 0; a < action.size(); ++a)
                    stack_ext(col, (int)a, adjoint_ext(action[a], t));
                auto dep = ksolver.add_column(std::move(col));
                if (dep) {
                    ExtElement v = t;
                    for (const auto& [j, c] : *dep) v -= singles[j] * c;
                    inv.push_back(std::move(v));
                }
                singles.push_back(std::move(t));
            }
            inv_dim[k] += (int)inv.size();
            EchelonSolver<ExtIdx> rsolver;
            for (const auto& b : inv) {
                ExtElement db = sc.d(b);
                ExtVec col;
                for (const auto& [m, c] : db.terms()) col.emplace(m, c);
                rsolver.add_column(std::move(col));
            }
            rank[k] += rsolver.rank();
        }
    }

    CohomologyTable table;
    table.dims.resize(ktop + 1);
    for (int k = 0; k <= ktop; ++k)
        table.dims[k] = inv_dim[k] - rank[k] - (k ? rank[k - 1] : 0);

    // prediction: invariants of the Levi acting on its own exterior algebra
    std::vector<int> lgens;
    for (int i = 0; i < L.dim; ++i) {
        auto z = lev.zone[i];
        if (z == LeviData::Zone::SmallRoot || z == LeviData::Zone::Cartan) lgens.push_back(i);
    }
    table.predicted.assign(ktop + 1, 0);
    for (int k = 0; k <= std::min(ktop, (int)lgens.size()); ++k) {
        StackedExtSolver ksolver;
        int found = 0, seen = 0;
        std::vector<ExtElement> singles;
        for (const ExtIdx& m : ext_subsets(lgens, k)) {
            RootCoords w = ext_weight(L, m);
            bool zero = true;
            for (int x : w) zero &= (x == 0);
            if (!zero) continue;
            ++seen;
            ExtElement t = ext_monomial(L, m);
            if (action.empty()) {
                ++found;
                continue;
            }
            std::map<std::pair<int, ExtIdx>, Rational, detail::TagExtLess> col;
            for (size_t a = 0; a < action.size(); ++a)
                stack_ext(col, (int)a, adjoint_ext(action[a], t));
            if (ksolver.add_column(std::move(col))) ++found;
            singles.push_back(std::move(t));
        }
        (void)seen;
        table.predicted[k] = found;
    }
    return table;
}

} // namespace reltwist
