/*
 * invariants.hpp -- weight-constrained monomial bases and coboundary solves.
 *
 * Everything here reduces to exact sparse echelon over Q.  Monomial
 * enumeration prunes on the weight coordinates that have to cancel, which
 * keeps the candidate spaces small enough for the twist construction.
 * The coboundary solver stacks the differential together with the Levi
 * invariance constraints into a single linear system, so any solution it
 * returns is invariant without a separate projection step.
 */
#pragma once

#include "hc.hpp"
#include "linalg.hpp"

namespace reltwist {

namespace detail {

struct TagMonoLess {
    bool operator()(const std::pair<int, Mono>& a, const std::pair<int, Mono>& b) const {
        if (a.first != b.first) return a.first < b.first;
        return MonoLess{}(a.second, b.second);
    }
};

} // namespace detail

using StackedVec = std::map<std::pair<int, Mono>, Rational, detail::TagMonoLess>;
using StackedSolver = EchelonSolver<std::pair<int, Mono>, detail::TagMonoLess>;

inline void stack_element(StackedVec& dst, int tag, const TensorElement& a,
                          const Rational& scale = 1) {
    for (const auto& [m, c] : a.terms()) {
        auto [it, fresh] = dst.try_emplace({tag, m}, 0);
        it->second += scale * c;
        if (it->second == 0) dst.erase(it);
    }
}

// All PBW monomials of U(g)^{tensor k} with total degree <= maxdeg, drawn
// from the allowed generators, whose total weight vanishes on the listed
// coordinates.  Sorted by the graded monomial order.
inline std::vector<Mono> weight_zero_monomials(const LieAlgebra& L, int k, int maxdeg,
                                               const std::vector<int>& zero_coords,
                                               const std::vector<int>& allowed_gens) {
    const int nv = (int)allowed_gens.size();
    // largest step any generator can take on each constrained coordinate
    std::vector<long> maxstep(zero_coords.size(), 0);
    for (int g : allowed_gens)
        for (size_t c = 0; c < zero_coords.size(); ++c)
            maxstep[c] = std::max(maxstep[c], (long)std::abs(L.weight(g)[zero_coords[c]]));

    std::vector<Mono> out;
    Mono cur;
    cur.slots.resize(k);
    std::vector<long> w(zero_coords.size(), 0);

    std::function<void(int, int, int)> rec = [&](int slot, int vi, int rem) {
        for (size_t c = 0; c < w.size(); ++c)
            if (std::abs(w[c]) > (long)rem * maxstep[c]) return;
        if (slot == k) {
            for (long x : w)
                if (x) return;
            out.push_back(cur);
            return;
        }
        if (vi == nv) {
            rec(slot + 1, 0, rem);
            return;
        }
        rec(slot, vi + 1, rem); // exponent 0
        const int g = allowed_gens[vi];
        const RootCoords& wg = L.weight(g);
        cur.slots[slot].push_back({(uint16_t)g, 0});
        for (int e = 1; e <= rem; ++e) {
            cur.slots[slot].back().second = (uint16_t)e;
            for (size_t c = 0; c < w.size(); ++c) w[c] += wg[zero_coords[c]];
            rec(slot, vi + 1, rem - e);
        }
        for (size_t c = 0; c < w.size(); ++c)
            w[c] -= (long)cur.slots[slot].back().second * wg[zero_coords[c]];
        cur.slots[slot].pop_back();
    };
    rec(0, 0, maxdeg);
    std::sort(out.begin(), out.end(), [](const Mono& a, const Mono& b) {
        return MonoLess{}(a, b);
    });
    return out;
}

inline std::vector<int> all_coords(const LieAlgebra& L) {
    std::vector<int> v(L.rs.rank);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// generators of the big subalgebra of the pair
inline std::vector<int> big_generators(const LeviData& lev) {
    std::vector<int> v;
    for (int i = 0; i < lev.L->dim; ++i)
        if (lev.zone[i] != LeviData::Zone::OutsideBig) v.push_back(i);
    return v;
}

// e_i, f_i for the small diagram's nodes, as elements of the ambient algebra
inline std::vector<SparseGVec> levi_raising_lowering(const LeviData& lev) {
    const LieAlgebra& L = *lev.L;
    std::vector<SparseGVec> gens;
    for (int node : lev.small.nodes) {
        RootCoords alpha(L.rs.rank, 0);
        alpha[node] = 1;
        int pid = L.rs.root_id(alpha);
        gens.push_back({{L.eidx(pid), Rational(1)}});
        gens.push_back({{L.fidx(pid), Rational(1)}});
    }
    return gens;
}

enum class InvarianceLevel {
    CRel, // relative Cartan centre only
    Levi, // small Levi subalgebra
    Big   // all of the big subalgebra
};

// basis of the invariant subspace of U(big)^{tensor k}, degree <= maxdeg
inline std::vector<TensorElement> invariant_tensor_basis(const LeviData& lev, int k, int maxdeg,
                                                         InvarianceLevel lvl) {
    const LieAlgebra& L = *lev.L;
    std::vector<int> gens = big_generators(lev);
    std::vector<int> coords = lvl == InvarianceLevel::CRel ? lev.drop : all_coords(L);
    std::vector<Mono> monos = weight_zero_monomials(L, k, maxdeg, coords, gens);

    std::vector<SparseGVec> action;
    if (lvl == InvarianceLevel::Levi) action = levi_raising_lowering(lev);
    if (lvl == InvarianceLevel::Big) {
        LeviData full = LeviData::make(L, lev.big, lev.big);
        action = levi_raising_lowering(full);
    }

    std::vector<TensorElement> basis;
    if (action.empty()) {
        for (const Mono& m : monos) {
            TensorElement t(L, k);
            t.add_term(m, 1);
            basis.push_back(std::move(t));
        }
        return basis;
    }
    StackedSolver solver;
    std::vector<TensorElement> singletons;
    for (const Mono& m : monos) {
        TensorElement t(L, k);
        t.add_term(m, 1);
        StackedVec col;
        for (size_t a = 0; a < action.size(); ++a)
            stack_element(col, (int)a, adjoint_action(action[a], t));
        auto dep = solver.add_column(std::move(col));
        if (dep) {
            TensorElement v = t;
            for (const auto& [j, c] : *dep) v -= singletons[j] * c;
            basis.push_back(std::move(v));
        }
        singletons.push_back(std::move(t));
    }
    return basis;
}

// Solve d_H g = xi for a Levi-invariant g of degree <= cap, escalating the
// degree cap when the system is infeasible.  Returns nullopt if every cap up
// to maxcap fails.
// sizes of the last stacked solve, for reporting
struct CoboundaryStats {
    int candidates = 0;
    int escalations = 0;
    int degree_used = 0;
};

inline std::optional<TensorElement> solve_hochschild_coboundary(const LeviData& lev,
                                                                const TensorElement& xi, int cap,
                                                                int maxcap,
                                                                CoboundaryStats* stats = nullptr) {
    const LieAlgebra& L = *lev.L;
    const int k = xi.k() - 1;
    std::vector<int> gens = big_generators(lev);
    std::vector<SparseGVec> action = levi_raising_lowering(lev);
    for (int tries = 0; cap <= maxcap; cap += 2, ++tries) {
        std::vector<Mono> monos = weight_zero_monomials(L, k, cap, all_coords(L), gens);
        if (stats) {
            stats->candidates = (int)monos.size();
            stats->escalations = tries;
            stats->degree_used = cap;
        }
        StackedSolver solver;
        std::vector<TensorElement> cands;
        for (const Mono& m : monos) {
            TensorElement t(L, k);
            t.add_term(m, 1);
            StackedVec col;
            stack_element(col, -1, hochschild_d(t));
            for (size_t a = 0; a < action.size(); ++a)
                stack_element(col, (int)a, adjoint_action(action[a], t));
            solver.add_column(std::move(col));
            cands.push_back(std::move(t));
        }
        StackedVec target;
        stack_element(target, -1, xi);
        auto sol = solver.solve(std::move(target));
        if (!sol) continue;
        TensorElement g(L, k);
        for (const auto& [j, c] : *sol) g += cands[j] * c;
        return g;
    }
    return std::nullopt;
}

} // namespace reltwist
