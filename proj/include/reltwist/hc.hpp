/*
 * hc.hpp -- Harish-Chandra style projections for a nested diagram pair.
 *
 * Both maps act per tensor slot.  hc_project kills every monomial that
 * touches a root vector strictly between the small and the big subalgebra;
 * hc_project_bar additionally pushes Cartan generators through the
 * commutation-compatible projection onto the small Cartan.  Inputs must be
 * invariant under the relative Cartan centre, which is what makes the
 * monomial-dropping description of the projection correct; anything else is
 * rejected as a domain error.
 */
#pragma once

#include "tensor.hpp"

namespace reltwist {

namespace detail {

// true if some generator of the monomial sits in the relative nilpotent zones
inline bool touches_relative_zone(const LeviData& lev, const Mono& m) {
    for (const auto& s : m.slots)
        for (const auto& [idx, e] : s) {
            auto z = lev.zone[idx];
            if (z == LeviData::Zone::NPlusRel || z == LeviData::Zone::NMinusRel) return true;
            if (z == LeviData::Zone::OutsideBig)
                throw std::invalid_argument("projection input leaves the big subalgebra");
        }
    return false;
}

// restore ascending index order after substituting inside the commuting
// Cartan run; f and e entries are already in place
inline Slot resort_slot(Slot s) {
    std::sort(s.begin(), s.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Slot out;
    for (const auto& [idx, e] : s) {
        if (!out.empty() && out.back().first == idx)
            out.back().second += e;
        else
            out.push_back({idx, e});
    }
    return out;
}

} // namespace detail

// pi: drop every monomial meeting the relative nilpotent parts
inline TensorElement hc_project(const LeviData& lev, const TensorElement& a) {
    if (!is_crel_invariant(lev, a))
        throw std::domain_error("harish-chandra projection needs a c_rel-invariant input");
    TensorElement out(a.algebra(), a.k());
    for (const auto& [m, c] : a.terms())
        if (!detail::touches_relative_zone(lev, m)) out.add_term(m, c);
    return out;
}

// pi-bar: pi followed by h_i -> p(h_i) in every slot, expanded commutatively
inline TensorElement hc_project_bar(const LeviData& lev, const TensorElement& a) {
    const LieAlgebra& L = a.algebra();
    TensorElement pa = hc_project(lev, a);
    TensorElement out(L, a.k());
    for (const auto& [m, c] : pa.terms()) {
        // per slot: substitute the h-run, keep f/e runs in place
        std::vector<SlotElem> parts(a.k());
        for (int s = 0; s < a.k(); ++s) {
            SlotElem acc{{Slot{}, Rational(1)}};
            for (const auto& [idx, e] : m.slots[s]) {
                SlotElem next;
                if (L.kind(idx) != LieAlgebra::Kind::H) {
                    for (const auto& [sl, cc] : acc) {
                        Slot s2 = sl;
                        s2.push_back({idx, e});
                        detail::slot_accum(next, detail::resort_slot(std::move(s2)), cc);
                    }
                } else {
                    const SparseGVec& p = lev.cartan_proj(L.node_of(idx));
                    // (sum_j p_j h_j)^e, expanded over the commuting h's
                    next = acc;
                    for (int rep = 0; rep < e && !next.empty(); ++rep) {
                        SlotElem stage;
                        for (const auto& [sl, cc] : next)
                            for (const auto& [hj, pj] : p) {
                                Slot s2 = sl;
                                s2.push_back({(uint16_t)hj, 1});
                                detail::slot_accum(stage, detail::resort_slot(std::move(s2)),
                                                   cc * pj);
                            }
                        next = std::move(stage);
                    }
                }
                acc = std::move(next);
                if (acc.empty()) break;
            }
            parts[s] = std::move(acc);
        }
        std::function<void(int, Mono&, Rational)> rec = [&](int s, Mono& mm, Rational cc) {
            if (s == a.k()) {
                out.add_term(mm, cc);
                return;
            }
            for (const auto& [sl, c2] : parts[s]) {
                mm.slots[s] = sl;
                rec(s + 1, mm, cc * c2);
            }
        };
        Mono mm;
        mm.slots.resize(a.k());
        rec(0, mm, c);
    }
    return out;
}

} // namespace reltwist
