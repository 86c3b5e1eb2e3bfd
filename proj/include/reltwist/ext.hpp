/*
 * ext.hpp -- exterior algebra over g, Schouten calculus, r-matrices.
 *
 * Wedge monomials are strictly increasing index sets over the Chevalley
 * basis.  The identification with tensors uses the normalised
 * antisymmetriser (1/k! times the signed sum over permutations), so
 * embedding e wedge f gives (e (x) f - f (x) e)/2.
 */
#pragma once

#include "tensor.hpp"

namespace reltwist {

using ExtIdx = std::vector<uint16_t>;

// sorts idx in place, returns the permutation sign, 0 on a repeated index
inline int sort_sign(ExtIdx& idx) {
    int sg = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j] <= idx[j - 1]; --j) {
            if (idx[j] == idx[j - 1]) return 0;
            std::swap(idx[j], idx[j - 1]);
            sg = -sg;
        }
    return sg;
}

class ExtElement {
public:
    ExtElement() = default;
    ExtElement(const LieAlgebra& L, int deg) : L_(&L), deg_(deg) {}

    const LieAlgebra& algebra() const { return *L_; }
    int deg() const { return deg_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<ExtIdx, Rational>& terms() const { return terms_; }

    void add_term(ExtIdx idx, const Rational& c) {
        if (c == 0) return;
        if ((int)idx.size() != deg_) throw std::invalid_argument("wedge degree mismatch");
        auto [it, fresh] = terms_.try_emplace(std::move(idx), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    // accepts an unsorted index list, normalising the sign
    void add_unsorted(ExtIdx idx, const Rational& c) {
        int sg = sort_sign(idx);
        if (sg) add_term(std::move(idx), sg > 0 ? c : -c);
    }
    Rational coeff(const ExtIdx& idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    ExtElement& operator+=(const ExtElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ExtElement& operator-=(const ExtElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    ExtElement& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
    friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
    friend ExtElement operator*(ExtElement a, const Rational& c) { return a *= c; }
    friend ExtElement operator*(const Rational& c, ExtElement a) { return a *= c; }
    bool operator==(const ExtElement& o) const { return deg_ == o.deg_ && terms_ == o.terms_; }

private:
    const LieAlgebra* L_ = nullptr;
    int deg_ = 0;
    std::map<ExtIdx, Rational> terms_;
};

inline ExtElement wedge(const ExtElement& a, const ExtElement& b) {
    ExtElement out(a.algebra(), a.deg() + b.deg());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            ExtIdx idx = ma;
            idx.insert(idx.end(), mb.begin(), mb.end());
            out.add_unsorted(std::move(idx), ca * cb);
        }
    return out;
}

inline ExtElement ext_monomial(const LieAlgebra& L, ExtIdx idx, const Rational& c = 1) {
    ExtElement out(L, (int)idx.size());
    out.add_unsorted(std::move(idx), c);
    return out;
}

// Schouten bracket, sum over (i,j) of (-1)^{i+j} [X_i,Y_j] ^ rest
inline ExtElement schouten(const ExtElement& a, const ExtElement& b) {
    const LieAlgebra& L = a.algebra();
    ExtElement out(L, a.deg() + b.deg() - 1);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            for (size_t i = 0; i < ma.size(); ++i)
                for (size_t j = 0; j < mb.size(); ++j) {
                    int sign = ((i + j) % 2) ? -1 : 1; // (-1)^{(i+1)+(j+1)}
                    for (const auto& [g, cg] : L.bracket(ma[i], mb[j])) {
                        ExtIdx idx;
                        idx.reserve(ma.size() + mb.size() - 1);
                        idx.push_back((uint16_t)g);
                        for (size_t t = 0; t < ma.size(); ++t)
                            if (t != i) idx.push_back(ma[t]);
                        for (size_t t = 0; t < mb.size(); ++t)
                            if (t != j) idx.push_back(mb[t]);
                        out.add_unsorted(std::move(idx), ca * cb * cg * sign);
                    }
                }
    return out;
}

// derivation action of x on the exterior algebra
inline ExtElement adjoint_ext(const SparseGVec& x, const ExtElement& a) {
    const LieAlgebra& L = a.algebra();
    ExtElement out(L, a.deg());
    for (const auto& [m, c] : a.terms())
        for (size_t i = 0; i < m.size(); ++i)
            for (const auto& [xi, xc] : x)
                for (const auto& [g, cg] : L.bracket(xi, m[i])) {
                    ExtIdx idx = m;
                    idx[i] = (uint16_t)g;
                    out.add_unsorted(std::move(idx), c * xc * cg);
                }
    return out;
}

inline ExtElement theta_ext(const ExtElement& a) {
    const LieAlgebra& L = a.algebra();
    ExtElement out(L, a.deg());
    for (const auto& [m, c] : a.terms()) {
        ExtIdx idx;
        for (uint16_t g : m) idx.push_back((uint16_t)L.theta_index(g));
        out.add_unsorted(std::move(idx), (a.deg() % 2) ? -c : c);
    }
    return out;
}

inline RootCoords ext_weight(const LieAlgebra& L, const ExtIdx& m) {
    RootCoords w(L.rs.rank, 0);
    for (uint16_t g : m) {
        const RootCoords& wg = L.weight(g);
        for (int r = 0; r < L.rs.rank; ++r) w[r] += wg[r];
    }
    return w;
}

// normalised antisymmetriser embedding into U(g)^{tensor k}
inline TensorElement embed_ext(const ExtElement& a) {
    const LieAlgebra& L = a.algebra();
    const int k = a.deg();
    TensorElement out(L, k);
    Rational fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    std::vector<int> perm(k);
    for (const auto& [m, c] : a.terms()) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Mono mm;
            mm.slots.resize(k);
            for (int s = 0; s < k; ++s) mm.slots[s] = Slot{{m[perm[s]], 1}};
            out.add_term(mm, c * perm_sign(perm) / fact);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

// strict inverse of embed_ext; nullopt if a is not an embedded wedge element
inline std::optional<ExtElement> unembed_ext(const TensorElement& a) {
    const LieAlgebra& L = a.algebra();
    const int k = a.k();
    Rational fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    ExtElement out(L, k);
    for (const auto& [m, c] : a.terms()) {
        ExtIdx idx;
        bool increasing = true;
        for (const auto& s : m.slots) {
            if (s.size() != 1 || s[0].second != 1) return std::nullopt;
            if (!idx.empty() && s[0].first <= idx.back()) increasing = false;
            idx.push_back(s[0].first);
        }
        if (increasing) out.add_term(std::move(idx), c * fact);
    }
    if (!(embed_ext(out) == a)) return std::nullopt;
    return out;
}

// difference of the standard r-matrices of the pair's big and small parts
inline ExtElement relative_r(const LeviData& lev) {
    const LieAlgebra& L = *lev.L;
    ExtElement out(L, 2);
    for (const auto& pr : L.rs.pos) {
        int pid = L.rs.root_id(pr.coords);
        int e = L.eidx(pid);
        if (lev.zone[e] != LeviData::Zone::NPlusRel) continue;
        Rational coef = Rational(pr.norm2) / (2 * L.form_scale[pr.factor]);
        out.add_term({(uint16_t)L.fidx(pid), (uint16_t)e}, -coef); // e ^ f, sorted
    }
    return out;
}

// symmetric invariant 2-tensor of the big subalgebra from dual bases
inline TensorElement casimir_tensor(const LeviData& lev) {
    const LieAlgebra& L = *lev.L;
    TensorElement out(L, 2);
    for (const auto& pr : L.rs.pos) {
        int pid = L.rs.root_id(pr.coords);
        int e = L.eidx(pid), f = L.fidx(pid);
        if (lev.zone[e] == LeviData::Zone::OutsideBig) continue;
        Rational coef = Rational(pr.norm2) / (2 * L.form_scale[pr.factor]);
        out += from_words(L, {{e}, {f}}, coef);
        out += from_words(L, {{f}, {e}}, coef);
    }
    const auto& nodes = lev.big.nodes;
    const int n = (int)nodes.size();
    std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram[i][j] = L.form(L.hidx(nodes[i]), L.hidx(nodes[j]));
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> rhs(n, 0);
        rhs[j] = 1;
        std::vector<Rational> col = detail::solve_dense(gram, rhs);
        for (int i = 0; i < n; ++i)
            if (col[i] != 0)
                out += from_words(L, {{L.hidx(nodes[i])}, {L.hidx(nodes[j])}}, col[i]);
    }
    return out;
}

// classical Yang-Baxter map on 2-tensors, landing in U(g)^{tensor 3}
inline TensorElement yb_map(const TensorElement& r, const TensorElement& s) {
    auto at = [&](const TensorElement& t, int a, int b) {
        return place_slots(t, {a, b}, 3);
    };
    auto comm = [](const TensorElement& x, const TensorElement& y) {
        return multiply(x, y) - multiply(y, x);
    };
    TensorElement r12 = at(r, 0, 1), r13 = at(r, 0, 2), r23 = at(r, 1, 2);
    TensorElement s12 = at(s, 0, 1), s13 = at(s, 0, 2), s23 = at(s, 1, 2);
    return comm(r12, s13) + comm(r12, s23) + comm(r13, s23) + comm(s12, r13) + comm(s12, r23) +
           comm(s13, r23);
}

} // namespace reltwist
