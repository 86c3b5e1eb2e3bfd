/*
 * tensor.hpp -- sparse exact arithmetic in U(g)^{tensor k}.
 *
 * Monomials are PBW normal words per tensor slot: exponent vectors over the
 * global basis order of lie_algebra.hpp (all f's, then h's, then e's), kept
 * as sorted (index, exponent) runs.  Products straighten via the rewriting
 * rule x y = y x + [x,y] for x > y; single-generator left multiplications
 * are memoized per algebra type, which is where all the speed comes from.
 */
#pragma once

#include "lie_algebra.hpp"

#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace reltwist {

// one tensor slot: positive exponents over basis indices, ascending
using Slot = std::vector<std::pair<uint16_t, uint16_t>>;

struct Mono {
    std::vector<Slot> slots;

    int degree() const {
        int d = 0;
        for (const auto& s : slots)
            for (const auto& [idx, e] : s) d += e;
        return d;
    }
    int slot_degree(int i) const {
        int d = 0;
        for (const auto& [idx, e] : slots[i]) d += e;
        return d;
    }
    bool operator==(const Mono& o) const { return slots == o.slots; }
};

// graded order: total degree, then slotwise lexicographic
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.slots < b.slots;
    }
};

using TermMap = std::map<Mono, Rational, MonoLess>;

class TensorElement {
public:
    TensorElement() = default;
    TensorElement(const LieAlgebra& L, int k) : L_(&L), k_(k) {}

    static TensorElement unit(const LieAlgebra& L, int k) {
        TensorElement t(L, k);
        t.terms_[Mono{std::vector<Slot>(k)}] = 1;
        return t;
    }

    const LieAlgebra& algebra() const { return *L_; }
    int k() const { return k_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    int degree() const { // top filtration degree, -1 for zero
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add_term(const Mono& m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational scalar_part() const { return coeff(Mono{std::vector<Slot>(k_)}); }

    TensorElement& operator+=(const TensorElement& o) {
        check_compat(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TensorElement& operator-=(const TensorElement& o) {
        check_compat(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    TensorElement& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(TensorElement a, const Rational& c) { return a *= c; }
    friend TensorElement operator*(const Rational& c, TensorElement a) { return a *= c; }
    bool operator==(const TensorElement& o) const { return k_ == o.k_ && terms_ == o.terms_; }

private:
    const LieAlgebra* L_ = nullptr;
    int k_ = 0;
    TermMap terms_;

    void check_compat(const TensorElement& o) const {
        if (k_ != o.k_) throw std::invalid_argument("tensor slot count mismatch");
    }
};

// ---------------------------------------------------------------------------
// straightening
// ---------------------------------------------------------------------------

using SlotElem = std::map<Slot, Rational>;

namespace detail {

struct SlotHash {
    size_t operator()(const std::pair<int, Slot>& key) const {
        size_t h = 1469598103934665603ull ^ (size_t)key.first;
        for (auto& [i, e] : key.second) {
            h = (h ^ i) * 1099511628211ull;
            h = (h ^ e) * 1099511628211ull;
        }
        return h;
    }
};

struct StraightenCache {
    std::unordered_map<std::pair<int, Slot>, SlotElem, SlotHash> leftmul;
    std::mutex mu;
};

inline StraightenCache& cache_for(const LieAlgebra& L) {
    static std::map<std::string, StraightenCache> caches;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    return caches[L.rs.type];
}

inline void slot_accum(SlotElem& dst, const Slot& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = dst.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) dst.erase(it);
    }
}

// g * m in normal form, m already normal
inline SlotElem left_mul(const LieAlgebra& L, int g, const Slot& m) {
    if (m.empty() || g <= m.front().first) {
        Slot out = m;
        if (!out.empty() && out.front().first == g)
            out.front().second += 1;
        else
            out.insert(out.begin(), {(uint16_t)g, 1});
        return {{out, Rational(1)}};
    }
    auto& C = cache_for(L);
    {
        std::lock_guard<std::mutex> lk(C.mu);
        auto it = C.leftmul.find({g, m});
        if (it != C.leftmul.end()) return it->second;
    }
    // m = x * rest with x = min generator; g > x here
    int x = m.front().first;
    Slot rest = m;
    if (rest.front().second > 1)
        rest.front().second -= 1;
    else
        rest.erase(rest.begin());
    SlotElem out;
    for (const auto& [mm, cc] : left_mul(L, g, rest)) // x * (g * rest)
        for (const auto& [m2, c2] : left_mul(L, x, mm)) slot_accum(out, m2, cc * c2);
    for (const auto& [b, cb] : L.bracket(g, x)) // [g,x] * rest
        for (const auto& [m2, c2] : left_mul(L, b, rest)) slot_accum(out, m2, cb * c2);
    {
        std::lock_guard<std::mutex> lk(C.mu);
        C.leftmul.try_emplace({g, m}, out);
    }
    return out;
}

inline SlotElem slot_mul(const LieAlgebra& L, const Slot& a, const Slot& b) {
    SlotElem acc{{b, Rational(1)}};
    // fold generators of a from the right
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        for (int rep = 0; rep < it->second; ++rep) {
            SlotElem next;
            for (const auto& [m, c] : acc)
                for (const auto& [m2, c2] : left_mul(L, it->first, m))
                    slot_accum(next, m2, c * c2);
            acc = std::move(next);
        }
    return acc;
}

// normal form of an arbitrary word of generators
inline SlotElem word_to_slot(const LieAlgebra& L, const std::vector<int>& word) {
    SlotElem acc{{Slot{}, Rational(1)}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        SlotElem next;
        for (const auto& [m, c] : acc)
            for (const auto& [m2, c2] : left_mul(L, *it, m)) slot_accum(next, m2, c * c2);
        acc = std::move(next);
    }
    return acc;
}

inline std::vector<int> slot_to_word(const Slot& s) {
    std::vector<int> w;
    for (const auto& [idx, e] : s)
        for (int r = 0; r < e; ++r) w.push_back(idx);
    return w;
}

} // namespace detail

// ---------------------------------------------------------------------------
// algebra operations
// ---------------------------------------------------------------------------

inline TensorElement multiply(const TensorElement& a, const TensorElement& b) {
    if (a.k() != b.k()) throw std::invalid_argument("tensor slot count mismatch");
    const LieAlgebra& L = a.algebra();
    const int k = a.k();
    TensorElement out(L, k);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            // per-slot products, then distribute
            std::vector<SlotElem> parts(k);
            for (int s = 0; s < k; ++s) parts[s] = detail::slot_mul(L, ma.slots[s], mb.slots[s]);
            std::vector<SlotElem::const_iterator> at(k);
            for (int s = 0; s < k; ++s) {
                if (parts[s].empty()) goto next_pair;
                at[s] = parts[s].begin();
            }
            for (;;) {
                Mono m;
                m.slots.resize(k);
                Rational c = ca * cb;
                for (int s = 0; s < k; ++s) {
                    m.slots[s] = at[s]->first;
                    c *= at[s]->second;
                }
                out.add_term(m, c);
                int s = k - 1;
                while (s >= 0 && ++at[s] == parts[s].end()) {
                    at[s] = parts[s].begin();
                    --s;
                }
                if (s < 0) break;
            }
        next_pair:;
        }
    return out;
}

// build an element from one word per slot
inline TensorElement from_words(const LieAlgebra& L,
                                const std::vector<std::vector<int>>& words,
                                const Rational& coef = 1) {
    const int k = (int)words.size();
    TensorElement out(L, k);
    std::vector<SlotElem> parts(k);
    for (int s = 0; s < k; ++s) parts[s] = detail::word_to_slot(L, words[s]);
    std::function<void(int, Mono&, Rational)> rec = [&](int s, Mono& m, Rational c) {
        if (s == k) {
            out.add_term(m, c);
            return;
        }
        for (const auto& [sl, cc] : parts[s]) {
            m.slots[s] = sl;
            rec(s + 1, m, c * cc);
        }
    };
    Mono m;
    m.slots.resize(k);
    rec(0, m, coef);
    return out;
}

// coproduct applied to slot i (1-based): U^k -> U^{k+1}
inline TensorElement coproduct_at(const TensorElement& a, int i) {
    const LieAlgebra& L = a.algebra();
    const int k = a.k();
    if (i < 1 || i > k) throw std::invalid_argument("coproduct slot out of range");
    TensorElement out(L, k + 1);
    for (const auto& [m, c] : a.terms()) {
        // binomial expansion of Delta over the slot's entries; the two output
        // slots stay sorted because entries are visited in ascending order
        std::vector<std::pair<Slot, Slot>> splits{{Slot{}, Slot{}}};
        std::vector<Rational> coefs{Rational(1)};
        for (const auto& [idx, e] : m.slots[i - 1]) {
            std::vector<std::pair<Slot, Slot>> nsplits;
            std::vector<Rational> ncoefs;
            Rational binom = 1;
            for (int j = 0; j <= e; ++j) {
                if (j > 0) binom = binom * Rational(e - j + 1) / Rational(j);
                for (size_t t = 0; t < splits.size(); ++t) {
                    auto [lo, hi] = splits[t];
                    if (j) lo.push_back({idx, (uint16_t)j});
                    if (e - j) hi.push_back({idx, (uint16_t)(e - j)});
                    nsplits.push_back({std::move(lo), std::move(hi)});
                    ncoefs.push_back(coefs[t] * binom);
                }
            }
            splits = std::move(nsplits);
            coefs = std::move(ncoefs);
        }
        for (size_t t = 0; t < splits.size(); ++t) {
            Mono mm;
            mm.slots.reserve(k + 1);
            for (int s = 0; s < i - 1; ++s) mm.slots.push_back(m.slots[s]);
            mm.slots.push_back(splits[t].first);
            mm.slots.push_back(splits[t].second);
            for (int s = i; s < k; ++s) mm.slots.push_back(m.slots[s]);
            out.add_term(mm, c * coefs[t]);
        }
    }
    return out;
}

// counit applied to slot i (1-based): keeps terms with that slot empty
inline TensorElement counit_at(const TensorElement& a, int i) {
    const LieAlgebra& L = a.algebra();
    const int k = a.k();
    if (i < 1 || i > k) throw std::invalid_argument("counit slot out of range");
    TensorElement out(L, k - 1);
    for (const auto& [m, c] : a.terms()) {
        if (!m.slots[i - 1].empty()) continue;
        Mono mm;
        for (int s = 0; s < k; ++s)
            if (s != i - 1) mm.slots.push_back(m.slots[s]);
        out.add_term(mm, c);
    }
    return out;
}

// place the slots of a at the given 0-based positions of a k_total-slot
// element, empty slots elsewhere
inline TensorElement place_slots(const TensorElement& a, const std::vector<int>& pos, int k_total) {
    if ((int)pos.size() != a.k()) throw std::invalid_argument("place_slots arity mismatch");
    TensorElement out(a.algebra(), k_total);
    for (const auto& [m, c] : a.terms()) {
        Mono mm;
        mm.slots.resize(k_total);
        for (int s = 0; s < a.k(); ++s) mm.slots[pos[s]] = m.slots[s];
        out.add_term(mm, c);
    }
    return out;
}

// result slot s takes source slot perm[s]; a^{321} = permute(a, {2,1,0})
inline TensorElement permute(const TensorElement& a, const std::vector<int>& perm) {
    if ((int)perm.size() != a.k()) throw std::invalid_argument("permutation arity mismatch");
    TensorElement out(a.algebra(), a.k());
    for (const auto& [m, c] : a.terms()) {
        Mono mm;
        mm.slots.resize(a.k());
        for (int s = 0; s < a.k(); ++s) mm.slots[s] = m.slots[perm[s]];
        out.add_term(mm, c);
    }
    return out;
}

// Hochschild differential U^k -> U^{k+1}
inline TensorElement hochschild_d(const TensorElement& a) {
    const int k = a.k();
    std::vector<int> shift, keep;
    for (int s = 0; s < k; ++s) {
        shift.push_back(s + 1);
        keep.push_back(s);
    }
    TensorElement out = place_slots(a, shift, k + 1); // 1 (x) a
    for (int i = 1; i <= k; ++i) {
        TensorElement t = coproduct_at(a, i);
        out += (i % 2 ? t * Rational(-1) : t);
    }
    TensorElement tail = place_slots(a, keep, k + 1); // a (x) 1
    out += (k % 2 ? tail : tail * Rational(-1)); // sign (-1)^{k+1}
    return out;
}

inline int perm_sign(std::vector<int> p) {
    int sg = 1;
    for (size_t i = 0; i < p.size(); ++i)
        while ((size_t)p[i] != i) {
            std::swap(p[i], p[p[i]]);
            sg = -sg;
        }
    return sg;
}

// full antisymmetrisation (1/k!) sum_sigma sign(sigma) sigma(a)
inline TensorElement alt(const TensorElement& a) {
    const int k = a.k();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    TensorElement out(a.algebra(), k);
    Rational fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    do {
        TensorElement t = permute(a, perm);
        out += t * (Rational(perm_sign(perm)) / fact);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// derivation action of x in g on U(g)^{tensor k}
inline TensorElement adjoint_action(const SparseGVec& x, const TensorElement& a) {
    const LieAlgebra& L = a.algebra();
    const int k = a.k();
    TensorElement out(L, k);
    for (const auto& [m, c] : a.terms())
        for (int s = 0; s < k; ++s) {
            auto word = detail::slot_to_word(m.slots[s]);
            for (size_t p = 0; p < word.size(); ++p) {
                // replace word[p] by [x, word[p]], renormalize the slot
                SparseGVec repl;
                for (const auto& [xi, xc] : x)
                    for (const auto& [b, cb] : L.bracket(xi, word[p]))
                        repl.emplace_back(b, xc * cb);
                repl = gv_normalize(std::move(repl));
                for (const auto& [b, cb] : repl) {
                    auto w2 = word;
                    w2[p] = b;
                    for (const auto& [sl, cs] : detail::word_to_slot(L, w2)) {
                        Mono mm = m;
                        mm.slots[s] = sl;
                        out.add_term(mm, c * cb * cs);
                    }
                }
            }
        }
    return out;
}

// Chevalley involution applied in every slot
inline TensorElement theta_twist(const TensorElement& a) {
    const LieAlgebra& L = a.algebra();
    TensorElement out(L, a.k());
    for (const auto& [m, c] : a.terms()) {
        std::vector<std::vector<int>> words(a.k());
        int deg = 0;
        for (int s = 0; s < a.k(); ++s) {
            for (int g : detail::slot_to_word(m.slots[s])) words[s].push_back(L.theta_index(g));
            deg += (int)words[s].size();
        }
        out += from_words(L, words, (deg % 2 ? -c : c));
    }
    return out;
}

inline RootCoords mono_weight(const LieAlgebra& L, const Mono& m) {
    RootCoords w(L.rs.rank, 0);
    for (const auto& s : m.slots)
        for (const auto& [idx, e] : s) {
            const RootCoords& wi = L.weight(idx);
            for (int r = 0; r < L.rs.rank; ++r) w[r] += e * wi[r];
        }
    return w;
}

// c_rel-invariance: every monomial weight vanishes on the dropped nodes
inline bool is_crel_invariant(const LeviData& lev, const TensorElement& a) {
    for (const auto& [m, c] : a.terms())
        if (!lev.crel_weight_zero(mono_weight(a.algebra(), m))) return false;
    return true;
}

inline bool is_weight_zero(const TensorElement& a) {
    for (const auto& [m, c] : a.terms()) {
        RootCoords w = mono_weight(a.algebra(), m);
        for (int x : w)
            if (x) return false;
    }
    return true;
}

} // namespace reltwist
