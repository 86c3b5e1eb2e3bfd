/*
 * lie_algebra.hpp -- semisimple Lie algebras in a Chevalley basis, plus the
 * Levi data attached to pairs of nested subdiagrams.
 *
 * Basis order (fixed everywhere, PBW normal order is ascending index):
 *   f_{beta_1} ... f_{beta_P}   h_1 ... h_n   e_{beta_1} ... e_{beta_P}
 * with positive roots beta_1 < ... < beta_P ordered by height then the
 * lexicographic tiebreak of root_system.hpp.
 *
 * The invariant form is block-diagonal over simple factors:
 *   (e_beta, f_beta) = 2/(beta,beta),   (h_i, h_j) = (alpha_i^v, alpha_j^v),
 * scaled per factor by form_scale (1 by default, long roots have norm 2).
 */
#pragma once

#include "root_system.hpp"

#include <array>
#include <cstdint>
#include <set>
#include <sstream>

namespace reltwist {

using SparseGVec = std::vector<std::pair<int, Rational>>; // coords in g basis

namespace detail {

// dense linear solve A x = b over the rationals; A square and invertible
inline std::vector<Rational> solve_dense(std::vector<std::vector<Rational>> A,
                                         std::vector<Rational> b) {
    const size_t n = A.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && A[piv][c] == 0) ++piv;
        if (piv == n) throw std::logic_error("singular dense system");
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rational m = A[r][c] / A[c][c];
            for (size_t k = c; k < n; ++k) A[r][k] -= m * A[c][k];
            b[r] -= m * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (size_t c = 0; c < n; ++c) x[c] = b[c] / A[c][c];
    return x;
}

} // namespace detail

class LieAlgebra {
public:
    RootSystem rs;
    int dim = 0;
    int P = 0; // number of positive roots
    std::vector<Rational> form_scale; // per simple factor

    enum class Kind : uint8_t { F, H, E };

    static LieAlgebra build(const std::string& type) {
        LieAlgebra L;
        L.rs = RootSystem::build(type);
        L.P = L.rs.num_pos();
        L.dim = 2 * L.P + L.rs.rank;
        L.form_scale.assign(L.rs.factors.size(), Rational(1));
        L.fill_tables();
        return L;
    }

    LieAlgebra with_form_scale(std::vector<Rational> scales) const {
        if ((int)scales.size() != (int)rs.factors.size())
            throw std::invalid_argument("one form scale per simple factor");
        LieAlgebra L(*this);
        L.form_scale = std::move(scales);
        return L;
    }

    Kind kind(int i) const {
        if (i < P) return Kind::F;
        if (i < P + rs.rank) return Kind::H;
        return Kind::E;
    }
    int root_of(int i) const { // positive root id of an F/E index
        return i < P ? i : i - P - rs.rank;
    }
    int node_of(int i) const { return i - P; } // 0-based node of an H index
    int fidx(int pid) const { return pid; }
    int hidx(int node0) const { return P + node0; }
    int eidx(int pid) const { return P + rs.rank + pid; }

    // h-weight in root coordinates (zero vector for Cartan elements)
    const RootCoords& weight(int i) const { return weights_[i]; }

    const SparseGVec& bracket(int i, int j) const { return btab_[i * dim + j]; }

    Rational form(int i, int j) const {
        Kind ki = kind(i), kj = kind(j);
        if (ki == Kind::H && kj == Kind::H) {
            int a = node_of(i), b = node_of(j);
            if (factor_of_node(a) != factor_of_node(b)) return Rational(0);
            return rs.simple_ip(a, b) / (rs.d[a] * rs.d[b]) * form_scale[factor_of_node(a)];
        }
        if (ki == Kind::H || kj == Kind::H) return Rational(0);
        if (root_of(i) != root_of(j) || ki == kj) return Rational(0);
        int pid = root_of(i);
        return Rational(2) / rs.pos[pid].norm2 * form_scale[rs.pos[pid].factor];
    }

    // Chevalley involution: e_b -> -f_b, f_b -> -e_b, h -> -h (sign always -1)
    int theta_index(int i) const {
        switch (kind(i)) {
        case Kind::F: return eidx(root_of(i));
        case Kind::E: return fidx(root_of(i));
        default: return i;
        }
    }

    int factor_of_node(int node0) const {
        for (size_t fi = 0; fi < rs.factors.size(); ++fi) {
            const auto& f = rs.factors[fi];
            if (node0 >= f.offset && node0 < f.offset + f.rank) return (int)fi;
        }
        throw std::logic_error("node out of range");
    }

    std::string basis_name(int i) const {
        std::ostringstream os;
        switch (kind(i)) {
        case Kind::F: os << "f"; break;
        case Kind::H: os << "h" << (node_of(i) + 1); return os.str();
        case Kind::E: os << "e"; break;
        }
        os << "(";
        const auto& c = rs.pos[root_of(i)].coords;
        for (size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
        os << ")";
        return os.str();
    }

private:
    std::vector<SparseGVec> btab_;
    std::vector<RootCoords> weights_;

    void push(SparseGVec& v, int idx, const Rational& c) {
        if (c != 0) v.emplace_back(idx, c);
    }

    SparseGVec bracket_impl(int i, int j) {
        SparseGVec out;
        Kind ki = kind(i), kj = kind(j);
        if (ki == Kind::H && kj == Kind::H) return out;
        if (ki == Kind::H) { // [h, x] = <wt(x), a_i^vee> x
            long c = rs.pairing_with_coroot(rs.pos[root_of(j)].coords, node_of(i));
            push(out, j, kj == Kind::E ? Rational(c) : Rational(-c));
            return out;
        }
        if (kj == Kind::H) {
            out = bracket_impl(j, i);
            for (auto& t : out) t.second = -t.second;
            return out;
        }
        int bi = root_of(i), bj = root_of(j);
        int si = ki == Kind::E ? bi : ~bi; // signed root ids
        int sj = kj == Kind::E ? bj : ~bj;
        if (bi == bj && ki != kj) { // [e_b, f_b] = h_b = sum coroot coords
            auto cc = rs.coroot_coords(bi);
            Rational sgn = ki == Kind::E ? 1 : -1;
            for (int m = 0; m < rs.rank; ++m)
                push(out, hidx(m), sgn * Rational(cc[m]));
            return out;
        }
        RootCoords sum = rs.coords_of(si);
        const RootCoords cj = rs.coords_of(sj);
        for (int m = 0; m < rs.rank; ++m) sum[m] += cj[m];
        int sid = rs.root_id(sum);
        if (sid == RootSystem::NOT_ROOT) return out;
        long n = rs.nconst(si, sj);
        push(out, sid >= 0 ? eidx(sid) : fidx(~sid), Rational(n));
        return out;
    }

    void fill_tables() {
        weights_.resize(dim);
        for (int i = 0; i < dim; ++i) {
            RootCoords w(rs.rank, 0);
            if (kind(i) != Kind::H) {
                w = rs.pos[root_of(i)].coords;
                if (kind(i) == Kind::F)
                    for (int& x : w) x = -x;
            }
            weights_[i] = std::move(w);
        }
        btab_.resize((size_t)dim * dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) btab_[i * dim + j] = bracket_impl(i, j);
    }
};

// ---------------------------------------------------------------------------
// sparse g-vector helpers
// ---------------------------------------------------------------------------

inline SparseGVec gv_normalize(SparseGVec v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseGVec out;
    for (auto& t : v) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return t.second == 0; }),
              out.end());
    return out;
}

inline SparseGVec gv_add(const SparseGVec& a, const SparseGVec& b, const Rational& cb = 1) {
    SparseGVec v = a;
    for (auto& t : b) v.emplace_back(t.first, t.second * cb);
    return gv_normalize(std::move(v));
}

inline SparseGVec gv_bracket(const LieAlgebra& L, const SparseGVec& a, const SparseGVec& b) {
    SparseGVec v;
    for (auto& ta : a)
        for (auto& tb : b)
            for (auto& tc : L.bracket(ta.first, tb.first))
                v.emplace_back(tc.first, ta.second * tb.second * tc.second);
    return gv_normalize(std::move(v));
}

inline Rational gv_form(const LieAlgebra& L, const SparseGVec& a, const SparseGVec& b) {
    Rational s = 0;
    for (auto& ta : a)
        for (auto& tb : b) s += ta.second * tb.second * L.form(ta.first, tb.first);
    return s;
}

// ---------------------------------------------------------------------------
// subdiagrams and Levi decompositions
// ---------------------------------------------------------------------------

struct Subdiagram {
    std::vector<int> nodes; // 0-based, sorted, unique

    static Subdiagram parse(const std::string& s, int rank) {
        Subdiagram D;
        std::set<int> seen;
        size_t at = 0;
        while (at < s.size()) {
            size_t next = s.find(',', at);
            std::string tok = s.substr(at, next == std::string::npos ? next : next - at);
            if (!tok.empty()) {
                int v = 0;
                try {
                    size_t used = 0;
                    v = std::stoi(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument("");
                } catch (...) {
                    throw std::invalid_argument("bad subdiagram token: '" + tok + "'");
                }
                if (v < 1 || v > rank)
                    throw std::invalid_argument("subdiagram node out of range: " + tok);
                if (!seen.insert(v - 1).second)
                    throw std::invalid_argument("duplicate subdiagram node: " + tok);
            }
            at = next == std::string::npos ? s.size() : next + 1;
        }
        D.nodes.assign(seen.begin(), seen.end());
        return D;
    }

    static Subdiagram full(int rank) {
        Subdiagram D;
        for (int i = 0; i < rank; ++i) D.nodes.push_back(i);
        return D;
    }

    bool contains(int node0) const {
        return std::binary_search(nodes.begin(), nodes.end(), node0);
    }
    bool subset_of(const Subdiagram& other) const {
        for (int n : nodes)
            if (!other.contains(n)) return false;
        return true;
    }
    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < nodes.size(); ++i)
            s += (i ? "," : "") + std::to_string(nodes[i] + 1);
        return s;
    }
};

// Levi data of a nested pair small <= big of subdiagrams:
//   g_big = n-_rel + (g_small + c_rel) + n+_rel
// with c_rel spanned by the fundamental coweights t_k of the big subsystem
// for the nodes k in big \ small.  The plain Levi decomposition of (g, D) is
// the pair (full diagram, D).
class LeviData {
public:
    enum class Zone : uint8_t { OutsideBig, NMinusRel, NPlusRel, SmallRoot, Cartan };

    const LieAlgebra* L = nullptr;
    Subdiagram big, small;
    std::vector<Zone> zone;               // indexed by g basis index
    std::vector<int> drop;                // nodes in big \ small (0-based)
    std::vector<std::vector<Rational>> crel;      // over global h coords
    std::vector<std::vector<Rational>> crel_dual; // dual wrt scaled form

    static LeviData make(const LieAlgebra& L, const Subdiagram& big, const Subdiagram& small) {
        if (!small.subset_of(big))
            throw std::invalid_argument("subdiagram pair is not nested");
        LeviData v;
        v.L = &L;
        v.big = big;
        v.small = small;
        for (int n : big.nodes)
            if (!small.contains(n)) v.drop.push_back(n);
        v.classify();
        v.cartan_projection();
        v.coweights();
        return v;
    }

    static LeviData make(const LieAlgebra& L, const Subdiagram& D) {
        return make(L, Subdiagram::full(L.rs.rank), D);
    }

    bool root_in(const Subdiagram& D, int pid) const {
        const RootCoords& c = L->rs.pos[pid].coords;
        for (int i = 0; i < L->rs.rank; ++i)
            if (c[i] && !D.contains(i)) return false;
        return true;
    }

    // c_rel weight of a root-coordinate vector vanishes iff the coordinates
    // at the dropped nodes are all zero
    bool crel_weight_zero(const RootCoords& w) const {
        for (int k : drop)
            if (w[k]) return false;
        return true;
    }
    bool small_weight_zero(const RootCoords& w) const {
        for (int k : small.nodes)
            if (w[k]) return false;
        return true;
    }
    bool big_weight_zero(const RootCoords& w) const {
        for (int k : big.nodes)
            if (w[k]) return false;
        return true;
    }

    // Cartan projection along c_rel: p(h_i), i in big; kills the coweights
    const SparseGVec& cartan_proj(int node0) const { return cproj_.at(node0); }

    // basis of g_small inside g (root vectors + projected Cartan h_j, j small)
    std::vector<int> small_root_indices() const {
        std::vector<int> out;
        for (int i = 0; i < L->dim; ++i)
            if (zone[i] == Zone::SmallRoot) out.push_back(i);
        return out;
    }

    // Lie-algebra projections P_-, P_0, P_D, P_+ for the pair, as sparse
    // images of basis vectors; defined on g_big, zero outside it
    SparseGVec project(int i, char which) const {
        SparseGVec out;
        Zone z = zone[i];
        if (z == Zone::OutsideBig) return out;
        if (L->kind(i) != LieAlgebra::Kind::H) {
            bool keep = (which == '+' && z == Zone::NPlusRel) ||
                        (which == '-' && z == Zone::NMinusRel) ||
                        (which == 'D' && z == Zone::SmallRoot);
            if (keep) out.emplace_back(i, Rational(1));
            return out;
        }
        int node = L->node_of(i);
        if (which == 'D') return cartan_proj(node);
        if (which == '0') { // h_i - p(h_i)
            out = cartan_proj(node);
            for (auto& t : out) t.second = -t.second;
            bool found = false;
            for (auto& t : out)
                if (t.first == i) { t.second += 1; found = true; }
            if (!found) out.emplace_back(i, Rational(1));
            std::sort(out.begin(), out.end());
            out.erase(std::remove_if(out.begin(), out.end(),
                                     [](auto& t) { return t.second == 0; }),
                      out.end());
        }
        return out;
    }

    // dual bases of g_small wrt the (scaled) form: lists {v_i}, {v^i}
    std::pair<std::vector<SparseGVec>, std::vector<SparseGVec>> small_dual_bases() const {
        std::vector<SparseGVec> base, dual;
        for (int i = 0; i < L->dim; ++i) {
            if (zone[i] != Zone::SmallRoot) continue;
            int pid = L->root_of(i);
            int partner = L->kind(i) == LieAlgebra::Kind::E ? L->fidx(pid) : L->eidx(pid);
            base.push_back({{i, Rational(1)}});
            dual.push_back({{partner, Rational(1) / L->form(i, partner)}});
        }
        const auto& S = small.nodes;
        if (!S.empty()) {
            std::vector<std::vector<Rational>> gram(S.size(), std::vector<Rational>(S.size()));
            for (size_t a = 0; a < S.size(); ++a)
                for (size_t b = 0; b < S.size(); ++b)
                    gram[a][b] = L->form(L->hidx(S[a]), L->hidx(S[b]));
            for (size_t a = 0; a < S.size(); ++a) {
                std::vector<Rational> rhs(S.size(), Rational(0));
                rhs[a] = 1;
                auto x = detail::solve_dense(gram, rhs);
                SparseGVec dv;
                for (size_t b = 0; b < S.size(); ++b)
                    if (x[b] != 0) dv.emplace_back(L->hidx(S[b]), x[b]);
                base.push_back({{L->hidx(S[a]), Rational(1)}});
                dual.push_back(dv);
            }
        }
        return {base, dual};
    }

    // dual bases of c_rel as sparse g vectors
    std::pair<std::vector<SparseGVec>, std::vector<SparseGVec>> crel_dual_bases() const {
        std::vector<SparseGVec> base, dual;
        for (size_t a = 0; a < crel.size(); ++a) {
            base.push_back(to_gvec(crel[a]));
            dual.push_back(to_gvec(crel_dual[a]));
        }
        return {base, dual};
    }

private:
    std::map<int, SparseGVec> cproj_;

    SparseGVec to_gvec(const std::vector<Rational>& hcoords) const {
        SparseGVec v;
        for (int m = 0; m < L->rs.rank; ++m)
            if (hcoords[m] != 0) v.emplace_back(L->hidx(m), hcoords[m]);
        return v;
    }

    void classify() {
        zone.assign(L->dim, Zone::OutsideBig);
        for (int i = 0; i < L->dim; ++i) {
            if (L->kind(i) == LieAlgebra::Kind::H) {
                zone[i] = big.contains(L->node_of(i)) ? Zone::Cartan : Zone::OutsideBig;
                continue;
            }
            int pid = L->root_of(i);
            if (!root_in(big, pid)) continue;
            if (root_in(small, pid))
                zone[i] = Zone::SmallRoot;
            else
                zone[i] = L->kind(i) == LieAlgebra::Kind::E ? Zone::NPlusRel : Zone::NMinusRel;
        }
    }

    void cartan_projection() {
        const auto& S = small.nodes;
        std::vector<std::vector<Rational>> M(S.size(), std::vector<Rational>(S.size()));
        for (size_t m = 0; m < S.size(); ++m)      // rows: conditions alpha_m
            for (size_t j = 0; j < S.size(); ++j)  // cols: coefficients of h_j
                M[m][j] = Rational(L->rs.cart[S[j]][S[m]]);
        for (int i : big.nodes) {
            SparseGVec pv;
            if (small.contains(i)) {
                pv.emplace_back(L->hidx(i), Rational(1));
            } else if (!S.empty()) {
                std::vector<Rational> rhs(S.size());
                for (size_t m = 0; m < S.size(); ++m)
                    rhs[m] = Rational(L->rs.cart[i][S[m]]);
                auto x = detail::solve_dense(M, rhs);
                for (size_t j = 0; j < S.size(); ++j)
                    if (x[j] != 0) pv.emplace_back(L->hidx(S[j]), x[j]);
            }
            cproj_[i] = std::move(pv);
        }
    }

    void coweights() {
        // t_k in span{h_i : i in big} with alpha_j(t_k) = delta_{jk}, j in big
        const auto& B = big.nodes;
        std::vector<std::vector<Rational>> M(B.size(), std::vector<Rational>(B.size()));
        for (size_t j = 0; j < B.size(); ++j)
            for (size_t i = 0; i < B.size(); ++i)
                M[j][i] = Rational(L->rs.cart[B[i]][B[j]]); // alpha_{B[j]}(h_{B[i]})
        for (int k : drop) {
            std::vector<Rational> rhs(B.size(), Rational(0));
            for (size_t j = 0; j < B.size(); ++j)
                if (B[j] == k) rhs[j] = 1;
            auto x = detail::solve_dense(M, rhs);
            std::vector<Rational> t(L->rs.rank, Rational(0));
            for (size_t i = 0; i < B.size(); ++i) t[B[i]] = x[i];
            crel.push_back(std::move(t));
        }
        // duals wrt the scaled form restricted to c_rel
        if (!crel.empty()) {
            std::vector<std::vector<Rational>> gram(crel.size(), std::vector<Rational>(crel.size()));
            for (size_t a = 0; a < crel.size(); ++a)
                for (size_t b = 0; b < crel.size(); ++b) {
                    Rational s = 0;
                    for (int m = 0; m < L->rs.rank; ++m)
                        for (int mm = 0; mm < L->rs.rank; ++mm)
                            if (crel[a][m] != 0 && crel[b][mm] != 0)
                                s += crel[a][m] * crel[b][mm] * L->form(L->hidx(m), L->hidx(mm));
                    gram[a][b] = s;
                }
            for (size_t a = 0; a < crel.size(); ++a) {
                std::vector<Rational> rhs(crel.size(), Rational(0));
                rhs[a] = 1;
                auto x = detail::solve_dense(gram, rhs);
                std::vector<Rational> t(L->rs.rank, Rational(0));
                for (size_t b = 0; b < crel.size(); ++b)
                    for (int m = 0; m < L->rs.rank; ++m) t[m] += x[b] * crel[b][m];
                crel_dual.push_back(std::move(t));
            }
        }
    }
};

} // namespace reltwist
