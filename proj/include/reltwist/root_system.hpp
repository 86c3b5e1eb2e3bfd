/*
 * root_system.hpp -- Cartan data, root generation, Chevalley structure
 * constants.
 *
 * Supported series: A (rank 1..6), B (2..4), C (2..4), D (4..5), G (rank 2),
 * and products of those ("A2xA1").  Roots are integer coordinate vectors over
 * the simple roots of the whole (possibly reducible) diagram; factors occupy
 * disjoint coordinate blocks.
 *
 * The invariant form is normalized so (alpha,alpha) = 2 for the long roots of
 * every simple factor.
 *
 * Structure constants N(a,b), [e_a,e_b] = N(a,b) e_{a+b}, follow the
 * extraspecial pair convention: positive roots are totally ordered by height
 * with a lexicographic tiebreak; for each non-simple gamma the extraspecial
 * pair (a,b), a minimal with a+b = gamma, gets N(a,b) = p+1 > 0 where p is
 * the largest integer with b - p a a root.  Every other constant is forced
 * from those by the two standard identities of a Chevalley system:
 *
 *   a+b+c = 0:      N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)
 *   a+b+c+d = 0:    N(a,b)N(c,d)/(a+b,a+b) + N(b,c)N(a,d)/(b+c,b+c)
 *                     + N(c,a)N(b,d)/(c+a,c+a) = 0   (no two opposite)
 *
 * together with N(a,b) = -N(b,a) and N(-a,-b) = -N(a,b).  The Jacobi and
 * |N| = p+1 checks in the test suite exercise every supported type.
 */
#pragma once

#include "rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace reltwist {

using RootCoords = std::vector<int>; // multiplicities over all simple roots

struct SimpleFactor {
    char series = 'A';
    int rank = 0;
    int offset = 0; // first node index (0-based) of this factor's block
};

struct PosRoot {
    RootCoords coords;
    int height = 0;
    int factor = 0;       // which simple factor it belongs to
    Rational norm2;       // (beta,beta), long roots = 2 within each factor
};

// height first, then the natural tiebreak putting alpha_1 before alpha_2
inline bool root_coords_less(const RootCoords& a, const RootCoords& b) {
    int ha = 0, hb = 0;
    for (int x : a) ha += x;
    for (int x : b) hb += x;
    if (ha != hb) return ha < hb;
    return a > b; // (1,0) before (0,1)
}

class RootSystem {
public:
    std::string type;                 // e.g. "A2", "B2xA1"
    std::vector<SimpleFactor> factors;
    int rank = 0;                     // total number of simple roots
    std::vector<std::vector<long>> cart; // cart[i][j] = <alpha_j, alpha_i^vee>
    std::vector<Rational> d;          // d_i = (alpha_i,alpha_i)/2
    std::vector<PosRoot> pos;         // sorted by root_coords_less
    std::map<RootCoords, int> pos_index;

    static RootSystem build(const std::string& type_str);

    int num_pos() const { return (int)pos.size(); }

    // (alpha_i, alpha_j)
    Rational simple_ip(int i, int j) const { return d[i] * cart[i][j]; }

    Rational ip(const RootCoords& a, const RootCoords& b) const {
        Rational s = 0;
        for (int i = 0; i < rank; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < rank; ++j)
                if (b[j]) s += Rational(a[i]) * Rational(b[j]) * simple_ip(i, j);
        }
        return s;
    }

    // is v (as a signed combination) a root?  returns +pid, ~pid for -beta,
    // or INT_MIN when not a root
    static constexpr int NOT_ROOT = INT32_MIN;
    int root_id(const RootCoords& v) const {
        bool pos_side = false, neg_side = false, zero = true;
        for (int x : v) {
            if (x > 0) pos_side = true;
            if (x < 0) neg_side = true;
            if (x != 0) zero = false;
        }
        if (zero || (pos_side && neg_side)) return NOT_ROOT;
        if (pos_side) {
            auto it = pos_index.find(v);
            return it == pos_index.end() ? NOT_ROOT : it->second;
        }
        RootCoords w(v);
        for (int& x : w) x = -x;
        auto it = pos_index.find(w);
        return it == pos_index.end() ? NOT_ROOT : ~it->second;
    }

    // <beta, alpha_i^vee> for beta given by coords
    long pairing_with_coroot(const RootCoords& beta, int i) const {
        long s = 0;
        for (int j = 0; j < rank; ++j) s += beta[j] * cart[i][j];
        return s;
    }

    // largest p >= 0 with b - p*a a root (a, b roots given as signed ids)
    int string_down(int a_id, int b_id) const {
        RootCoords v = coords_of(b_id);
        const RootCoords a = coords_of(a_id);
        int p = 0;
        for (;;) {
            for (int i = 0; i < rank; ++i) v[i] -= a[i];
            if (root_id(v) == NOT_ROOT) return p;
            ++p;
        }
    }

    RootCoords coords_of(int id) const {
        if (id >= 0) return pos[id].coords;
        RootCoords v = pos[~id].coords;
        for (int& x : v) x = -x;
        return v;
    }

    Rational norm2_of(int id) const { return pos[id >= 0 ? id : ~id].norm2; }

    // Chevalley constant N(a,b) for signed root ids with a+b a root.
    long nconst(int a_id, int b_id) const {
        RootCoords s = coords_of(a_id);
        const RootCoords bc = coords_of(b_id);
        for (int i = 0; i < rank; ++i) s[i] += bc[i];
        int sid = root_id(s);
        if (sid == NOT_ROOT) return 0;
        return nconst_impl(a_id, b_id, sid);
    }

    // coroot coordinates: beta^vee = sum_i c_i alpha_i^vee, c_i integer
    std::vector<long> coroot_coords(int pid) const {
        const PosRoot& r = pos[pid];
        std::vector<long> c(rank, 0);
        for (int i = 0; i < rank; ++i) {
            if (!r.coords[i]) continue;
            Rational q = Rational(r.coords[i]) * 2 * d[i] / r.norm2;
            if (!is_integer(q)) throw std::logic_error("non-integral coroot");
            c[i] = q.get_num().get_si();
        }
        return c;
    }

private:
    // N on pairs of positive root ids, full antisymmetric table
    std::map<std::pair<int, int>, long> npos_;

    long npos(int a, int b) const {
        auto it = npos_.find({a, b});
        return it == npos_.end() ? 0 : it->second;
    }

    long nconst_impl(int a, int b, int /*sum*/) const {
        if (a >= 0 && b >= 0) return npos(a, b);
        if (a < 0 && b < 0) return -npos(~a, ~b);
        if (a < 0) return -nconst_mixed(b, a); // N(a,b) = -N(b,a)
        return nconst_mixed(a, b);
    }

    // a > 0 > b, a+b a root; reduce to the positive table via the cyclic
    // identity on (a, b, -a-b)
    long nconst_mixed(int a, int b) const {
        RootCoords s = coords_of(a);
        const RootCoords bc = coords_of(b);
        for (int i = 0; i < rank; ++i) s[i] += bc[i];
        int c_id = root_id(s);
        if (c_id >= 0) {
            // N(a,b) = -((c,c)/(a,a)) N(-b, c)
            Rational q = -norm2_of(c_id) / norm2_of(a) * Rational(npos(~b, c_id));
            if (!is_integer(q)) throw std::logic_error("nconst not integral");
            return q.get_num().get_si();
        }
        // c < 0: N(a,b) = -((c,c)/(b,b)) N(a, -c)
        Rational q = -norm2_of(c_id) / norm2_of(b) * Rational(npos(a, ~c_id));
        if (!is_integer(q)) throw std::logic_error("nconst not integral");
        return q.get_num().get_si();
    }

    void compute_struct_consts();
    friend struct RootSystemBuilder;
};

struct RootSystemBuilder {
    static void seed_factor(RootSystem& rs, const SimpleFactor& f);
    static void close_roots(RootSystem& rs);
};

inline void RootSystemBuilder::seed_factor(RootSystem& rs, const SimpleFactor& f) {
    const int n = f.rank, off = f.offset;
    auto C = [&](int i, int j) -> long& { return rs.cart[off + i][off + j]; };
    for (int i = 0; i < n; ++i) C(i, i) = 2;
    auto chain = [&](int i, int j) { C(i, j) = C(j, i) = -1; };
    switch (f.series) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
        for (int i = 0; i < n; ++i) rs.d[off + i] = 1;
        break;
    case 'B': // last node short
        for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
        C(n - 1, n - 2) = -2;
        for (int i = 0; i < n; ++i) rs.d[off + i] = 1;
        rs.d[off + n - 1] = Rational(1, 2);
        break;
    case 'C': // last node long
        for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
        C(n - 2, n - 1) = -2;
        for (int i = 0; i < n; ++i) rs.d[off + i] = Rational(1, 2);
        rs.d[off + n - 1] = 1;
        break;
    case 'D':
        for (int i = 0; i + 2 < n; ++i) chain(i, i + 1);
        chain(n - 3, n - 1);
        for (int i = 0; i < n; ++i) rs.d[off + i] = 1;
        break;
    case 'G': // alpha_1 short, alpha_2 long
        C(0, 1) = -3;
        C(1, 0) = -1;
        rs.d[off + 0] = Rational(1, 3);
        rs.d[off + 1] = 1;
        break;
    default:
        throw std::invalid_argument("unsupported series");
    }
}

inline void RootSystemBuilder::close_roots(RootSystem& rs) {
    // closure by height: beta + alpha_i is a root iff q = p - <beta,a_i^vee> > 0
    std::vector<RootCoords> all;
    std::map<RootCoords, int> seen;
    for (const auto& f : rs.factors)
        for (int i = 0; i < f.rank; ++i) {
            RootCoords v(rs.rank, 0);
            v[f.offset + i] = 1;
            seen[v] = 1;
            all.push_back(v);
        }
    auto is_root = [&](const RootCoords& v) {
        for (int x : v)
            if (x < 0) return false;
        return seen.count(v) > 0;
    };
    for (size_t at = 0; at < all.size(); ++at) {
        RootCoords beta = all[at];
        for (int i = 0; i < rs.rank; ++i) {
            int p = 0;
            {
                RootCoords v = beta;
                for (;;) {
                    v[i] -= 1;
                    if (!is_root(v)) break;
                    ++p;
                }
            }
            long q = p - rs.pairing_with_coroot(beta, i);
            if (q > 0) {
                RootCoords v = beta;
                v[i] += 1;
                if (!seen.count(v)) {
                    seen[v] = 1;
                    all.push_back(v);
                }
            }
        }
    }
    std::sort(all.begin(), all.end(), root_coords_less);
    for (const auto& v : all) {
        PosRoot r;
        r.coords = v;
        for (int i = 0; i < rs.rank; ++i) r.height += v[i];
        for (size_t fi = 0; fi < rs.factors.size(); ++fi) {
            const auto& f = rs.factors[fi];
            for (int i = 0; i < f.rank; ++i)
                if (v[f.offset + i]) r.factor = (int)fi;
        }
        r.norm2 = rs.ip(v, v);
        rs.pos_index[v] = (int)rs.pos.size();
        rs.pos.push_back(std::move(r));
    }
}

inline void RootSystem::compute_struct_consts() {
    // extraspecial pairs first, then the 4-root identity, by height of the sum
    for (int g = 0; g < num_pos(); ++g) {
        if (pos[g].height == 1) continue;
        const RootCoords& gamma = pos[g].coords;
        // collect special pairs (xi, eta), xi < eta in root order
        std::vector<std::pair<int, int>> pairs;
        for (int xi = 0; xi < num_pos(); ++xi) {
            if (pos[xi].height * 2 > pos[g].height) break;
            RootCoords rest = gamma;
            for (int i = 0; i < rank; ++i) rest[i] -= pos[xi].coords[i];
            int eta = root_id(rest);
            if (eta >= 0 && eta > xi) pairs.emplace_back(xi, eta);
        }
        if (pairs.empty()) throw std::logic_error("root with no special pair");
        const auto [a, b] = pairs.front(); // extraspecial: minimal first member
        long nab = string_down(a, b) + 1;
        npos_[{a, b}] = nab;
        npos_[{b, a}] = -nab;
        const Rational g2 = pos[g].norm2;
        for (size_t t = 1; t < pairs.size(); ++t) {
            const auto [xi, eta] = pairs[t];
            // quadruple (-xi, a, b, -eta)
            Rational acc = 0;
            {
                RootCoords v = pos[a].coords;
                for (int i = 0; i < rank; ++i) v[i] -= pos[xi].coords[i];
                int s = root_id(v);
                if (s != NOT_ROOT)
                    acc += Rational(nconst(~xi, a)) * Rational(nconst(b, ~eta)) / ip(v, v);
            }
            {
                RootCoords v = pos[b].coords;
                for (int i = 0; i < rank; ++i) v[i] -= pos[xi].coords[i];
                int s = root_id(v);
                if (s != NOT_ROOT)
                    acc += Rational(nconst(b, ~xi)) * Rational(nconst(a, ~eta)) / ip(v, v);
            }
            Rational nq = g2 * acc / Rational(nab);
            if (!is_integer(nq)) throw std::logic_error("structure constant not integral");
            long nv = nq.get_num().get_si();
            long expect = string_down(xi, eta) + 1;
            if (nv != expect && nv != -expect)
                throw std::logic_error("structure constant magnitude mismatch");
            npos_[{xi, eta}] = nv;
            npos_[{eta, xi}] = -nv;
        }
    }
}

inline RootSystem RootSystem::build(const std::string& type_str) {
    RootSystem rs;
    rs.type = type_str;
    size_t at = 0;
    while (at < type_str.size()) {
        size_t next = type_str.find('x', at);
        std::string tok = type_str.substr(at, next == std::string::npos ? next : next - at);
        if (tok.size() < 2) throw std::invalid_argument("bad Cartan type: " + type_str);
        char ser = tok[0];
        int rk = 0;
        try {
            size_t used = 0;
            rk = std::stoi(tok.substr(1), &used);
            if (used + 1 != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("bad Cartan type: " + type_str);
        }
        auto bad = [&] { throw std::invalid_argument("unsupported Cartan datum: " + tok); };
        switch (ser) {
        case 'A': if (rk < 1 || rk > 6) bad(); break;
        case 'B': if (rk < 2 || rk > 4) bad(); break;
        case 'C': if (rk < 2 || rk > 4) bad(); break;
        case 'D': if (rk < 4 || rk > 5) bad(); break;
        case 'G': if (rk != 2) bad(); break;
        default: bad();
        }
        rs.factors.push_back({ser, rk, rs.rank});
        rs.rank += rk;
        at = next == std::string::npos ? type_str.size() : next + 1;
        if (next != std::string::npos && at == type_str.size())
            throw std::invalid_argument("bad Cartan type: " + type_str);
    }
    if (rs.factors.empty()) throw std::invalid_argument("empty Cartan type");
    rs.cart.assign(rs.rank, std::vector<long>(rs.rank, 0));
    rs.d.assign(rs.rank, Rational(0));
    for (const auto& f : rs.factors) RootSystemBuilder::seed_factor(rs, f);
    RootSystemBuilder::close_roots(rs);
    rs.compute_struct_consts();
    return rs;
}

} // namespace reltwist
