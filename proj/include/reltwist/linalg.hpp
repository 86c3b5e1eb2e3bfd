/*
 * linalg.hpp -- incremental sparse column echelon over Q.
 *
 * Columns are sparse maps from an ordered key type to Rational.  Each stored
 * column remembers the linear combination of raw inputs that produced it, so
 * dependencies come out as explicit kernel vectors and solves come out as
 * explicit coordinate vectors.  Reduction always eliminates against the
 * smallest key, which keeps the whole procedure deterministic.
 */
#pragma once

#include "rational.hpp"

#include <map>
#include <optional>

namespace reltwist {

template <typename K, typename Cmp = std::less<K>>
class EchelonSolver {
public:
    using Vec = std::map<K, Rational, Cmp>;
    using Comb = std::map<int, Rational>;

    // Returns nullopt when v is independent of the columns added so far.
    // Otherwise returns mu with v = sum_j mu[j] * input_j over earlier
    // inputs, i.e. a fresh kernel vector of the input family.
    std::optional<Comb> add_column(Vec v) {
        Comb comb{{n_, Rational(1)}};
        const int self = n_++;
        reduce_inplace(v, comb);
        if (v.empty()) {
            Comb dep;
            for (auto& [j, c] : comb)
                if (j != self) dep.emplace(j, -c);
            return dep;
        }
        K lead = v.begin()->first;
        cols_.emplace(std::move(lead), Col{std::move(v), std::move(comb)});
        return std::nullopt;
    }

    // Express target as a combination of the added inputs, if possible.
    std::optional<Comb> solve(Vec target) const {
        Comb comb;
        if (!reduce_inplace(target, comb)) return std::nullopt;
        for (auto& [j, c] : comb) c = -c;
        return comb;
    }

    // True if target lies in the span of the added inputs.
    bool contains(Vec target) const {
        Comb comb;
        return reduce_inplace(target, comb);
    }

    int rank() const { return (int)cols_.size(); }
    int columns_added() const { return n_; }

private:
    struct Col {
        Vec v;
        Comb comb; // v = sum_j comb[j] * input_j
    };
    std::map<K, Col, Cmp> cols_;
    int n_ = 0;

    // subtract stored columns until the leading key of v is fresh or v = 0;
    // returns true iff v reduced to zero
    bool reduce_inplace(Vec& v, Comb& comb) const {
        while (!v.empty()) {
            auto it = cols_.find(v.begin()->first);
            if (it == cols_.end()) return false;
            const Col& c = it->second;
            Rational t = v.begin()->second / c.v.begin()->second;
            for (const auto& [k, x] : c.v) {
                auto [vt, fresh] = v.try_emplace(k, 0);
                vt->second -= t * x;
                if (vt->second == 0) v.erase(vt);
            }
            for (const auto& [j, x] : c.comb) {
                auto [ct, fresh] = comb.try_emplace(j, 0);
                ct->second -= t * x;
                if (ct->second == 0) comb.erase(ct);
            }
        }
        return true;
    }
};

} // namespace reltwist
