/*
 * gauge.hpp -- gauge moves on relative twists and equivalence witnesses.
 *
 * A gauge pair (u, lam) is an invertible series u = 1 + O(hbar) in U(g)
 * invariant under the small Levi, together with a series lam valued in
 * wedges of the central directions of the pair.  It acts on a twist by
 *
 *   F  |->  exp(lam) . (u (x) u) . F . Delta(u)^{-1}
 *
 * and this action preserves solutions of the relative twist equation.
 * gauge_witness inverts the action order by order: given two solutions it
 * either assembles a pair carrying the first onto the second, or reports
 * the hbar order and the obstruction that rules a witness out.
 */
#pragma once

#include "linalg.hpp"
#include "twist.hpp"

#include <optional>
#include <string>
#include <utility>

namespace reltwist {

struct GaugeWitness {
    HbarSeries u;   // 1-slot series, unit leading term
    HbarSeries lam; // 2-slot series of embedded central wedges, no constant term
};

enum class GaugeStatus { Equivalent, NotEquivalent };

struct GaugeCheck {
    GaugeStatus status = GaugeStatus::NotEquivalent;
    std::optional<GaugeWitness> witness;
    int failed_order = -1;  // hbar order of the obstruction, -1 on success
    std::string reason;     // empty on success

    bool ok() const { return status == GaugeStatus::Equivalent; }
};

struct GaugeOptions {
    bool theta_mode = false;    // keep u theta fixed and lam = 0
    bool hc_normalized = false; // inputs are bar normalised; keep bar(u) = 1
    int degree_cap = 0;         // starting PBW degree for primitive solves, 0 = auto
    int degree_cap_max = 0;     // escalation limit for primitive solves, 0 = auto
};

namespace detail {

// degree-one wedge lines spanning the central directions of the pair
inline std::vector<ExtElement> central_lines(const LeviData& lev) {
    const LieAlgebra& L = *lev.L;
    std::vector<ExtElement> out;
    for (const auto& t : lev.crel) {
        ExtElement c(L, 1);
        for (int m = 0; m < L.rs.rank; ++m)
            if (t[m] != 0) c.add_unsorted(ExtIdx{(uint16_t)L.hidx(m)}, t[m]);
        out.push_back(std::move(c));
    }
    return out;
}

// true when x lies in the span of pairwise wedges of central directions;
// the span is zero whenever the pair drops fewer than two nodes
inline bool is_central_wedge(const LeviData& lev, const ExtElement& x) {
    if (x.terms().empty()) return true;
    auto lines = central_lines(lev);
    EchelonSolver<ExtIdx> solver;
    for (size_t a = 0; a < lines.size(); ++a)
        for (size_t b = a + 1; b < lines.size(); ++b)
            solver.add_column(wedge(lines[a], lines[b]).terms());
    return solver.contains(x.terms());
}

struct GaugeObstruction {
    int order;
    std::string reason;
};

} // namespace detail

// exp(lam) . (u (x) u) . F . Delta(u)^{-1}, truncated at hbar^cap
inline HbarSeries gauge_transform(const HbarSeries& F, const GaugeWitness& w,
                                  int cap) {
    if (F.k() != 2 || w.u.k() != 1 || w.lam.k() != 2)
        throw std::invalid_argument(
            "gauge transform wants a 2-slot twist, a 1-slot unit and a 2-slot wedge series");
    const LieAlgebra& L = F.algebra();
    HbarSeries u = w.u.with_cap(cap);
    HbarSeries lam = w.lam.with_cap(cap);
    if (!(u.at(0) == TensorElement::unit(L, 1)))
        throw std::invalid_argument("gauge unit needs leading term 1");
    if (!lam.at(0).is_zero())
        throw std::invalid_argument("gauge wedge series needs a vanishing constant term");
    HbarSeries uu = series_place(u, {0}, 2) * series_place(u, {1}, 2);
    return series_exp(lam) * uu * F.with_cap(cap) *
           series_coproduct_at(u, 1).inverse();
}

// Decides whether two solutions of one relative twist equation differ by a
// gauge pair, and assembles the pair when they do.  Both series must agree
// with the relative r-matrix at order one up to a wedge of central
// directions; from order two on, each difference is split into a Hochschild
// boundary, absorbed into u, and a central wedge, absorbed into lam.
inline GaugeCheck gauge_witness(const HbarSeries& F1in, const HbarSeries& F2in,
                                const LeviData& lev, int N,
                                GaugeOptions opts = {}) {
    if (N < 1) throw std::invalid_argument("gauge check needs a positive hbar order");
    if (F1in.k() != 2 || F2in.k() != 2)
        throw std::invalid_argument("gauge check wants 2-slot twist series");
    if (F1in.cap() < N || F2in.cap() < N)
        throw std::invalid_argument("gauge check needs both twists at least modulo hbar^{N+1}");
    const LieAlgebra& L = F1in.algebra();
    const HbarSeries F1 = F1in.with_cap(N);
    const HbarSeries F2 = F2in.with_cap(N);
    const TensorElement one1 = TensorElement::unit(L, 1);
    const TensorElement one2 = TensorElement::unit(L, 2);
    if (!(F1.at(0) == one2) || !(F2.at(0) == one2))
        throw std::invalid_argument("gauge check needs unit leading terms");
    if (opts.theta_mode &&
        (!(series_theta(F1) == series_permute(F1, {1, 0})) ||
         !(series_theta(F2) == series_permute(F2, {1, 0}))))
        throw std::invalid_argument("theta gauge check needs theta symmetric twists");
    if (opts.hc_normalized &&
        (!(series_hc_bar(lev, F1) == HbarSeries::unit(L, 2, N)) ||
         !(series_hc_bar(lev, F2) == HbarSeries::unit(L, 2, N))))
        throw std::invalid_argument(
            "gauge check in bar normalised mode needs bar normalised twists");

    GaugeCheck out;
    const ExtElement f_rel = relative_r(lev);
    const TensorElement f_emb = detail::retag(L, embed_ext(f_rel));

    // solve d_H(v) = rhs for an invariant 1-slot primitive, then shape v to
    // the requested normalisations; every reshaping is re-checked against rhs
    auto primitive = [&](const TensorElement& rhs, int order) -> TensorElement {
        if (rhs.is_zero()) return TensorElement(L, 1);
        int cap0 = opts.degree_cap ? opts.degree_cap
                                   : std::max(rhs.degree(), 2 * order);
        int cap1 = opts.degree_cap_max ? std::max(opts.degree_cap_max, cap0)
                                       : cap0 + 4;
        auto v = solve_hochschild_coboundary(lev, rhs, cap0, cap1);
        if (!v)
            throw detail::GaugeObstruction{
                order, "no invariant primitive for the order " +
                           std::to_string(order) +
                           " defect up to PBW degree " + std::to_string(cap1)};
        TensorElement vv = *v;
        if (opts.theta_mode) {
            vv = (vv + theta_twist(vv)) * Rational(1, 2);
            if (!(hochschild_d(vv) == rhs))
                throw std::logic_error("theta averaging destroyed the gauge primitive");
        }
        if (opts.hc_normalized) {
            vv = vv - hc_project_bar(lev, vv);
            if (!(hochschild_d(vv) == rhs))
                throw std::logic_error(
                    "bar normalising the gauge primitive changed its boundary");
            if (opts.theta_mode && !(theta_twist(vv) == vv))
                throw std::logic_error(
                    "bar normalising the gauge primitive broke its theta symmetry");
        }
        return vv;
    };

    // order-one normalisation of one input: F.at(1) = d_H(g) + f + nu with
    // nu a central wedge; returns the stage witness (1 - hbar g, -hbar nu)
    auto stage0 = [&](const HbarSeries& F, const char* which) -> GaugeWitness {
        TensorElement f1 = F.at(1);
        if (!hochschild_d(f1).is_zero())
            throw detail::GaugeObstruction{
                1, std::string("order one coefficient of the ") + which +
                       " twist is not a Hochschild cocycle"};
        auto chi = unembed_ext(alt(f1));
        if (!chi)
            throw std::logic_error("cocycle alternation is not a wedge");
        ExtElement nu = *chi - f_rel;
        if (!detail::is_central_wedge(lev, nu))
            throw detail::GaugeObstruction{
                1, std::string("order one coefficient of the ") + which +
                       " twist differs from the relative r-matrix by more "
                       "than a central wedge"};
        if (opts.theta_mode && !nu.terms().empty())
            throw std::logic_error(
                "theta symmetric twist carries a central wedge at order one");
        TensorElement g =
            primitive(f1 - f_emb - detail::retag(L, embed_ext(nu)), 1);
        GaugeWitness w{HbarSeries::unit(L, 1, N), HbarSeries(L, 2, N)};
        w.u.set(1, g * Rational(-1));
        w.lam.set(1, detail::retag(L, embed_ext(nu)) * Rational(-1));
        return w;
    };

    try {
        GaugeWitness w1 = stage0(F1, "first");
        GaugeWitness w2 = stage0(F2, "second");
        HbarSeries F1cur = gauge_transform(F1, w1, N);
        const HbarSeries F2p = gauge_transform(F2, w2, N);
        if (!(F1cur.at(1) == f_emb) || !(F2p.at(1) == f_emb))
            throw std::logic_error("order one gauge move missed the relative r-matrix");

        HbarSeries uW = HbarSeries::unit(L, 1, N);
        HbarSeries lamW(L, 2, N);
        for (int n = 1; n < N; ++n) {
            if (!(F1cur.at(n) == F2p.at(n)))
                throw std::logic_error("gauge induction lost an order it had already matched");
            TensorElement eta = F2p.at(n + 1) - F1cur.at(n + 1);
            if (eta.is_zero()) continue;
            if (!hochschild_d(eta).is_zero())
                throw detail::GaugeObstruction{
                    n + 1, "difference at order " + std::to_string(n + 1) +
                               " is not a Hochschild cocycle, so the twists "
                               "do not solve a common relative equation"};
            TensorElement xt = alt(eta);
            ExtElement mu(L, 2);
            if (!xt.is_zero()) {
                auto m = unembed_ext(xt);
                if (!m) throw std::logic_error("cocycle alternation is not a wedge");
                mu = *m;
                if (!detail::is_central_wedge(lev, mu))
                    throw detail::GaugeObstruction{
                        n + 1, "difference at order " + std::to_string(n + 1) +
                                   " carries a wedge outside the central directions"};
                if (opts.theta_mode)
                    throw std::logic_error(
                        "theta symmetric pair produced a central wedge past order one");
            }
            TensorElement mu_emb = detail::retag(L, embed_ext(mu));
            TensorElement v = primitive(eta - mu_emb, n + 1);
            GaugeWitness ws{HbarSeries::unit(L, 1, N), HbarSeries(L, 2, N)};
            ws.u.set(n + 1, v);
            ws.lam.set(n + 1, mu_emb);
            F1cur = gauge_transform(F1cur, ws, N);
            if (!(F1cur.at(n + 1) == F2p.at(n + 1)))
                throw std::logic_error("gauge induction step failed to match its order");
            uW = ws.u * uW;
            lamW += ws.lam;
        }
        if (!(F1cur == F2p))
            throw std::logic_error("gauge induction finished without matching the twists");

        GaugeWitness total{w2.u.inverse() * uW * w1.u, w1.lam + lamW - w2.lam};
        if (!(gauge_transform(F1, total, N) == F2))
            throw std::logic_error(
                "assembled gauge witness does not carry the first twist onto the second");
        if (opts.theta_mode) {
            if (!total.lam.is_zero())
                throw std::logic_error("theta gauge witness acquired a central wedge");
            if (!(series_theta(total.u) == total.u))
                throw std::logic_error("gauge witness lost the theta symmetry");
        }
        if (opts.hc_normalized &&
            !(series_hc_bar(lev, total.u) == HbarSeries::unit(L, 1, N)))
            throw std::logic_error("gauge witness unit is not bar normalised");

        out.status = GaugeStatus::Equivalent;
        out.witness = std::move(total);
    } catch (const detail::GaugeObstruction& e) {
        out.status = GaugeStatus::NotEquivalent;
        out.failed_order = e.order;
        out.reason = e.reason;
    }
    return out;
}

} // namespace reltwist
