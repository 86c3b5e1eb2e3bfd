#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <reltwist/associator.hpp>

namespace reltwist {

// solver sizes per constructed order, kept for reports
struct OrderStats {
    int order = 0;          // hbar order whose coefficient this step produced
    int residual_terms = 0; // term count of the deviation absorbed here
    int secondary = 0;      // Schouten corrections inserted one order down
    int candidates = 0;     // stacked solver columns of the primitive solve
    int escalations = 0;    // degree raises before the solve landed
    int degree_used = 0;    // PBW degree the primitive was searched at
};

struct Twist {
    HbarSeries s; // k = 2, leading term 1
    bool hc_normalized = false;
    bool theta_symmetric = false;
    int secondary_corrections = 0;
    std::vector<OrderStats> stats;
};

struct BuildOptions {
    bool theta_mode = false;
    int degree_cap = 0;     // primitive search start, 0 picks max(deg xi, 2n)
    int degree_cap_max = 0; // escalation limit, 0 picks 4n
    int ladder_step = 2;    // how many nodes one ladder pass may drop
};

namespace detail {

// rebind an element onto another algebra of the same Cartan type
inline TensorElement retag(const LieAlgebra& L, const TensorElement& a) {
    TensorElement out(L, a.k());
    for (const auto& [m, c] : a.terms()) out.add_term(m, c);
    return out;
}

} // namespace detail

// F23 . (id (x) Delta)(F) . Phi - PhiD . F12 . (Delta (x) id)(F), truncated
inline HbarSeries deviation_series(const HbarSeries& Phi, const HbarSeries& PhiD,
                                   const HbarSeries& F, int cap) {
    HbarSeries Fc = F.with_cap(cap);
    return series_place(Fc, {1, 2}, 3) * series_coproduct_at(Fc, 2) * Phi.with_cap(cap) -
           PhiD.with_cap(cap) * series_place(Fc, {0, 1}, 3) * series_coproduct_at(Fc, 1);
}

// coefficient of hbar^{n+1} in the deviation, after checking that F really
// solves the relative equation modulo hbar^{n+1}
inline TensorElement deviation_xi(const HbarSeries& Phi, const HbarSeries& PhiD,
                                  const HbarSeries& F, int n) {
    HbarSeries dev = deviation_series(Phi, PhiD, F, n + 1);
    for (int m = 0; m <= n; ++m)
        if (!dev.at(m).is_zero())
            throw std::invalid_argument("twist misses the relative equation already at order " +
                                        std::to_string(m));
    return dev.at(n + 1);
}

namespace detail {

// properties every deviation coefficient carries; failures mean a bug
inline void deviation_guards(const LeviData& lev, const TensorElement& xi, bool theta_mode) {
    if (!is_weight_zero(xi)) throw std::logic_error("deviation is not weight zero");
    for (const auto& x : levi_raising_lowering(lev))
        if (!adjoint_action(x, xi).is_zero())
            throw std::logic_error("deviation is not Levi invariant");
    if (!hochschild_d(xi).is_zero()) throw std::logic_error("deviation is not a cocycle");
    if (!hc_project_bar(lev, xi).is_zero())
        throw std::logic_error("deviation survives the bar projection");
    if (theta_mode) {
        TensorElement mirror = permute(xi, {2, 1, 0}) * Rational(-1);
        if (!(theta_twist(xi) == mirror))
            throw std::logic_error("deviation breaks the theta mirror rule");
    }
}

} // namespace detail

/*
 * Order-by-order construction of F with (Phi)_F equal to the bar projection
 * of Phi.  The order-1 coefficient is the relative r-matrix of the pair read
 * through the detected form scale.  Each later order first kills the
 * alternation of the deviation by a Schouten correction one order down, then
 * absorbs the rest through a Hochschild primitive, normalised so the bar
 * projection of F stays 1.
 */
inline Twist build_relative_twist(const Associator& A, const LeviData& lev, int N,
                                  const BuildOptions& opts = {}) {
    const LieAlgebra& L = *lev.L;
    if (N < 1) throw std::invalid_argument("twist order must be at least 1");
    if (A.s.cap() < N)
        throw std::invalid_argument("associator is only given modulo hbar^" +
                                    std::to_string(A.s.cap() + 1));
    if (opts.theta_mode && !(A.mirror_inverse && A.theta_fixed))
        throw std::invalid_argument(
            "theta mode needs an associator with the mirror and theta symmetries");
    if ((int)lev.drop.size() > 2 && !opts.theta_mode)
        throw std::invalid_argument("corank above two needs theta mode or a ladder");
    if (A.scale.size() != L.rs.factors.size())
        throw std::invalid_argument("associator scale does not match the algebra");

    // r-matrices live in the algebra carrying the scaled form
    std::vector<Rational> eff = L.form_scale;
    for (size_t i = 0; i < eff.size(); ++i) eff[i] *= A.scale[i];
    LieAlgebra Ls = L.with_form_scale(eff);
    LeviData lev_s = LeviData::make(Ls, lev.big, lev.small);
    StarComplex star(lev_s);
    ExtElement f_rel = relative_r(lev_s);

    HbarSeries Phi = A.s.with_cap(N);
    HbarSeries PhiD = hc_associator(Phi, lev);
    if (!pentagon_residual(PhiD, N).is_zero())
        throw std::logic_error("bar projection broke the pentagon");

    Twist out{HbarSeries::unit(L, 2, N), true, opts.theta_mode, 0};
    out.s.set(1, detail::retag(L, embed_ext(f_rel)));

    for (int n = 1; n < N; ++n) {
        OrderStats st;
        st.order = n + 1;
        TensorElement xi = deviation_xi(Phi, PhiD, out.s, n);
        detail::deviation_guards(lev, xi, opts.theta_mode);

        TensorElement xt = alt(xi);
        if (!xt.is_zero()) {
            if (n == 1)
                throw std::runtime_error(
                    "associator cube does not match the relative r-matrix; "
                    "the form behind it is degenerate on this pair");
            auto cube = unembed_ext(xt);
            if (!cube) throw std::logic_error("deviation alternation is not a wedge cube");
            if (!schouten(f_rel, *cube).is_zero())
                throw std::logic_error("deviation cube is not closed for the relative r");
            auto chi = solve_schouten_coboundary(star, *cube, 2, InvarianceLevel::Levi);
            if (!chi)
                throw std::runtime_error(
                    "order " + std::to_string(n + 1) +
                    " obstruction is outside the relative Schouten image; "
                    "try a ladder or theta mode");
            ExtElement corr = *chi;
            if (opts.theta_mode) {
                corr = (corr - theta_ext(corr)) * Rational(1, 2);
                if (!(star.d(corr) == *cube))
                    throw std::logic_error("theta averaging destroyed the Schouten solution");
            }
            out.s.set(n, out.s.at(n) + detail::retag(L, embed_ext(corr)));
            ++out.secondary_corrections;
            ++st.secondary;
            xi = deviation_xi(Phi, PhiD, out.s, n);
            if (!alt(xi).is_zero())
                throw std::logic_error("Schouten correction failed to kill the alternation");
        }

        st.residual_terms = (int)xi.terms().size();
        if (xi.is_zero()) {
            out.stats.push_back(st);
            continue;
        }

        int cap0 = opts.degree_cap ? opts.degree_cap : std::max(xi.degree(), 2 * n);
        int cap1 = opts.degree_cap_max ? opts.degree_cap_max : std::max(cap0, 4 * n);
        CoboundaryStats cst;
        auto g = solve_hochschild_coboundary(lev, xi, cap0, cap1, &cst);
        st.candidates = cst.candidates;
        st.escalations = cst.escalations;
        st.degree_used = cst.degree_used;
        if (!g)
            throw std::runtime_error("no Levi invariant primitive for the order " +
                                     std::to_string(n + 1) + " deviation up to degree " +
                                     std::to_string(cap1));
        TensorElement gg = *g;
        // mirror averaging must happen before the bar normalisation: the bar
        // projection only commutes with the mirror on mirror-symmetric input
        if (opts.theta_mode) gg = (gg + theta_twist(permute(gg, {1, 0}))) * Rational(1, 2);
        out.s.set(n + 1, (gg - hc_project_bar(lev, gg)) * Rational(-1));
        out.stats.push_back(st);
    }

    if (!deviation_series(Phi, PhiD, out.s, N).is_zero())
        throw std::logic_error("constructed twist does not satisfy the relative equation");
    for (int n = 1; n <= N; ++n)
        if (!hc_project_bar(lev, out.s.at(n)).is_zero())
            throw std::logic_error("constructed twist is not bar normalised");
    if (opts.theta_mode && !(series_theta(out.s) == series_permute(out.s, {1, 0})))
        throw std::logic_error("constructed twist is not theta symmetric");
    return out;
}

/*
 * Nested chain from the big diagram down to the small one, dropping the
 * highest-numbered nodes first, at most ladder_step nodes per pass.  The
 * composite twist is the product of the step twists, later steps on the left;
 * Levi invariance of each step makes the plain coproduct conjugations compose.
 */
inline Twist ladder_chain(const Associator& A, const LeviData& lev, int N,
                          const BuildOptions& opts = {}) {
    const LieAlgebra& L = *lev.L;
    if (opts.ladder_step < 1) throw std::invalid_argument("ladder step must be positive");

    std::vector<int> drops = lev.drop;
    std::sort(drops.rbegin(), drops.rend());
    std::vector<Subdiagram> chain{lev.big};
    for (size_t at = 0; at < drops.size(); at += opts.ladder_step) {
        Subdiagram next = chain.back();
        for (size_t j = at; j < std::min(drops.size(), at + (size_t)opts.ladder_step); ++j)
            next.nodes.erase(std::find(next.nodes.begin(), next.nodes.end(), drops[j]));
        chain.push_back(std::move(next));
    }

    HbarSeries Phi = A.s.with_cap(N);
    Twist out{HbarSeries::unit(L, 2, N), true, opts.theta_mode, 0};
    for (size_t j = 0; j + 1 < chain.size(); ++j) {
        LeviData rung = LeviData::make(L, chain[j], chain[j + 1]);
        Associator Aj{Phi, A.scale, A.counital, A.mirror_inverse, A.theta_fixed};
        Twist Fj = build_relative_twist(Aj, rung, N, opts);
        out.s = Fj.s * out.s;
        out.secondary_corrections += Fj.secondary_corrections;
        out.stats.insert(out.stats.end(), Fj.stats.begin(), Fj.stats.end());
        Phi = hc_associator(Phi, rung);
        if (!pentagon_residual(Phi, N).is_zero())
            throw std::logic_error("ladder rung broke the pentagon");
    }

    if (!(Phi == hc_associator(A.s.with_cap(N), lev)))
        throw std::logic_error("chained bar projections disagree with the direct one");
    if (!(twist_conjugate(A.s.with_cap(N), out.s) == Phi))
        throw std::logic_error("ladder product does not conjugate the associator correctly");
    if (!(series_hc_bar(lev, out.s) == HbarSeries::unit(L, 2, N)))
        throw std::logic_error("ladder product is not bar normalised");
    if (opts.theta_mode && !(series_theta(out.s) == series_permute(out.s, {1, 0})))
        throw std::logic_error("ladder product is not theta symmetric");
    return out;
}

} // namespace reltwist
