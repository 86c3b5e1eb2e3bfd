#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <reltwist/invariants.hpp>
#include <reltwist/series.hpp>
#include <reltwist/star.hpp>

namespace reltwist {

// coproduct at slot i (1-based), conjugated by a background twist when one is
// given: the freshly opened pair of slots is dressed as B . Delta_i(a) . B^{-1}
inline HbarSeries series_coproduct_at(const HbarSeries& a, int i,
                                      const std::optional<HbarSeries>& background) {
    HbarSeries d = series_coproduct_at(a, i);
    if (!background) return d;
    HbarSeries B = series_place(background->with_cap(a.cap()), {i - 1, i}, d.k());
    return B * d * B.inverse();
}

// (Phi)_F = (1 (x) F) (id (x) Delta)(F) Phi ((Delta (x) id)(F))^{-1} (F (x) 1)^{-1}
inline HbarSeries twist_conjugate(const HbarSeries& Phi, const HbarSeries& F,
                                  const std::optional<HbarSeries>& background = {}) {
    if (Phi.k() != 3 || F.k() != 2)
        throw std::invalid_argument("twist_conjugate wants a 3-slot series and a 2-slot series");
    HbarSeries Fc = F.with_cap(Phi.cap());
    return series_place(Fc, {1, 2}, 3) * series_coproduct_at(Fc, 2, background) * Phi *
           series_coproduct_at(Fc, 1, background).inverse() * series_place(Fc, {0, 1}, 3).inverse();
}

// (1 (x) Phi) (id (x) Delta (x) id)(Phi) (Phi (x) 1)
//   - (id (x) id (x) Delta)(Phi) (Delta (x) id (x) id)(Phi)
inline HbarSeries pentagon_residual(const HbarSeries& Phi, int cap,
                                    const std::optional<HbarSeries>& background = {}) {
    if (Phi.k() != 3) throw std::invalid_argument("pentagon needs a 3-slot series");
    HbarSeries P = Phi.with_cap(cap);
    return series_place(P, {1, 2, 3}, 4) * series_coproduct_at(P, 2, background) *
               series_place(P, {0, 1, 2}, 4) -
           series_coproduct_at(P, 3, background) * series_coproduct_at(P, 1, background);
}

// bar projection applied to every coefficient
inline HbarSeries hc_associator(const HbarSeries& Phi, const LeviData& lev) {
    return series_hc_bar(lev, Phi);
}

// associator with the canonical hbar^2 term (1/6)[Omega_12, Omega_23],
// valid modulo hbar^4
inline HbarSeries builtin_phi(const LieAlgebra& L, int cap) {
    if (cap > 3)
        throw std::invalid_argument(
            "built-in associator stops at hbar^3; supply an associator file for higher orders");
    HbarSeries phi = HbarSeries::unit(L, 3, cap);
    if (cap >= 2) {
        LeviData full = LeviData::make(L, Subdiagram::full(L.rs.rank));
        TensorElement om = casimir_tensor(full);
        TensorElement o12 = place_slots(om, {0, 1}, 3);
        TensorElement o23 = place_slots(om, {1, 2}, 3);
        phi.set(2, (multiply(o12, o23) - multiply(o23, o12)) * Rational(1, 6));
    }
    return phi;
}

namespace detail {

inline int factor_of_index(const LieAlgebra& L, int i) {
    if (L.kind(i) == LieAlgebra::Kind::H) return L.factor_of_node(L.node_of(i));
    return L.rs.pos[L.root_of(i)].factor;
}

// positive rational square root, or nullopt
inline std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x <= 0) return std::nullopt;
    Rational c = x;
    c.canonicalize();
    mpz_class num = c.get_num(), den = c.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn) / Rational(rd);
}

} // namespace detail

// Per-factor scale t with: the form behind phi2 equals t * the form of L.
// Works off the degree-3 alternation, which for a non-degenerate associator
// is the Cartan cubic tensor of the scaled form, one component per factor.
inline std::vector<Rational> detect_form_scaling(const LieAlgebra& L, const TensorElement& phi2) {
    auto cube_user = unembed_ext(alt(phi2));
    if (!cube_user)
        throw std::invalid_argument("associator: alternation at hbar^2 is not a wedge cube");

    TensorElement ref2 = builtin_phi(L, 2).at(2);
    auto cube_ref = unembed_ext(alt(ref2));
    if (!cube_ref) throw std::logic_error("reference cubic tensor failed to unembed");

    const size_t nf = L.rs.factors.size();
    std::vector<Rational> ratio(nf, Rational(0));
    std::vector<char> seen(nf, 0);

    ExtElement ref_terms = *cube_ref;
    for (const auto& [idx, c] : ref_terms.terms()) {
        int fi = detail::factor_of_index(L, idx[0]);
        if (seen[fi]) continue;
        Rational cu = cube_user->coeff(idx);
        if (cu == 0)
            throw std::invalid_argument("associator is degenerate on a simple factor");
        ratio[fi] = cu / c;
        seen[fi] = 1;
    }
    for (size_t fi = 0; fi < nf; ++fi)
        if (!seen[fi]) throw std::logic_error("reference cubic tensor misses a factor");

    // the ratios must reproduce the whole cube, factor by factor
    ExtElement recon(L, 3);
    for (const auto& [idx, c] : ref_terms.terms())
        recon.add_term(idx, c * ratio[detail::factor_of_index(L, idx[0])]);
    if (!(recon == *cube_user))
        throw std::invalid_argument("associator: hbar^2 term is not a scaled Cartan cube");

    // component ratio 1/t^2 per factor determines the scale t
    std::vector<Rational> scale(nf);
    for (size_t fi = 0; fi < nf; ++fi) {
        auto t = detail::rational_sqrt(Rational(1) / ratio[fi]);
        if (!t)
            throw std::invalid_argument("associator: form scale is not a rational square");
        scale[fi] = *t;
    }
    return scale;
}

// validated associator plus everything downstream construction needs
struct Associator {
    HbarSeries s;                // k = 3, unit leading term
    std::vector<Rational> scale; // form scale per simple factor
    bool counital = false;
    bool mirror_inverse = false; // s^{321} == s^{-1}
    bool theta_fixed = false;    // s^Theta == s
};

inline Associator validate_associator(const HbarSeries& Phi) {
    const LieAlgebra& L = Phi.algebra();
    if (Phi.k() != 3) throw std::invalid_argument("associator must live in three slots");
    if (!(Phi.at(0) == TensorElement::unit(L, 3)))
        throw std::invalid_argument("associator must start at 1");
    if (Phi.cap() >= 1 && !Phi.at(1).is_zero())
        throw std::invalid_argument("associator must have no hbar^1 term");

    if (!pentagon_residual(Phi, Phi.cap()).is_zero())
        throw std::invalid_argument("associator fails the pentagon identity");

    LeviData full_pair = LeviData::make(L, Subdiagram::full(L.rs.rank));
    std::vector<SparseGVec> action = levi_raising_lowering(full_pair);
    for (int n = 1; n <= Phi.cap(); ++n) {
        const TensorElement& c = Phi.at(n);
        if (c.is_zero()) continue;
        if (!is_weight_zero(c))
            throw std::invalid_argument("associator coefficient is not weight zero");
        for (const auto& x : action)
            if (!adjoint_action(x, c).is_zero())
                throw std::invalid_argument("associator coefficient is not invariant");
    }

    Associator out{Phi, {}, true, false, false};
    if (Phi.cap() < 2)
        throw std::invalid_argument("associator must be given at least modulo hbar^3");
    out.scale = detect_form_scaling(L, Phi.at(2));

    for (int i = 1; i <= 3 && out.counital; ++i)
        if (!(series_counit_at(Phi, i) == HbarSeries::unit(L, 2, Phi.cap()))) out.counital = false;

    out.mirror_inverse = series_permute(Phi, {2, 1, 0}) == Phi.inverse();
    out.theta_fixed = series_theta(Phi) == Phi;
    return out;
}

} // namespace reltwist
