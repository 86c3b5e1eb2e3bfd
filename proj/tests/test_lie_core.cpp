// Chevalley bases, invariant form, involution, Levi data.
#include <gtest/gtest.h>

#include "reltwist/lie_algebra.hpp"

using namespace reltwist;

namespace {

SparseGVec unit(int i) { return {{i, Rational(1)}}; }

// exhaustive Jacobi over the basis
void check_jacobi(const LieAlgebra& L) {
    for (int i = 0; i < L.dim; ++i)
        for (int j = i + 1; j < L.dim; ++j)
            for (int k = j + 1; k < L.dim; ++k) {
                SparseGVec s = gv_bracket(L, gv_bracket(L, unit(i), unit(j)), unit(k));
                s = gv_add(s, gv_bracket(L, gv_bracket(L, unit(j), unit(k)), unit(i)));
                s = gv_add(s, gv_bracket(L, gv_bracket(L, unit(k), unit(i)), unit(j)));
                ASSERT_TRUE(s.empty()) << L.rs.type << " Jacobi fails at ("
                                       << L.basis_name(i) << "," << L.basis_name(j)
                                       << "," << L.basis_name(k) << ")";
            }
}

void check_form_invariance(const LieAlgebra& L) {
    for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < L.dim; ++j)
            for (int k = 0; k < L.dim; ++k) {
                Rational s = gv_form(L, gv_bracket(L, unit(i), unit(j)), unit(k)) +
                             gv_form(L, unit(j), gv_bracket(L, unit(i), unit(k)));
                ASSERT_EQ(s, 0) << L.rs.type << " form not invariant at ("
                                << i << "," << j << "," << k << ")";
            }
}

void check_theta(const LieAlgebra& L) {
    auto theta = [&](const SparseGVec& v) {
        SparseGVec out;
        for (auto& t : v) out.emplace_back(L.theta_index(t.first), -t.second);
        return gv_normalize(std::move(out));
    };
    for (int i = 0; i < L.dim; ++i) {
        // involution
        SparseGVec tt = theta(theta(unit(i)));
        ASSERT_EQ(tt, unit(i));
        for (int j = 0; j < L.dim; ++j) {
            // automorphism: [theta x, theta y] = theta [x,y]
            SparseGVec lhs = gv_bracket(L, theta(unit(i)), theta(unit(j)));
            SparseGVec rhs = theta(gv_bracket(L, unit(i), unit(j)));
            ASSERT_EQ(lhs, rhs) << L.rs.type << " theta not an automorphism at ("
                                << L.basis_name(i) << "," << L.basis_name(j) << ")";
            // isometry
            ASSERT_EQ(gv_form(L, theta(unit(i)), theta(unit(j))), L.form(i, j));
        }
    }
}

} // namespace

TEST(LieCore, A1Basics) {
    auto L = LieAlgebra::build("A1");
    ASSERT_EQ(L.dim, 3);
    int f = L.fidx(0), h = L.hidx(0), e = L.eidx(0);
    EXPECT_EQ(L.form(e, f), Rational(1));
    EXPECT_EQ(L.form(h, h), Rational(2));
    EXPECT_EQ(L.form(e, e), Rational(0));
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h
    EXPECT_EQ(L.bracket(h, e), (SparseGVec{{e, Rational(2)}}));
    EXPECT_EQ(L.bracket(h, f), (SparseGVec{{f, Rational(-2)}}));
    EXPECT_EQ(L.bracket(e, f), (SparseGVec{{h, Rational(1)}}));
}

TEST(LieCore, A2ExtraspecialSign) {
    auto L = LieAlgebra::build("A2");
    ASSERT_EQ(L.dim, 8);
    // root order: a1, a2, a1+a2
    EXPECT_EQ(L.rs.pos[0].coords, (RootCoords{1, 0}));
    EXPECT_EQ(L.rs.pos[1].coords, (RootCoords{0, 1}));
    EXPECT_EQ(L.rs.pos[2].coords, (RootCoords{1, 1}));
    // [e1, e2] = +e_{12} under the extraspecial convention
    EXPECT_EQ(L.bracket(L.eidx(0), L.eidx(1)), (SparseGVec{{L.eidx(2), Rational(1)}}));
    EXPECT_EQ(L.bracket(L.eidx(1), L.eidx(0)), (SparseGVec{{L.eidx(2), Rational(-1)}}));
    // [f1, f2] = -f_{12}
    EXPECT_EQ(L.bracket(L.fidx(0), L.fidx(1)), (SparseGVec{{L.fidx(2), Rational(-1)}}));
}

TEST(LieCore, B2ShortLongPairing) {
    auto L = LieAlgebra::build("B2");
    ASSERT_EQ(L.rs.num_pos(), 4);
    // a1 long (norm 2), a2 short (norm 1)
    EXPECT_EQ(L.rs.pos[0].norm2, Rational(2));
    EXPECT_EQ(L.rs.pos[1].norm2, Rational(1));
    EXPECT_EQ(L.form(L.eidx(0), L.fidx(0)), Rational(1));
    EXPECT_EQ(L.form(L.eidx(1), L.fidx(1)), Rational(2));
    // [e2, [e1,e2]] = 2 e_{a1+2a2}
    int e12 = L.rs.pos_index.at(RootCoords{1, 1});
    int e122 = L.rs.pos_index.at(RootCoords{1, 2});
    EXPECT_EQ(L.bracket(L.eidx(1), L.eidx(e12)), (SparseGVec{{L.eidx(e122), Rational(2)}}));
}

TEST(LieCore, G2RootSystem) {
    auto L = LieAlgebra::build("G2");
    EXPECT_EQ(L.rs.num_pos(), 6);
    EXPECT_EQ(L.dim, 14);
    EXPECT_EQ(L.rs.pos[0].norm2, Rational(2, 3)); // a1 short
    EXPECT_EQ(L.rs.pos[1].norm2, Rational(2));    // a2 long
    // highest root 3a1 + 2a2 is long
    EXPECT_EQ(L.rs.pos[5].coords, (RootCoords{3, 2}));
    EXPECT_EQ(L.rs.pos[5].norm2, Rational(2));
}

TEST(LieCore, ProductAlgebra) {
    auto L = LieAlgebra::build("A1xA1");
    EXPECT_EQ(L.dim, 6);
    // cross-factor brackets vanish, cross-factor form vanishes
    EXPECT_TRUE(L.bracket(L.eidx(0), L.fidx(1)).empty());
    EXPECT_EQ(L.form(L.eidx(0), L.fidx(1)), Rational(0));
    EXPECT_EQ(L.form(L.hidx(0), L.hidx(1)), Rational(0));
}

TEST(LieCore, RejectsBadType) {
    EXPECT_THROW(LieAlgebra::build("Z9"), std::invalid_argument);
    EXPECT_THROW(LieAlgebra::build("D3"), std::invalid_argument);
    EXPECT_THROW(LieAlgebra::build("B1"), std::invalid_argument);
    EXPECT_THROW(LieAlgebra::build("A2x"), std::invalid_argument);
    EXPECT_THROW(LieAlgebra::build(""), std::invalid_argument);
}

TEST(LieCore, JacobiAndInvariance) {
    for (const char* t : {"A1", "A2", "A3", "B2", "G2", "A1xA1", "A2xA1"}) {
        auto L = LieAlgebra::build(t);
        check_jacobi(L);
        check_form_invariance(L);
        check_theta(L);
    }
}

TEST(LieCore, JacobiLargerTypes) {
    for (const char* t : {"A4", "B3", "C3", "D4"}) {
        auto L = LieAlgebra::build(t);
        check_jacobi(L);
        check_form_invariance(L);
        check_theta(L);
    }
}

TEST(LieCore, LeviCartanProjection) {
    auto L = LieAlgebra::build("A2");
    auto D = Subdiagram::parse("1", 2);
    auto lev = LeviData::make(L, D);
    // p(h2) = -1/2 h1
    EXPECT_EQ(lev.cartan_proj(1), (SparseGVec{{L.hidx(0), Rational(-1, 2)}}));
    EXPECT_EQ(lev.cartan_proj(0), (SparseGVec{{L.hidx(0), Rational(1)}}));
    // c_D = span of the fundamental coweight (h1 + 2 h2)/3
    ASSERT_EQ(lev.crel.size(), 1u);
    EXPECT_EQ(lev.crel[0], (std::vector<Rational>{Rational(1, 3), Rational(2, 3)}));
    // P_D + P_0 restore h2
    auto pd = lev.project(L.hidx(1), 'D');
    auto p0 = lev.project(L.hidx(1), '0');
    EXPECT_EQ(gv_add(pd, p0), (SparseGVec{{L.hidx(1), Rational(1)}}));
    // zones: e_{a2} and e_{a1+a2} sit in n+
    using Z = LeviData::Zone;
    EXPECT_EQ(lev.zone[L.eidx(0)], Z::SmallRoot);
    EXPECT_EQ(lev.zone[L.eidx(1)], Z::NPlusRel);
    EXPECT_EQ(lev.zone[L.eidx(2)], Z::NPlusRel);
    EXPECT_EQ(lev.zone[L.fidx(2)], Z::NMinusRel);
}

TEST(LieCore, LeviSubmodules) {
    // [l_D, n+] in n+, [n+, n+] in n+, same on the n- side
    for (const char* t : {"A2", "A3", "B2"}) {
        auto L = LieAlgebra::build(t);
        for (int mask = 0; mask < (1 << L.rs.rank); ++mask) {
            std::string s;
            for (int b = 0; b < L.rs.rank; ++b)
                if (mask & (1 << b)) s += (s.empty() ? "" : ",") + std::to_string(b + 1);
            auto lev = LeviData::make(L, Subdiagram::parse(s, L.rs.rank));
            using Z = LeviData::Zone;
            auto zone_of = [&](const SparseGVec& v, Z want) {
                for (auto& tm : v) {
                    Z z = lev.zone[tm.first];
                    if (L.kind(tm.first) == LieAlgebra::Kind::H) return false; // Cartan not expected
                    if (z != want) return false;
                }
                return true;
            };
            for (int i = 0; i < L.dim; ++i)
                for (int j = 0; j < L.dim; ++j) {
                    bool i_levi = lev.zone[i] == Z::SmallRoot || lev.zone[i] == Z::Cartan;
                    if (i_levi && lev.zone[j] == Z::NPlusRel) {
                        auto br = L.bracket(i, j);
                        if (!br.empty())
                            ASSERT_TRUE(zone_of(br, Z::NPlusRel))
                                << t << " D={" << s << "} [levi, n+] escaped n+";
                    }
                    if (lev.zone[i] == Z::NPlusRel && lev.zone[j] == Z::NPlusRel) {
                        auto br = L.bracket(i, j);
                        if (!br.empty())
                            ASSERT_TRUE(zone_of(br, Z::NPlusRel)) << t << " [n+,n+] escaped";
                    }
                    if (lev.zone[i] == Z::NMinusRel && lev.zone[j] == Z::NMinusRel) {
                        auto br = L.bracket(i, j);
                        if (!br.empty())
                            ASSERT_TRUE(zone_of(br, Z::NMinusRel)) << t << " [n-,n-] escaped";
                    }
                }
        }
    }
}

TEST(LieCore, CoweightsPairAlphaToDelta) {
    for (const char* t : {"A3", "B3", "G2"}) {
        auto L = LieAlgebra::build(t);
        auto lev = LeviData::make(L, Subdiagram::parse("", L.rs.rank)); // D = empty
        ASSERT_EQ((int)lev.crel.size(), L.rs.rank);
        for (int k = 0; k < L.rs.rank; ++k)
            for (int j = 0; j < L.rs.rank; ++j) {
                // alpha_j(t_k) = sum_i b_i cart[i][j]
                Rational s = 0;
                for (int i = 0; i < L.rs.rank; ++i)
                    s += lev.crel[k][i] * Rational(L.rs.cart[i][j]);
                EXPECT_EQ(s, Rational(j == lev.drop[k] ? 1 : 0));
            }
    }
}

TEST(LieCore, DualBasesReproduceForm) {
    auto L = LieAlgebra::build("A2");
    auto lev = LeviData::make(L, Subdiagram::parse("1,2", 2)); // g_D = g
    auto [base, dual] = lev.small_dual_bases();
    ASSERT_EQ(base.size(), (size_t)L.dim);
    for (size_t a = 0; a < base.size(); ++a)
        for (size_t b = 0; b < base.size(); ++b)
            EXPECT_EQ(gv_form(L, base[a], dual[b]), Rational(a == b ? 1 : 0));
}

TEST(LieCore, FormScaling) {
    auto L = LieAlgebra::build("A1").with_form_scale({Rational(3)});
    EXPECT_EQ(L.form(L.eidx(0), L.fidx(0)), Rational(3));
    EXPECT_EQ(L.form(L.hidx(0), L.hidx(0)), Rational(6));
}
