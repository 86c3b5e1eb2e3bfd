#include "reltwist/report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace reltwist;

namespace {

struct Fixture {
    LieAlgebra L = LieAlgebra::build("A2");
    LeviData lev = LeviData::make(L, Subdiagram{{0}});
    Associator A = validate_associator(builtin_phi(L, 3));
    Twist T = build_relative_twist(A, lev, 2);
};

std::string tmp_path(const char* stem) {
    return std::string(::testing::TempDir()) + stem;
}

} // namespace

TEST(Rationals, RoundTripAndErrors) {
    EXPECT_EQ(rational_str(Rational(-7, 3)), "-7/3");
    EXPECT_EQ(rational_parse("-7/3"), Rational(-7, 3));
    EXPECT_EQ(rational_parse("6/4"), Rational(3, 2)); // canonicalised on parse
    EXPECT_EQ(rational_parse("0"), Rational(0));
    EXPECT_THROW(rational_parse("x/3"), std::invalid_argument);
    EXPECT_THROW(rational_parse("1/0"), std::invalid_argument);
    EXPECT_THROW(rational_parse(""), std::invalid_argument);
}

TEST(TensorJson, ByteIdenticalRoundTrip) {
    Fixture fx;
    TensorElement a = fx.T.s.at(2);
    json j = tensor_to_json(a);
    std::string d = j.dump(2);
    TensorElement b = tensor_from_json(fx.L, json::parse(d));
    EXPECT_EQ(a, b);
    EXPECT_EQ(tensor_to_json(b).dump(2), d);
}

TEST(TensorJson, RejectsMalformedInput) {
    Fixture fx;
    EXPECT_THROW(tensor_from_json(fx.L, json{{"terms", json::array()}}),
                 std::invalid_argument); // no k
    EXPECT_THROW(tensor_from_json(fx.L, json{{"k", 0}, {"terms", json::array()}}),
                 std::invalid_argument);
    // dense monomial rows must cover the whole basis
    json bad{{"k", 1},
             {"terms", json::array({json{{"mono", json::array({json::array({1, 0})})},
                                         {"coef", "1"}}})}};
    EXPECT_THROW(tensor_from_json(fx.L, bad), std::invalid_argument);
}

TEST(ExtJson, RoundTripAndOrderingGuard) {
    Fixture fx;
    ExtElement r = relative_r(fx.lev);
    ExtElement r2 = ext_from_json(fx.L, ext_to_json(r));
    EXPECT_EQ(r, r2);

    json bad{{"deg", 2},
             {"terms", json::array({json{{"idx", json::array({3, 1})}, {"coef", "1"}}})}};
    EXPECT_THROW(ext_from_json(fx.L, bad), std::invalid_argument);
}

TEST(SeriesJson, RoundTripAndShapeGuards) {
    Fixture fx;
    json j = series_to_json(fx.T.s);
    HbarSeries s2 = series_from_json(fx.L, j);
    EXPECT_EQ(s2, fx.T.s);

    json bad = j;
    bad["coeffs"] = json::array(); // N promises more coefficients
    EXPECT_THROW(series_from_json(fx.L, bad), std::invalid_argument);
}

TEST(TwistArtifact, ByteIdenticalRoundTrip) {
    Fixture fx;
    json j = twist_to_json("A2", fx.lev, fx.A.scale, fx.T);
    std::string d1 = j.dump(2);
    TwistFile tf = twist_from_json(fx.L, json::parse(d1));

    EXPECT_EQ(tf.s, fx.T.s);
    EXPECT_EQ(tf.big.nodes, fx.lev.big.nodes);
    EXPECT_EQ(tf.small.nodes, fx.lev.small.nodes);
    EXPECT_FALSE(tf.theta);
    EXPECT_TRUE(tf.hc_normalized);
    EXPECT_EQ(tf.secondary_corrections, 0);
    EXPECT_EQ(tf.form_scaling, fx.A.scale);

    Twist back{tf.s, tf.hc_normalized, tf.theta, tf.secondary_corrections};
    EXPECT_EQ(twist_to_json("A2", fx.lev, tf.form_scaling, back).dump(2), d1);
}

TEST(TwistArtifact, FormatTagIsChecked) {
    Fixture fx;
    json j = twist_to_json("A2", fx.lev, fx.A.scale, fx.T);
    EXPECT_EQ(artifact_type(j, "reltwist-twist"), "A2");
    EXPECT_THROW(artifact_type(j, "reltwist-witness"), std::invalid_argument);

    json wrong = j;
    wrong["format"] = "something-else";
    EXPECT_THROW(twist_from_json(fx.L, wrong), std::invalid_argument);
}

TEST(WitnessArtifact, RoundTrip) {
    Fixture fx;
    GaugeCheck gc = gauge_witness(fx.T.s, fx.T.s, fx.lev, 2);
    ASSERT_TRUE(gc.ok());
    json wj = witness_to_json("A2", fx.lev, *gc.witness, false, true);
    WitnessFile wf = witness_from_json(fx.L, json::parse(wj.dump()));
    EXPECT_EQ(wf.w.u, gc.witness->u);
    EXPECT_EQ(wf.w.lam, gc.witness->lam);
    EXPECT_FALSE(wf.theta);
    EXPECT_TRUE(wf.hc_normalized);
}

TEST(AssociatorArtifact, RoundTripThroughValidation) {
    Fixture fx;
    json aj = associator_to_json("A2", fx.A);
    HbarSeries s = associator_series_from_json(fx.L, aj);
    Associator B = validate_associator(s);
    EXPECT_EQ(B.s, fx.A.s);
    EXPECT_EQ(B.scale, fx.A.scale);
    EXPECT_EQ(B.counital, fx.A.counital);
}

TEST(JsonFiles, WriteReadAndErrorPaths) {
    Fixture fx;
    std::string path = tmp_path("reltwist_io_test.json");
    json j = twist_to_json("A2", fx.lev, fx.A.scale, fx.T);
    write_json_file(path, j);

    json back = read_json_file(path);
    EXPECT_EQ(back.dump(), j.dump());
    std::remove(path.c_str());

    EXPECT_THROW(read_json_file("/nonexistent/dir/file.json"), std::invalid_argument);

    std::string garbled = tmp_path("reltwist_io_garbled.json");
    {
        std::ofstream out(garbled);
        out << "{ not json";
    }
    EXPECT_THROW(read_json_file(garbled), std::invalid_argument);
    std::remove(garbled.c_str());
}

TEST(SubdiagramJson, OneBasedAndValidated) {
    json j = subdiagram_to_json(Subdiagram{{0, 2}});
    EXPECT_EQ(j, json::array({1, 3}));
    Subdiagram d = subdiagram_from_json(j, 3, "test");
    EXPECT_EQ(d.nodes, (std::vector<int>{0, 2}));

    EXPECT_THROW(subdiagram_from_json(json::array({0}), 3, "test"), std::invalid_argument);
    EXPECT_THROW(subdiagram_from_json(json::array({4}), 3, "test"), std::invalid_argument);
    EXPECT_THROW(subdiagram_from_json(json::array({1, 1}), 3, "test"), std::invalid_argument);
}

TEST(Reports, TextAndJsonShapes) {
    Report rep;
    rep.command = "verify";
    rep.config = json{{"type", "A2"}};
    rep.check("alpha", true, "note");
    rep.check("beta", false);
    rep.with_timings = false;

    EXPECT_FALSE(rep.ok());
    std::string text = rep.to_text();
    EXPECT_NE(text.find("[PASS] alpha"), std::string::npos);
    EXPECT_NE(text.find("[FAIL] beta"), std::string::npos);
    EXPECT_EQ(text.find("time:"), std::string::npos);

    json j = rep.to_json();
    EXPECT_EQ(j["command"], "verify");
    EXPECT_EQ(j["ok"], false);
    EXPECT_EQ(j["checks"].size(), 2u);
    EXPECT_FALSE(j.contains("seconds"));

    rep.with_timings = true;
    rep.seconds = 0.25;
    EXPECT_TRUE(rep.to_json().contains("seconds"));
    EXPECT_NE(rep.to_text().find("time:"), std::string::npos);
}

TEST(Reports, OffendingMonomialDiagnosis) {
    Fixture fx;
    // a generator with nonzero central weight for the pair
    TensorElement x(fx.L, 1);
    Mono m;
    m.slots.resize(1);
    m.slots[0].push_back({(uint16_t)fx.L.eidx(2), 1});
    x.add_term(m, 1);
    std::string off = offending_monomial(fx.lev, x);
    EXPECT_FALSE(off.empty());
    EXPECT_NE(off.find("e("), std::string::npos);

    // the order one twist coefficient is central-weight flat
    EXPECT_EQ(offending_monomial(fx.lev, fx.T.s.at(1)), "");
}

TEST(Reports, SolverStatsRows) {
    Fixture fx;
    json rows = stats_to_json(fx.T.stats);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0]["order"], 2);
    EXPECT_GT(rows[0]["residual_terms"].get<int>(), 0);
    EXPECT_GT(rows[0]["candidates"].get<int>(), 0);
    EXPECT_GE(rows[0]["degree_used"].get<int>(), 2);
}
