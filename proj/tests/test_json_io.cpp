#include "ncsym/json_io.hpp"
#include "test_support.hpp"

using namespace ncsym;
using ncsym::testing::diff_norm;

TEST(JsonIo, MatrixRoundTrip) {
    const CMatrix m = random_gaussian(1, 3, 2);
    const Json j = matrix_to_json(m);
    EXPECT_EQ(j["rows"], 3);
    EXPECT_EQ(j["cols"], 2);
    EXPECT_EQ(j["data"].size(), 6u);
    EXPECT_LE(diff_norm(matrix_from_json(parse_json_text(dump(j))), m), 0.0);
}

TEST(JsonIo, MatrixAcceptsRealEntries) {
    const CMatrix m = matrix_from_json(parse_json_text(R"({"rows": 1, "cols": 2, "data": [0.5, [1, -2]]})"));
    EXPECT_EQ(m(0, 0), Scalar(0.5, 0.0));
    EXPECT_EQ(m(0, 1), Scalar(1.0, -2.0));
}

TEST(JsonIo, MatrixStructuralErrors) {
    EXPECT_THROW(matrix_from_json(parse_json_text(R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})")), ParseError);
    EXPECT_THROW(matrix_from_json(parse_json_text(R"({"rows": 1, "cols": 1})")), ParseError);
    EXPECT_THROW(matrix_from_json(parse_json_text(R"({"rows": 1, "cols": 1, "data": ["a"]})")), ParseError);
    EXPECT_THROW(matrix_from_json(parse_json_text(R"([1, 2])")), ParseError);
}

TEST(JsonIo, SyntaxErrorsCarryPosition) {
    try {
        parse_json_text("{\n  \"rows\": 1,\n  oops\n}");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_GE(e.column(), 1);
    }
}

TEST(JsonIo, PointRoundTrip) {
    const GradedPoint x = random_biball_point(2, 3, 0.5);
    EXPECT_EQ(point_from_json(parse_json_text(dump(point_to_json(x)))), x);
    EXPECT_THROW(point_from_json(parse_json_text(R"({"components": []})")), InvalidInput);
}

TEST(JsonIo, DiscRoundTrip) {
    const DiscAlgElem g = s_map(random_biball_point(3, 2, 0.5), 6).series;
    const DiscAlgElem h = disc_from_json(parse_json_text(dump(disc_to_json(g))));
    ASSERT_EQ(h.coeffs.size(), g.coeffs.size());
    EXPECT_EQ(h.level, 2);
    EXPECT_EQ(h.tail_bound, g.tail_bound);
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) EXPECT_LE(diff_norm(h.coeffs[j], g.coeffs[j]), 0.0);
}

TEST(JsonIo, ColligationRoundTrip) {
    const Colligation p = Colligation::from_assembled(random_gaussian(4, 3, 4), {1, 2, 2, 2});
    const Colligation q = colligation_from_json(parse_json_text(dump(colligation_to_json(p))));
    EXPECT_EQ(q.dims(), p.dims());
    EXPECT_LE(diff_norm(q.assembled(), p.assembled()), 0.0);
}

TEST(JsonIo, ReportShapes) {
    PropertyReport r;
    r.add({"direct_sum", "0,1", 1e-15, 1e-9, true});
    const Json j = report_to_json(r);
    EXPECT_EQ(j["checks"][0]["name"], "direct_sum");
    EXPECT_EQ(j["max_residual"], 1e-15);

    const std::vector<FreePoly> gens{FreePoly::parse("z + w"), FreePoly::parse("z*w + w*z")};
    const Json e = expressibility_to_json(expressibility(FreePoly::parse("z*w + w*z"), gens, 2), gens);
    EXPECT_EQ(e["expressible"], true);
    EXPECT_EQ(e["generators"].size(), 2u);
    EXPECT_FALSE(e["decomposition"].empty());
}

TEST(JsonIo, PipelineReportFields) {
    const Json j = pipeline_to_json(run_pipeline(PipelineConfig{}));
    EXPECT_EQ(j["stages"].size(), pipeline_stages().size());
    EXPECT_EQ(j["stages"][0]["name"], "model_relation");
    EXPECT_TRUE(j["verify"].contains("fit"));
    EXPECT_TRUE(j["verify"].contains("holdout"));
    EXPECT_EQ(j["pass"], true);
    EXPECT_NO_THROW(colligation_from_json(j["p"]));
    EXPECT_NO_THROW(matrix_from_json(j["U"]));
}

TEST(JsonIo, DumpIsStable) {
    const Json j = matrix_to_json(random_gaussian(5, 2, 2));
    EXPECT_EQ(dump(j), dump(parse_json_text(dump(j))));
    EXPECT_EQ(dump(j).back(), '\n');
}
