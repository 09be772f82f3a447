#include "ncsym/freepoly.hpp"
#include "ncsym/ncfun.hpp"
#include "test_support.hpp"

using namespace ncsym;
using ncsym::testing::case_seed;
using ncsym::testing::diff_norm;

namespace {

std::vector<GradedPoint> sample_points(const char* tag, int count, double r = 0.8) {
    std::vector<GradedPoint> pts;
    for (int i = 0; i < count; ++i) pts.push_back(random_biball_point(case_seed(tag, i), 1 + i % 3, r));
    return pts;
}

GradedFnOracle poly_oracle(const char* text) {
    const FreePoly p = FreePoly::parse(text, 2);
    return biball_oracle([p](const GradedPoint& x) { return p.eval(x); });
}

}  // namespace

TEST(GradedPoint, ValidatesShapes) {
    EXPECT_THROW(GradedPoint(std::vector<CMatrix>{}), InvalidInput);
    EXPECT_THROW(GradedPoint(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), InvalidInput);
    EXPECT_THROW(GradedPoint(CMatrix::Zero(2, 3), CMatrix::Zero(2, 3)), InvalidInput);
    CMatrix bad = CMatrix::Zero(1, 1);
    bad(0, 0) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(GradedPoint(bad, bad), InvalidInput);
    const GradedPoint x(CMatrix::Identity(2, 2), CMatrix::Zero(2, 2));
    EXPECT_EQ(x.level(), 2);
    EXPECT_EQ(x.arity(), 2u);
    EXPECT_DOUBLE_EQ(x.norm(), 1.0);
    EXPECT_FALSE(in_biball(x));
}

TEST(GradedPoint, SwapAndDirectSum) {
    const GradedPoint x = random_biball_point(1, 2, 0.5);
    EXPECT_EQ(x.swapped().swapped(), x);
    EXPECT_EQ(x.swapped()[0], x[1]);
    const GradedPoint y = random_biball_point(2, 1, 0.5);
    const GradedPoint s = direct_sum(x, y);
    EXPECT_EQ(s.level(), 3);
    EXPECT_LE(diff_norm(s[1].topLeftCorner(2, 2), x[1]), 0.0);
    EXPECT_NEAR(s.norm(), std::max(x.norm(), y.norm()), 1e-14);
}

TEST(GradedPoint, RandomBiballPointsRespectRadius) {
    for (int i = 0; i < 20; ++i) {
        const GradedPoint x = random_biball_point(case_seed("radius", i), 1 + i % 4, 0.6);
        EXPECT_LE(x.norm(), 0.6);
        EXPECT_TRUE(in_biball(x));
    }
}

TEST(GradedFnOracle, EnforcesOutputShape) {
    const GradedFnOracle f = biball_oracle([](const GradedPoint& x) { return CMatrix(CMatrix::Zero(x.level() * 2, x.level())); }, 3, 1);
    EXPECT_THROW(f(random_biball_point(1, 2, 0.5)), ContractViolation);
}

TEST(NcChecks, PolynomialsAreNcFunctions) {
    const auto pts = sample_points("poly", 6);
    const GradedFnOracle f = poly_oracle("z*w*z - (0,2)*w + 1");
    EXPECT_TRUE(check_direct_sums(f, pts, 1e-12).all_pass());
    const PropertyReport sim = check_similarity(f, pts, 99, 1e-10);
    EXPECT_TRUE(sim.all_pass()) << sim.max_residual;
    EXPECT_EQ(sim.checks.size(), pts.size());
}

TEST(NcChecks, DirectSumPairsIncludeDiagonal) {
    const auto pts = sample_points("pairs", 4);
    const PropertyReport r = check_direct_sums(poly_oracle("z"), pts);
    EXPECT_EQ(r.checks.size(), 10u);  // i <= j
}

TEST(NcChecks, TransposeFailsSimilarity) {
    const GradedFnOracle f = biball_oracle([](const GradedPoint& x) { return CMatrix(x[0].transpose()); });
    const auto pts = sample_points("transpose", 6);
    std::vector<GradedPoint> level2;
    for (const auto& p : pts)
        if (p.level() >= 2) level2.push_back(p);
    // direct sums still hold, similarity does not
    EXPECT_TRUE(check_direct_sums(f, level2, 1e-12).all_pass());
    EXPECT_FALSE(check_similarity(f, level2, 7, 1e-6).all_pass());
}

TEST(NcChecks, EntrywiseMapFailsDirectSums) {
    // x -> ||x1|| * 1_n is not additive over direct sums
    const GradedFnOracle f = biball_oracle([](const GradedPoint& x) { return CMatrix(op_norm(x[0]) * identity(x.level())); });
    EXPECT_FALSE(check_direct_sums(f, {random_biball_point(1, 1, 0.2), random_biball_point(2, 1, 0.9)}, 1e-6).all_pass());
}

TEST(NcChecks, SymmetryDetectsAsymmetry) {
    const auto pts = sample_points("sym", 5);
    EXPECT_TRUE(check_symmetry(poly_oracle("z*w + w*z"), pts, 1e-12).all_pass());
    EXPECT_FALSE(check_symmetry(poly_oracle("z*w"), pts, 1e-6).all_pass());
}

TEST(NcChecks, OperatorValuedSimilarityUsesTensorOrdering) {
    // f(x) = x1 (x) B is an L(C^n (x) C^2)-valued nc-function
    CMatrix b(2, 2);
    b << 1.0, 2.0, Scalar(0, 1), -1.0;
    const GradedFnOracle f = biball_oracle([b](const GradedPoint& x) { return kron(x[0], b); }, 2, 2);
    const auto pts = sample_points("opvalued", 5);
    EXPECT_TRUE(check_similarity(f, pts, 3, 1e-10).all_pass());
    EXPECT_TRUE(check_direct_sums(f, pts, 1e-12).all_pass());
}

TEST(NcChecks, RandomSimilarityIsWellConditioned) {
    for (int i = 0; i < 20; ++i) {
        const CMatrix s = random_similarity(case_seed("simcond", i), 1 + i % 4, [](const CMatrix&) { return true; });
        const Eigen::VectorXd sv = singular_values(s);
        EXPECT_LE(sv(0) / sv(sv.size() - 1), 4.0);
    }
    EXPECT_THROW(random_similarity(1, 2, [](const CMatrix&) { return false; }), DomainError);
}

TEST(NcChecks, ExplicitSimilaritiesAreUsed) {
    const auto pts = sample_points("explicit", 3);
    std::vector<CMatrix> sims;
    for (const auto& p : pts) sims.push_back(2.0 * identity(p.level()));
    const PropertyReport r = check_similarity(poly_oracle("z*w"), pts, sims, 1e-12);
    EXPECT_TRUE(r.all_pass());
    EXPECT_THROW(check_similarity(poly_oracle("z"), pts, std::vector<CMatrix>{}, 1e-12), InvalidInput);
}

TEST(PropertyReport, TracksMaximum) {
    PropertyReport a;
    a.add({"x", "s", 1e-3, 1e-2, true});
    PropertyReport b;
    b.add({"y", "s", 5e-2, 1e-2, false});
    a.merge(b);
    EXPECT_DOUBLE_EQ(a.max_residual, 5e-2);
    EXPECT_FALSE(a.all_pass());
    EXPECT_EQ(a.checks.size(), 2u);
}
