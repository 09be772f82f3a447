#include <cmath>
#include <numbers>

#include "ncsym/symmap.hpp"
#include "test_support.hpp"

using namespace ncsym;
using ncsym::testing::case_seed;
using ncsym::testing::diff_norm;

namespace {

// Taylor coefficients of the generating function by a discrete Cauchy integral over M roots of unity.
std::vector<CMatrix> cauchy_coefficients(const GradedPoint& x, int count, int m = 512) {
    std::vector<CMatrix> out(static_cast<std::size_t>(count), CMatrix::Zero(x.level(), x.level()));
    for (int k = 0; k < m; ++k) {
        const Scalar z = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
        const CMatrix g = s_gen(x, z);
        for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] += g * std::pow(z, -j) / double(m);
    }
    return out;
}

}  // namespace

TEST(SMap, ScalarCoefficients) {
    // x = (0.5, 0.1): u = 0.3, v = 0.2, coefficients u, v^2, v u v, v u^2 v, ...
    const GradedPoint x(CMatrix::Constant(1, 1, 0.5), CMatrix::Constant(1, 1, 0.1));
    const SPoint sp = s_map(x, 5);
    ASSERT_EQ(sp.series.coeffs.size(), 5u);
    EXPECT_NEAR(sp.series.coeffs[0](0, 0).real(), 0.3, 1e-15);
    EXPECT_NEAR(sp.series.coeffs[1](0, 0).real(), 0.04, 1e-15);
    EXPECT_NEAR(sp.series.coeffs[2](0, 0).real(), 0.012, 1e-15);
    EXPECT_NEAR(sp.series.coeffs[3](0, 0).real(), 0.0036, 1e-15);
    EXPECT_NEAR(sp.series.coeffs[4](0, 0).real(), 0.00108, 1e-15);
    EXPECT_NEAR(sp.series.tail_bound, 0.04 * std::pow(0.3, 4) / 0.7, 1e-17);
}

TEST(SMap, CoefficientsMatchCauchyIntegral) {
    for (int i = 0; i < 10; ++i) {
        const GradedPoint x = random_biball_point(case_seed("cauchy", i), 1 + i % 3, 0.8);
        const SPoint sp = s_map(x, 12);
        const auto ref = cauchy_coefficients(x, 12);
        for (int j = 0; j < 12; ++j) EXPECT_LE(diff_norm(sp.series.coeffs[j], ref[j]), 1e-12) << "coefficient " << j;
    }
}

TEST(SMap, SeriesSumsToGeneratingFunction) {
    for (int i = 0; i < 10; ++i) {
        const GradedPoint x = random_biball_point(case_seed("gen", i), 1 + i % 3, 0.9);
        const SPoint sp = s_map(x);
        for (double t : {0.0, 1.0, 2.5}) {
            const Scalar z = std::polar(1.0, t);
            EXPECT_LE(diff_norm(sp.series.value_at(z), s_gen(x, z)), sp.series.tail_bound + 1e-13);
        }
    }
}

TEST(SMap, DefaultTruncationMeetsTailTarget) {
    for (int i = 0; i < 10; ++i) {
        const GradedPoint x = random_biball_point(case_seed("trunc", i), 2, 0.95);
        const int n = default_truncation(x);
        EXPECT_GE(n, 2);
        EXPECT_LE(n, 512);
        if (n < 512) {
            EXPECT_LE(s_map(x, n).series.tail_bound, 1e-12);
            if (n > 2) {
                EXPECT_GT(s_map(x, n - 1).series.tail_bound, 1e-12);
            }
        }
    }
    EXPECT_EQ(default_truncation(GradedPoint(CMatrix::Zero(1, 1), CMatrix::Zero(1, 1))), 2);
}

TEST(SMap, RejectsPointsOutsideTheBiball) {
    const GradedPoint x(CMatrix::Constant(1, 1, 1.0), CMatrix::Zero(1, 1));
    EXPECT_THROW(s_map(x), DomainError);
    EXPECT_THROW(s_map(random_biball_point(1, 1, 0.5), 1), InvalidInput);
}

TEST(SMap, IsSymmetric) {
    for (int i = 0; i < 10; ++i) {
        const GradedPoint x = random_biball_point(case_seed("swap", i), 1 + i % 3, 0.9);
        const SPoint a = s_map(x, 10);
        const SPoint b = s_map(x.swapped(), 10);
        for (int j = 0; j < 10; ++j) EXPECT_LE(diff_norm(a.series.coeffs[j], b.series.coeffs[j]), 1e-15);
    }
}

TEST(SMap, RespectsDirectSumsAndSimilarity) {
    for (int i = 0; i < 10; ++i) {
        const GradedPoint x = random_biball_point(case_seed("ds_x", i), 1 + i % 2, 0.7);
        const GradedPoint y = random_biball_point(case_seed("ds_y", i), 2, 0.7);
        const SPoint sum = s_map(direct_sum(x, y), 8);
        const DiscAlgElem expected = direct_sum(s_map(x, 8).series, s_map(y, 8).series);
        for (int j = 0; j < 8; ++j) EXPECT_LE(diff_norm(sum.series.coeffs[j], expected.coeffs[j]), 1e-15);

        const CMatrix s = identity(2) + 0.2 * random_gaussian(case_seed("ds_s", i), 2, 2);
        const GradedPoint yc = y.conjugated(s);
        if (!in_biball(yc)) continue;
        const DiscAlgElem lhs = s_map(yc, 8).series;
        const DiscAlgElem rhs = s_map(y, 8).series.conjugated(s);
        for (int j = 0; j < 8; ++j) EXPECT_LE(diff_norm(lhs.coeffs[j], rhs.coeffs[j]), 1e-13);
    }
}

TEST(QMat, NormEqualsMaxNorm) {
    for (int i = 0; i < 40; ++i) {
        const GradedPoint x = random_biball_point(case_seed("qnorm", i), 1 + i % 8, 0.99);
        EXPECT_NEAR(op_norm(q_mat(x)), x.norm(), 1e-12);
    }
}

TEST(QMat, FactorsThroughConjugator) {
    const GradedPoint x = random_biball_point(4, 3, 0.9);
    const CMatrix w = q_conjugator(3);
    EXPECT_LE(unitarity_defect(w), 1e-15);
    EXPECT_LE(diff_norm(w * direct_sum(x[0], x[1]) * w, q_mat(x)), 1e-15);
}

TEST(SupNorm, BoundedByMaxNorm) {
    for (int i = 0; i < 20; ++i) {
        const GradedPoint x = random_biball_point(case_seed("sup", i), 1 + i % 3, 0.95);
        const double s = sup_norm(s_map(x).series);
        EXPECT_LE(s, x.norm() + 1e-8);
        EXPECT_LT(s, 1.0);
    }
}

TEST(SupNorm, ScalarPolynomial) {
    // 0.5 + 0.25 z attains 0.75 at z = 1, which lies on every grid
    EXPECT_NEAR(sup_norm(scalar_series({0.5, 0.25})), 0.75, 1e-15);
    EXPECT_THROW(sup_norm(scalar_series({0.5}), 32), InvalidInput);
}

TEST(OmegaMembership, ClassifiesClearCases) {
    EXPECT_EQ(omega_membership(scalar_series({0.5, 0.25})).status, Membership::inside);
    EXPECT_EQ(omega_membership(scalar_series({1.0, 0.5})).status, Membership::outside);
    const OmegaMembership edge = omega_membership(DiscAlgElem({CMatrix::Constant(1, 1, 0.999)}, 0.01));
    EXPECT_EQ(edge.status, Membership::undecided);
    EXPECT_NEAR(edge.gap, 0.01, 1e-15);
}

TEST(DiscAlgElem, ValidatesAndOperates) {
    EXPECT_THROW(DiscAlgElem(std::vector<CMatrix>{}), InvalidInput);
    EXPECT_THROW(DiscAlgElem({CMatrix::Zero(1, 1), CMatrix::Zero(2, 2)}), InvalidInput);
    EXPECT_THROW(DiscAlgElem({CMatrix::Zero(1, 1)}, -1.0), InvalidInput);
    const DiscAlgElem g = scalar_series({1.0, 0.0, 2.0, 0.0});
    EXPECT_EQ(g.degree(), 2);
    EXPECT_EQ(scalar_series({0.0, 0.0}).degree(), -1);
    EXPECT_NEAR(std::abs(g.value_at(0.5)(0, 0) - 1.5), 0.0, 1e-15);
    const DiscAlgElem h = direct_sum(g, scalar_series({3.0}));
    EXPECT_EQ(h.level, 2);
    EXPECT_EQ(h.coeffs.size(), 4u);
    EXPECT_EQ(h.coeffs[2](1, 1), Scalar(0.0));
    EXPECT_EQ(g.scaled(2.0).coeffs[2](0, 0), Scalar(4.0));
}
