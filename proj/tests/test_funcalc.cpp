#include "ncsym/funcalc.hpp"
#include "test_support.hpp"

using namespace ncsym;
using ncsym::testing::case_seed;
using ncsym::testing::diff_norm;

namespace {

DiscAlgElem random_polynomial(std::uint64_t seed, Eigen::Index n, int degree, double scale) {
    std::vector<CMatrix> c;
    for (int j = 0; j <= degree; ++j) c.push_back(scale * random_contraction(CounterRng(seed).split(j).next_u64(), n, n, 0.9));
    return DiscAlgElem(c);
}

}  // namespace

TEST(Theta, ScalarPolynomialOfScalar) {
    // g(z) = 1 + 2z - z^2 at T = 0.5
    const ThetaResult r = theta(scalar_series({1.0, 2.0, -1.0}), CMatrix::Constant(1, 1, 0.5));
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(std::abs(r.value(0, 0) - 1.75), 0.0, 1e-12);
    ASSERT_TRUE(r.reference.has_value());
    EXPECT_NEAR(std::abs((*r.reference)(0, 0) - 1.75), 0.0, 1e-15);
}

TEST(Theta, ExtrapolationIsExactForPolynomials) {
    for (int i = 0; i < 20; ++i) {
        const DiscAlgElem g = random_polynomial(case_seed("poly", i), 1 + i % 3, 1 + i % 6, 0.3);
        const CMatrix t = random_unitary(case_seed("poly_u", i), 1 + i % 4);
        const ThetaResult r = theta(g, t);
        EXPECT_TRUE(r.converged);
        EXPECT_LE(diff_norm(r.value, *r.reference), 1e-10);
    }
}

TEST(Theta, PlainFejerMeansDecayAtTheKnownRate) {
    // for k >= deg g: h_k - g(T) = -(sum_j j g^j (x) T^j) / (k + 1)
    for (int i = 0; i < 10; ++i) {
        const DiscAlgElem g = random_polynomial(case_seed("plain", i), 2, 4, 0.25);
        const CMatrix t = random_unitary(case_seed("plain_u", i), 3);
        double weight = 0.0;
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) weight += double(j) * op_norm(g.coeffs[j]);
        for (int k : {8, 32, 128}) {
            const ThetaResult r = theta(g, t, FejerPlan{k, 1e-300, FejerMode::plain});
            EXPECT_EQ(r.achieved_k, k);
            EXPECT_LE(op_norm(CMatrix(r.fejer_mean - *r.reference)), weight / (k + 1) + 1e-12);
        }
    }
}

TEST(Theta, MatchesClosedFormAtSPoints) {
    for (int i = 0; i < 20; ++i) {
        const GradedPoint x = random_biball_point(case_seed("closed", i), 1 + i % 3, 0.8);
        const CMatrix u = random_unitary(case_seed("closed_u", i), 1 + i % 5);
        const ThetaResult r = theta(s_map(x).series, u);
        EXPECT_TRUE(r.converged);
        EXPECT_LE(diff_norm(r.value, theta_closed_smap(x, u)), 1e-6);
    }
}

TEST(Theta, RespectsDirectSums) {
    for (int i = 0; i < 10; ++i) {
        const DiscAlgElem g = random_polynomial(case_seed("ds_g", i), 2, 3, 0.3);
        const DiscAlgElem h = random_polynomial(case_seed("ds_h", i), 1, 3, 0.3);
        const CMatrix t = random_unitary(case_seed("ds_t", i), 2);
        const auto perm = tensor_sum_permutation(2, 1, 2);
        const CMatrix lhs = theta(direct_sum(g, h), t).value;
        const CMatrix rhs = perm * direct_sum(theta(g, t).value, theta(h, t).value) * perm.transpose();
        EXPECT_LE(diff_norm(lhs, rhs), 1e-10);
    }
}

TEST(Theta, RespectsSimilarity) {
    for (int i = 0; i < 10; ++i) {
        const DiscAlgElem g = random_polynomial(case_seed("sim_g", i), 3, 4, 0.2);
        const CMatrix s = identity(3) + 0.25 * random_gaussian(case_seed("sim_s", i), 3, 3);
        EXPECT_LE(theta_similarity_check(g, s, random_unitary(case_seed("sim_u", i), 2)), 1e-9);
    }
}

TEST(Theta, RejectsNonContractions) {
    const DiscAlgElem g = scalar_series({0.5, 0.25});
    EXPECT_THROW(theta(g, CMatrix::Constant(1, 1, 1.5)), DomainError);
    EXPECT_THROW(theta(g, CMatrix::Zero(1, 2)), InvalidInput);
    EXPECT_THROW(theta(g, identity(1), FejerPlan{0, 1e-8, FejerMode::plain}), InvalidInput);
}

TEST(Theta, TensorSumPermutationIsIdentity) {
    const auto perm = tensor_sum_permutation(2, 3, 4);
    for (Eigen::Index i = 0; i < perm.indices().size(); ++i) EXPECT_EQ(perm.indices()(i), i);
}

TEST(VonNeumann, NormBoundedBySupNorm) {
    for (int i = 0; i < 20; ++i) {
        const GradedPoint x = random_biball_point(case_seed("vn", i), 1 + i % 3, 0.9);
        const DiscAlgElem g = s_map(x).series;
        const VnNormCheck c = vn_norm_check(g, random_unitary(case_seed("vn_u", i), 1 + i % 4));
        EXPECT_TRUE(c.strict);
        // the default grid can undershoot the true supremum; compare against a fine grid
        EXPECT_LE(c.norm, sup_norm(g, 1 << 14) + c.slack);
    }
    EXPECT_THROW(vn_norm_check(scalar_series({1.0, 0.5}), identity(1)), DomainError);
}
