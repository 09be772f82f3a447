#include <cmath>
#include <set>

#include "ncsym/rng.hpp"
#include "test_support.hpp"

using namespace ncsym;

TEST(Rng, MixerMatchesReferenceSplitMix64Stream) {
    // outputs 1..3 of the published SplitMix64 generator started from state 0
    const std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
    EXPECT_EQ(splitmix64(gamma), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(splitmix64(2 * gamma), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(splitmix64(3 * gamma), 0x06c45d188009454fULL);
}

TEST(Rng, SameSeedSameStream) {
    CounterRng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DifferentSeedsDiffer) {
    CounterRng a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 100; ++i) equal += a.next_u64() == b.next_u64();
    EXPECT_EQ(equal, 0);
}

TEST(Rng, SplitIsPureAndTagSensitive) {
    const CounterRng root(7);
    CounterRng a = root.split("alpha");
    CounterRng a2 = root.split("alpha");
    CounterRng b = root.split("beta");
    EXPECT_EQ(a.next_u64(), a2.next_u64());
    EXPECT_NE(root.split("alpha").next_u64(), b.next_u64());
    EXPECT_NE(root.split(1).key(), root.split(2).key());
}

TEST(Rng, SplitDoesNotAdvanceParent) {
    CounterRng root(9);
    const std::uint64_t before = root.counter();
    (void)root.split("x");
    EXPECT_EQ(root.counter(), before);
}

TEST(Rng, UniformStaysInOpenInterval) {
    CounterRng r(3);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.01);
    EXPECT_LT(lo, 0.001);
    EXPECT_GT(hi, 0.999);
}

TEST(Rng, NormalMoments) {
    CounterRng r(11);
    const int n = 50000;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        m1 += z;
        m2 += z * z;
    }
    EXPECT_NEAR(m1 / n, 0.0, 0.02);
    EXPECT_NEAR(m2 / n, 1.0, 0.03);
}

TEST(Rng, ComplexNormalHasUnitSecondMoment) {
    CounterRng r(12);
    const int n = 50000;
    std::complex<double> mean = 0.0, pseudo = 0.0;
    double power = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = r.complex_normal();
        mean += z;
        power += std::norm(z);
        pseudo += z * z;
    }
    EXPECT_LT(std::abs(mean / double(n)), 0.02);
    EXPECT_NEAR(power / n, 1.0, 0.03);
    EXPECT_LT(std::abs(pseudo / double(n)), 0.03);
}

TEST(Rng, NoShortCycles) {
    CounterRng r(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) seen.insert(r.next_u64());
    EXPECT_EQ(seen.size(), 10000u);
}
