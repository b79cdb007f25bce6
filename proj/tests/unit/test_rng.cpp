#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "jumpsift/rng.hpp"

using namespace jumpsift;

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs |= x != c.next_u64();
    }
    EXPECT_TRUE(differs);
}

TEST(Rng, UniformIsOpenInterval) {
    Rng r(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Rng, NormalMoments) {
    Rng r(5);
    const int m = 200000;
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < m; ++i) {
        const double x = r.normal();
        s += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    EXPECT_NEAR(s / m, 0.0, 0.01);
    EXPECT_NEAR(s2 / m, 1.0, 0.01);
    EXPECT_NEAR(s4 / m, 3.0, 0.06);
}

TEST(Rng, PoissonMeanAndVariance) {
    for (double mean : {0.02, 0.5, 4.0, 75.0}) {
        Rng r(9);
        const int m = 100000;
        double s = 0.0, s2 = 0.0;
        for (int i = 0; i < m; ++i) {
            const double k = static_cast<double>(r.poisson(mean));
            s += k;
            s2 += k * k;
        }
        const double mu = s / m;
        const double var = s2 / m - mu * mu;
        EXPECT_NEAR(mu, mean, 4.0 * std::sqrt(mean / m)) << mean;
        EXPECT_NEAR(var / mean, 1.0, 0.05) << mean;
    }
    Rng r(1);
    EXPECT_EQ(r.poisson(0.0), 0u);
}

TEST(StreamSeeds, DistinctKeysDistinctSeeds) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 50; ++a)
        for (std::uint64_t b = 0; b < 50; ++b) seen.insert(derive_stream_seed(7, {a, b}));
    EXPECT_EQ(seen.size(), 2500u);
    EXPECT_NE(derive_stream_seed(7, {1, 2}), derive_stream_seed(7, {2, 1}));
    EXPECT_NE(derive_stream_seed(7, {1}), derive_stream_seed(8, {1}));
    EXPECT_EQ(double_key(0.0), double_key(-0.0));
}
