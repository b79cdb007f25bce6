#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "jumpsift/model.hpp"
#include "jumpsift/path_sim.hpp"
#include "jumpsift/rng.hpp"

using namespace jumpsift;

namespace {

SimConfig design_config(std::size_t n, double lambda, std::uint64_t seed) {
    return {DiffusionParams(1.0, 0.8, 0.3, 0.7), JumpParams(lambda, 3.0, 0.1), SamplingScheme::with_default_mesh(n, 1.25),
            seed};
}

}  // namespace

TEST(Simulate, DeterministicFixedPoint) {
    const SimConfig cfg{DiffusionParams(1.0, 0.8, 1e-12, 0.7), JumpParams::none(),
                        SamplingScheme(1000, 0.01, 1.25), 3};
    const SamplePath path = simulate(cfg);
    ASSERT_EQ(path.values.size(), 1001u);
    for (double v : path.values) EXPECT_NEAR(v, 1.25, 1e-6);
}

TEST(Simulate, NoJumpSourceMeansZeroIncrements) {
    const SamplePath path = simulate(design_config(2000, 0.0, 5));
    ASSERT_TRUE(path.has_ground_truth());
    for (double j : *path.true_jump_increments) EXPECT_EQ(j, 0.0);
    EXPECT_TRUE(jump_index_set(path).empty());
}

TEST(Simulate, LengthsAndGrid) {
    const SamplePath path = simulate(design_config(500, 5.0, 1));
    EXPECT_EQ(path.values.size(), 501u);
    EXPECT_EQ(path.times.size(), 501u);
    EXPECT_EQ(path.true_jump_increments->size(), 500u);
    EXPECT_EQ(path.values[0], 1.25);
    EXPECT_EQ(path.times[0], 0.0);
    EXPECT_DOUBLE_EQ(path.times[500], 500.0 * path.scheme.delta_n());
    EXPECT_NO_THROW(check_path(path));
}

TEST(Simulate, BitReproducible) {
    const SamplePath a = simulate(design_config(1000, 5.0, 77));
    const SamplePath b = simulate(design_config(1000, 5.0, 77));
    const SamplePath c = simulate(design_config(1000, 5.0, 78));
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(*a.true_jump_increments, *b.true_jump_increments);
    EXPECT_NE(a.values, c.values);
}

TEST(Simulate, PositivityUnderHarshCir) {
    // Feller condition violated: the scheme keeps every value positive.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SimConfig cfg{DiffusionParams(0.01, 2.0, 1.0, 0.5), JumpParams(2.0, -1.0, 0.5),
                            SamplingScheme(2000, 0.01, 0.05), seed};
        const SamplePath path = simulate(cfg);
        for (double v : path.values) ASSERT_GT(v, 0.0);
    }
}

TEST(Simulate, JumpMassMatchesPoissonMean) {
    // Sum over seeds of all jump increments, divided by mu_J, estimates the
    // total number of jumps lambda * n * delta_n per path.
    const std::size_t n = 1000;
    const int seeds = 500;
    const double lambda = 5.0, mu = 3.0, sj = 0.1;
    double mass = 0.0;
    double nonzero = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const SamplePath path = simulate(design_config(n, lambda, derive_stream_seed(100, {std::uint64_t(s)})));
        for (double j : *path.true_jump_increments) {
            mass += j;
            nonzero += j != 0.0 ? 1.0 : 0.0;
        }
    }
    const double dt = default_mesh(n);
    const double expected_jumps = lambda * static_cast<double>(n) * dt;  // 111.9 per path
    EXPECT_NEAR(expected_jumps, 111.936, 1e-3);
    const double sd_mass = std::sqrt(seeds * expected_jumps * (mu * mu + sj * sj));
    EXPECT_NEAR(mass, mu * seeds * expected_jumps, 3.0 * sd_mass);

    // Intervals holding at least one jump: n (1 - exp(-lambda dt)).
    const double p = 1.0 - std::exp(-lambda * dt);
    const double expected_nonzero = seeds * static_cast<double>(n) * p;
    EXPECT_NEAR(nonzero, expected_nonzero, 3.0 * std::sqrt(expected_nonzero * (1.0 - p)));
}

TEST(Simulate, CirEndpointMatchesStationaryLaw) {
    const DiffusionParams p(1.0, 0.8, 0.3, 0.5);
    const auto law = cir_stationary_moments(p);
    const int reps = 200;
    std::vector<double> ends;
    for (int r = 0; r < reps; ++r) {
        const SamplePath path =
            simulate({p, JumpParams::none(), SamplingScheme(2000, 0.01, 1.25), derive_stream_seed(31, {std::uint64_t(r)})});
        ends.push_back(path.values.back());
    }
    double m = 0.0;
    for (double x : ends) m += x;
    m /= reps;
    double v = 0.0, m4 = 0.0;
    for (double x : ends) {
        v += (x - m) * (x - m);
        m4 += std::pow(x - m, 4);
    }
    v /= (reps - 1);
    m4 /= reps;
    const double se_mean = std::sqrt(v / reps);
    const double se_var = std::sqrt((m4 - v * v) / reps);
    EXPECT_NEAR(m, law.mean, 3.0 * se_mean);
    EXPECT_NEAR(v, law.variance, 3.0 * se_var);
}

TEST(Simulate, StandardizedIncrementsHaveUnitScale) {
    const std::size_t n = 5000;
    const SamplePath path = simulate(design_config(n, 0.0, 2024));
    const double dt = path.scheme.delta_n();
    std::vector<double> u(n);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = path.values[i];
        u[i] = (path.values[i + 1] - x) / (0.3 * std::pow(x, 0.7) * std::sqrt(dt));
        m += u[i];
    }
    m /= n;
    double v = 0.0;
    for (double x : u) v += (x - m) * (x - m);
    const double sd = std::sqrt(v / (n - 1));
    EXPECT_GE(sd, 0.95);
    EXPECT_LE(sd, 1.05);
}

TEST(JumpIndexSet, OneBasedNonzeroPositions) {
    SamplePath path{{0, 1, 2, 3, 4}, {1, 1, 4.1, 4.1, 7.0}, std::vector<double>{0.0, 3.1, 0.0, 2.9},
                    SamplingScheme(4, 1.0, 1.0)};
    EXPECT_EQ(jump_index_set(path), (std::vector<std::size_t>{2, 4}));
    path.true_jump_increments = std::vector<double>(4, 0.0);
    EXPECT_TRUE(jump_index_set(path).empty());
    path.true_jump_increments.reset();
    EXPECT_THROW(jump_index_set(path), DomainError);
}

TEST(JumpIndexSet, CountsNonzeroEntriesExactly) {
    const SamplePath path = simulate(design_config(1000, 5.0, 9));
    std::size_t nonzero = 0;
    for (double j : *path.true_jump_increments) nonzero += j != 0.0;
    EXPECT_EQ(jump_index_set(path).size(), nonzero);
    EXPECT_GT(nonzero, 50u);
}
