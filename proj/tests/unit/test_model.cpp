#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "jumpsift/model.hpp"
#include "jumpsift/path_sim.hpp"
#include "jumpsift/rng.hpp"

using namespace jumpsift;

TEST(ValidateParams, AcceptsSimulationDesign) {
    const auto [p, j] = validate_params({1.0, 0.8, 0.3, 0.7}, {5.0, 3.0, 0.1});
    EXPECT_EQ(p.beta1(), 1.0);
    EXPECT_EQ(p.beta2(), 0.8);
    EXPECT_EQ(p.sigma(), 0.3);
    EXPECT_EQ(p.gamma(), 0.7);
    EXPECT_EQ(j.lambda(), 5.0);
    EXPECT_EQ(j.mu_J(), 3.0);
    EXPECT_EQ(j.sigma_J(), 0.1);
}

TEST(ValidateParams, NamesFirstViolation) {
    try {
        validate_params({-1.0, 0.8, 0.3, 0.7}, {5.0, 3.0, 0.1});
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_STREQ(e.what(), "beta1 must be positive");
    }
    EXPECT_THROW(validate_params({1.0, 0.0, 0.3, 0.7}, {}), DomainError);
    EXPECT_THROW(validate_params({1.0, 0.8, 0.0, 0.7}, {}), DomainError);
    EXPECT_THROW(validate_params({1.0, 0.8, 0.3, 0.49}, {}), DomainError);
    EXPECT_THROW(validate_params({1.0, 0.8, 0.3, 1.01}, {}), DomainError);
    EXPECT_THROW(validate_params({1.0, 0.8, 0.3, 0.7}, {-1.0, 0.0, 0.0}), DomainError);
    EXPECT_THROW(validate_params({1.0, 0.8, 0.3, 0.7}, {1.0, 0.0, -0.1}), DomainError);
    EXPECT_THROW(validate_params({NAN, 0.8, 0.3, 0.7}, {}), DomainError);
}

TEST(ValidateParams, FellerFlagAtCir) {
    const DiffusionParams p(1.0, 0.8, 0.3, 0.5);
    EXPECT_TRUE(p.feller_satisfied());  // 2 > 0.09
    EXPECT_FALSE(DiffusionParams(0.01, 0.8, 0.3, 0.5).feller_satisfied());  // 0.02 < 0.09
    EXPECT_TRUE(DiffusionParams(0.01, 0.8, 0.3, 0.7).feller_satisfied());
}

TEST(ValidateParams, ConstructionMatchesRegionOnRandomInputs) {
    Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        const double b1 = 4.0 * rng.uniform() - 1.0;
        const double b2 = 4.0 * rng.uniform() - 1.0;
        const double s = 2.0 * rng.uniform() - 0.5;
        const double g = 0.8 * rng.uniform() + 0.35;
        const bool valid = b1 > 0 && b2 > 0 && s > 0 && g >= 0.5 && g <= 1.0;
        if (valid) {
            EXPECT_NO_THROW(DiffusionParams(b1, b2, s, g));
        } else {
            EXPECT_THROW(DiffusionParams(b1, b2, s, g), DomainError);
        }
    }
}

TEST(SamplingScheme, DefaultMeshAndInvariants) {
    const auto s = SamplingScheme::with_default_mesh(1000, 1.25);
    EXPECT_NEAR(s.delta_n(), 0.022387211385683, 1e-14);
    EXPECT_NEAR(s.horizon(), 22.387211385683, 1e-10);
    EXPECT_THROW(SamplingScheme(1, 0.1, 1.0), DomainError);
    EXPECT_THROW(SamplingScheme(10, 0.0, 1.0), DomainError);
    EXPECT_THROW(SamplingScheme(10, 0.1, 0.0), DomainError);
}

TEST(CirStationary, MomentsAndGammaLaw) {
    const auto law = cir_stationary_moments(DiffusionParams(1.0, 0.8, 0.3, 0.5));
    EXPECT_DOUBLE_EQ(law.mean, 1.25);
    EXPECT_NEAR(law.shape, 200.0 / 9.0, 1e-12);
    EXPECT_NEAR(law.rate, 160.0 / 9.0, 1e-12);
    EXPECT_NEAR(law.variance, 1.0 * 0.09 / (2.0 * 0.64), 1e-15);
    // Gamma(shape, rate) moments agree with the closed forms.
    EXPECT_NEAR(law.shape / law.rate, law.mean, 1e-14);
    EXPECT_NEAR(law.shape / (law.rate * law.rate), law.variance, 1e-15);
}

TEST(CirStationary, DeterministicLimit) {
    const auto law = cir_stationary_moments(DiffusionParams(1.0, 1.0, 1e-9, 0.5));
    EXPECT_DOUBLE_EQ(law.mean, 1.0);
    EXPECT_LT(law.variance, 1e-17);
}

TEST(CirStationary, RejectsNonCirOrFellerFailure) {
    EXPECT_THROW(cir_stationary_moments(DiffusionParams(1.0, 0.8, 0.3, 0.7)), DomainError);
    EXPECT_THROW(cir_stationary_moments(DiffusionParams(0.01, 0.8, 0.3, 0.5)), DomainError);
}

TEST(CirStationary, MatchesLongRunPathAverage) {
    const DiffusionParams p(1.0, 0.8, 0.3, 0.5);
    const std::size_t n = 40000;
    const SamplePath path = simulate({p, JumpParams::none(), SamplingScheme(n, 0.005, 1.25), 11});
    // Batch means give the standard error of the time average.
    const std::size_t batches = 20;
    const std::size_t len = n / batches;
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        for (std::size_t i = 0; i < len; ++i) means[b] += path.values[1 + b * len + i];
        means[b] /= static_cast<double>(len);
    }
    double grand = 0.0;
    for (double m : means) grand += m;
    grand /= batches;
    double ss = 0.0;
    for (double m : means) ss += (m - grand) * (m - grand);
    const double se = std::sqrt(ss / (batches - 1) / batches);
    const auto law = cir_stationary_moments(p);
    EXPECT_LT(std::fabs(grand - law.mean), 3.0 * se) << "mean " << grand << " se " << se;
}

TEST(CirSigmaMatrix, ClosedForm) {
    const auto m = cir_sigma_matrix(DiffusionParams(1.0, 0.8, 0.3, 0.5));
    EXPECT_NEAR(m.a11, 0.8 / 0.955, 1e-15);
    EXPECT_NEAR(m.a11, 0.83769633507853403, 1e-15);
    EXPECT_EQ(m.a12, -1.0);
    EXPECT_EQ(m.a21, -1.0);
    EXPECT_DOUBLE_EQ(m.a22, 1.25);
}

TEST(CirSigmaMatrix, SmallSigmaLimit) {
    const auto m = cir_sigma_matrix(DiffusionParams(1.0, 1.0, 1e-8, 0.5));
    EXPECT_NEAR(m.a11, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(m.a22, 1.0);
}

TEST(CirSigmaMatrix, RejectsBoundary) {
    EXPECT_THROW(cir_sigma_matrix(DiffusionParams(0.04, 0.8, 0.3, 0.5)), DomainError);
    EXPECT_THROW(cir_sigma_matrix(DiffusionParams(1.0, 0.8, 0.3, 0.7)), DomainError);
}

TEST(CirSigmaMatrix, SymmetricWithUnitOffDiagonalsEverywhere) {
    Rng rng(3);
    for (int k = 0; k < 300; ++k) {
        const double s = 0.05 + rng.uniform();
        const double b1 = 0.5 * s * s + 0.01 + 3.0 * rng.uniform();
        const double b2 = 0.05 + 3.0 * rng.uniform();
        const auto m = cir_sigma_matrix(DiffusionParams(b1, b2, s, 0.5));
        EXPECT_EQ(m.a12, m.a21);
        EXPECT_EQ(m.a12, -1.0);
        EXPECT_GT(m.a11, 0.0);
        EXPECT_GT(m.a22, 0.0);
    }
}
