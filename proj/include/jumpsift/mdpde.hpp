#pragma once

#include <array>
#include <vector>

#include "jumpsift/model.hpp"
#include "jumpsift/regress.hpp"

namespace jumpsift {

/// Point (beta1, beta2, sigma) at which the objective is evaluated.
struct ParamPoint {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double sigma = 1.0;

    static ParamPoint from(const EstimateTheta& t) { return {t.beta1_hat, t.beta2_hat, t.sigma_hat}; }
};

struct MdpdeConfig {
    double alpha = 0.0;
    EstimateTheta init;
    int max_iters = 2000;
    double tol = 1e-10;
};

/// Closed form of the integral of f^(1+alpha) for a N(mu, sigma^2) density:
/// (2 pi sigma^2)^(-alpha/2) (1 + alpha)^(-1/2).
double gaussian_power_integral(double sigma, double alpha);

/// Per-observation term of the density power divergence objective,
///   int f^(1+a) - (1 + 1/a) f^a(r) + 1/a,
/// for a residual r under N(0, sigma^2). alpha = 0 gives the limit -log f(r).
double dpd_bracket(double residual, double sigma, double alpha);

/// Sum of dpd_bracket over the design's residuals y - beta1 z1 - beta2 z2.
/// Throws DomainError if sigma <= 0 or alpha < 0.
double mdpde_objective(const ParamPoint& theta, const RegressionDesign& d, double alpha);

/// Analytic gradient of mdpde_objective with respect to (beta1, beta2, sigma).
std::array<double, 3> mdpde_gradient(const ParamPoint& theta, const RegressionDesign& d, double alpha);

/// Gaussian negative log-likelihood sum_t -log f_theta(y_t | X_t).
double gaussian_nll(const ParamPoint& theta, const RegressionDesign& d);

/// Minimizes the objective by simplex search over (beta1, beta2, log sigma),
/// started at cfg.init, followed by a Newton polish on the analytic gradient.
/// alpha = 0 returns ols_estimate(d) unchanged.
EstimateTheta mdpde_estimate(const RegressionDesign& d, const MdpdeConfig& cfg);

/// Convenience: OLS start followed by mdpde_estimate at the given alpha.
EstimateTheta fit(const RegressionDesign& d, double alpha);

struct InfluenceProfile {
    std::vector<double> residuals;      // standardized
    std::vector<double> contributions;  // dpd_bracket per observation
    std::vector<double> likelihoods;    // standard normal density at residual
};

InfluenceProfile influence_profile(const EstimateTheta& theta, const RegressionDesign& d, double alpha);

}  // namespace jumpsift
