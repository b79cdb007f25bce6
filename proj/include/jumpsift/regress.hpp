#pragma once

#include <vector>

#include "jumpsift/model.hpp"

namespace jumpsift {

/// Linearized increment regression y = beta1 z1 + beta2 z2 + eps, with
///   y  = (X_{t_i} - X_{t_{i-1}}) / (X_{t_{i-1}}^gamma sqrt(dt))
///   z1 = sqrt(dt) / X_{t_{i-1}}^gamma
///   z2 = -X_{t_{i-1}}^(1-gamma) sqrt(dt)
/// and eps ~ N(0, sigma^2) under the Euler approximation.
struct RegressionDesign {
    std::vector<double> y;
    std::vector<double> z1;
    std::vector<double> z2;
    std::vector<double> x_prev;
    double delta_n = 0.0;
    double gamma = 0.5;

    std::size_t size() const { return y.size(); }
};

RegressionDesign build_design(const SamplePath& path, double gamma);

/// Closed-form least squares on the 2x2 normal equations; sigma_hat^2 uses
/// divisor n. Throws DomainError when the Gram matrix is numerically singular.
/// A degenerate exact fit (sigma_hat = 0) is returned with converged = false.
EstimateTheta ols_estimate(const RegressionDesign& d);

/// Residual sum of squares at (beta1, beta2).
double residual_sum_of_squares(const RegressionDesign& d, double beta1, double beta2);

}  // namespace jumpsift
