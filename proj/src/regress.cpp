#include "jumpsift/regress.hpp"

#include <cmath>

namespace jumpsift {

RegressionDesign build_design(const SamplePath& path, double gamma) {
    if (!(gamma >= 0.5 && gamma <= 1.0)) throw DomainError("gamma must lie in [0.5, 1]");
    const std::size_t n = path.n();
    if (path.values.size() != n + 1) throw DomainError("path must hold n+1 values");

    const double dt = path.scheme.delta_n();
    const double sqrt_dt = std::sqrt(dt);
    RegressionDesign d;
    d.delta_n = dt;
    d.gamma = gamma;
    d.y.resize(n);
    d.z1.resize(n);
    d.z2.resize(n);
    d.x_prev.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = path.values[i];
        if (!(x > 0.0)) throw DomainError("conditioning state must be positive");
        const double xg = std::pow(x, gamma);
        d.x_prev[i] = x;
        d.y[i] = (path.values[i + 1] - x) / (xg * sqrt_dt);
        d.z1[i] = sqrt_dt / xg;
        d.z2[i] = -(x / xg) * sqrt_dt;
    }
    return d;
}

double residual_sum_of_squares(const RegressionDesign& d, double beta1, double beta2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double r = d.y[i] - beta1 * d.z1[i] - beta2 * d.z2[i];
        rss += r * r;
    }
    return rss;
}

EstimateTheta ols_estimate(const RegressionDesign& d) {
    const std::size_t n = d.size();
    if (n < 2 || d.z1.size() != n || d.z2.size() != n) {
        throw DomainError("design needs at least two aligned observations");
    }
    double g11 = 0.0, g12 = 0.0, g22 = 0.0, c1 = 0.0, c2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g11 += d.z1[i] * d.z1[i];
        g12 += d.z1[i] * d.z2[i];
        g22 += d.z2[i] * d.z2[i];
        c1 += d.z1[i] * d.y[i];
        c2 += d.z2[i] * d.y[i];
    }
    const double det = g11 * g22 - g12 * g12;
    if (!(det > 1e-12 * g11 * g22)) throw DomainError("regression Gram matrix is singular");

    EstimateTheta est;
    est.beta1_hat = (g22 * c1 - g12 * c2) / det;
    est.beta2_hat = (g11 * c2 - g12 * c1) / det;
    const double rss = residual_sum_of_squares(d, est.beta1_hat, est.beta2_hat);
    est.sigma_hat = std::sqrt(rss / static_cast<double>(n));
    est.alpha = 0.0;
    est.converged = est.sigma_hat > 0.0;
    est.objective_value = rss;
    est.iterations = 0;
    return est;
}

}  // namespace jumpsift
