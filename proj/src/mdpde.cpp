#include "jumpsift/mdpde.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "jumpsift/nelder_mead.hpp"

namespace jumpsift {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

double log_density(double r, double sigma) {
    return -kLogSqrt2Pi - std::log(sigma) - 0.5 * (r / sigma) * (r / sigma);
}

// I(sigma, alpha) - 1, accurate for small alpha.
double power_integral_minus_one(double sigma, double alpha) {
    return std::expm1(-alpha * (kLogSqrt2Pi + std::log(sigma)) - 0.5 * std::log1p(alpha));
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be nonnegative");
}

void check_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
}

using Vec3 = std::array<double, 3>;

// Objective on the unconstrained coordinates (beta1, beta2, log sigma).
struct LogScaleObjective {
    const RegressionDesign& d;
    double alpha;

    double operator()(const Vec3& v) const {
        const double sigma = std::exp(v[2]);
        if (!(sigma > 0.0) || !std::isfinite(sigma)) return std::numeric_limits<double>::infinity();
        const double h = mdpde_objective({v[0], v[1], sigma}, d, alpha);
        return std::isfinite(h) ? h : std::numeric_limits<double>::infinity();
    }

    Vec3 gradient(const Vec3& v) const {
        const double sigma = std::exp(v[2]);
        auto g = mdpde_gradient({v[0], v[1], sigma}, d, alpha);
        g[2] *= sigma;
        return g;
    }
};

bool solve3(std::array<Vec3, 3> a, Vec3 b, Vec3& x) {
    // Cholesky, rejecting matrices that are not positive definite.
    std::array<Vec3, 3> l{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (!(s > 0.0)) return false;
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Vec3 y{};
    for (int i = 0; i < 3; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
        y[i] = s / l[i][i];
    }
    for (int i = 2; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < 3; ++k) s -= l[k][i] * x[k];
        x[i] = s / l[i][i];
    }
    return true;
}

// Newton iterations with a finite-difference Hessian of the analytic gradient.
// Steps are only taken when they lower the objective.
void newton_polish(const LogScaleObjective& obj, Vec3& v, double& fv) {
    for (int iter = 0; iter < 10; ++iter) {
        const Vec3 g = obj.gradient(v);
        std::array<Vec3, 3> hess{};
        for (int k = 0; k < 3; ++k) {
            const double h = 1e-5 * std::max(std::fabs(v[k]), 1.0);
            Vec3 up = v, dn = v;
            up[k] += h;
            dn[k] -= h;
            const Vec3 gu = obj.gradient(up);
            const Vec3 gd = obj.gradient(dn);
            for (int i = 0; i < 3; ++i) hess[i][k] = (gu[i] - gd[i]) / (2.0 * h);
        }
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < i; ++k) {
                const double s = 0.5 * (hess[i][k] + hess[k][i]);
                hess[i][k] = hess[k][i] = s;
            }
        }
        Vec3 step{};
        if (!solve3(hess, g, step)) return;

        bool moved = false;
        double t = 1.0;
        for (int ls = 0; ls < 20; ++ls, t *= 0.5) {
            Vec3 cand{v[0] - t * step[0], v[1] - t * step[1], v[2] - t * step[2]};
            const double fc = obj(cand);
            if (fc < fv) {
                v = cand;
                fv = fc;
                moved = true;
                break;
            }
        }
        if (!moved) return;
        const double size = std::fabs(t * step[0]) + std::fabs(t * step[1]) + std::fabs(t * step[2]);
        if (size < 1e-13 * (std::fabs(v[0]) + std::fabs(v[1]) + std::fabs(v[2]) + 1.0)) return;
    }
}

struct StartResult {
    Vec3 x;
    double f;
    int iterations;
    bool converged;
};

StartResult minimize_from(const LogScaleObjective& obj, const Vec3& start, const MdpdeConfig& cfg) {
    SimplexOptions opt;
    opt.max_iters = cfg.max_iters;
    opt.tol = cfg.tol;

    Vec3 step{0.1 * std::max(std::fabs(start[0]), 1e-2), 0.1 * std::max(std::fabs(start[1]), 1e-2), 0.1};
    auto res = nelder_mead(obj, start, step, opt);
    StartResult out{res.x, res.f, res.iterations, res.converged};
    // Restarts from the incumbent guard against premature simplex collapse.
    for (int restart = 0; restart < 3 && out.converged; ++restart) {
        for (auto& s : step) s *= 0.1;
        auto again = nelder_mead(obj, out.x, step, opt);
        out.iterations += again.iterations;
        const double scale = std::max(std::fabs(out.f), 1.0);
        const bool improved = again.f < out.f - cfg.tol * scale;
        if (again.f < out.f) {
            out.x = again.x;
            out.f = again.f;
        }
        out.converged = again.converged;
        if (!improved) break;
    }
    newton_polish(obj, out.x, out.f);
    return out;
}

}  // namespace

double gaussian_power_integral(double sigma, double alpha) {
    check_sigma(sigma);
    check_alpha(alpha);
    return std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.5 * alpha) / std::sqrt(1.0 + alpha);
}

double dpd_bracket(double residual, double sigma, double alpha) {
    const double ell = log_density(residual, sigma);
    if (alpha == 0.0) return -ell;
    // I - (1 + 1/a) f^a + 1/a  ==  (I - 1) - (1 + a) (f^a - 1) / a
    return power_integral_minus_one(sigma, alpha) - (1.0 + alpha) * std::expm1(alpha * ell) / alpha;
}

double mdpde_objective(const ParamPoint& theta, const RegressionDesign& d, double alpha) {
    check_sigma(theta.sigma);
    check_alpha(alpha);
    const std::size_t n = d.size();
    const double sigma = theta.sigma;
    double total = 0.0;
    if (alpha == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double r = d.y[i] - theta.beta1 * d.z1[i] - theta.beta2 * d.z2[i];
            total -= log_density(r, sigma);
        }
        return total;
    }
    const double i_minus_one = power_integral_minus_one(sigma, alpha);
    const double c = (1.0 + alpha) / alpha;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = d.y[i] - theta.beta1 * d.z1[i] - theta.beta2 * d.z2[i];
        total += i_minus_one - c * std::expm1(alpha * log_density(r, sigma));
    }
    return total;
}

std::array<double, 3> mdpde_gradient(const ParamPoint& theta, const RegressionDesign& d, double alpha) {
    check_sigma(theta.sigma);
    check_alpha(alpha);
    const double sigma = theta.sigma;
    const double s2 = sigma * sigma;
    const double integral = alpha == 0.0 ? 1.0 : gaussian_power_integral(sigma, alpha);
    std::array<double, 3> g{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double r = d.y[i] - theta.beta1 * d.z1[i] - theta.beta2 * d.z2[i];
        // Weight f^a (1 + a); equals 1 for the likelihood.
        const double w = alpha == 0.0 ? 1.0 : (1.0 + alpha) * std::exp(alpha * log_density(r, sigma));
        g[0] -= w * r * d.z1[i] / s2;
        g[1] -= w * r * d.z2[i] / s2;
        g[2] += w * (1.0 / sigma - r * r / (s2 * sigma)) - alpha * integral / sigma;
    }
    return g;
}

double gaussian_nll(const ParamPoint& theta, const RegressionDesign& d) {
    return mdpde_objective(theta, d, 0.0);
}

EstimateTheta mdpde_estimate(const RegressionDesign& d, const MdpdeConfig& cfg) {
    check_alpha(cfg.alpha);
    if (cfg.alpha == 0.0) return ols_estimate(d);
    if (!(cfg.tol > 0.0)) throw DomainError("tol must be positive");
    if (cfg.max_iters < 1) throw DomainError("max_iters must be at least 1");
    const auto& init = cfg.init;
    if (!(init.sigma_hat > 0.0) || !std::isfinite(init.sigma_hat) || !std::isfinite(init.beta1_hat) ||
        !std::isfinite(init.beta2_hat)) {
        throw DomainError("initial estimate must be finite with positive sigma");
    }

    const LogScaleObjective obj{d, cfg.alpha};
    const Vec3 start{init.beta1_hat, init.beta2_hat, std::log(init.sigma_hat)};
    StartResult best = minimize_from(obj, start, cfg);
    int total_iters = best.iterations;

    if (!best.converged) {
        // Multi-start around the initial point, +-50% per coordinate.
        static constexpr std::array<Vec3, 5> kFactors{{
            {1.5, 1.5, 1.5}, {0.5, 0.5, 0.5}, {1.5, 0.5, 1.0}, {0.5, 1.5, 1.0}, {1.0, 1.0, 0.5},
        }};
        for (const auto& fac : kFactors) {
            const Vec3 s{init.beta1_hat * fac[0], init.beta2_hat * fac[1], std::log(init.sigma_hat * fac[2])};
            StartResult cand = minimize_from(obj, s, cfg);
            total_iters += cand.iterations;
            const bool better = (cand.converged && !best.converged) ||
                                (cand.converged == best.converged && cand.f < best.f);
            if (better) best = cand;
        }
    }

    EstimateTheta out;
    out.beta1_hat = best.x[0];
    out.beta2_hat = best.x[1];
    out.sigma_hat = std::exp(best.x[2]);
    out.alpha = cfg.alpha;
    out.converged = best.converged && out.sigma_hat > 0.0;
    out.objective_value = best.f;
    out.iterations = total_iters;
    return out;
}

EstimateTheta fit(const RegressionDesign& d, double alpha) {
    EstimateTheta ols = ols_estimate(d);
    if (alpha == 0.0) return ols;
    MdpdeConfig cfg;
    cfg.alpha = alpha;
    cfg.init = ols;
    return mdpde_estimate(d, cfg);
}

InfluenceProfile influence_profile(const EstimateTheta& theta, const RegressionDesign& d, double alpha) {
    check_sigma(theta.sigma_hat);
    check_alpha(alpha);
    const std::size_t n = d.size();
    InfluenceProfile prof;
    prof.residuals.resize(n);
    prof.contributions.resize(n);
    prof.likelihoods.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = d.y[i] - theta.beta1_hat * d.z1[i] - theta.beta2_hat * d.z2[i];
        const double z = r / theta.sigma_hat;
        prof.residuals[i] = z;
        prof.contributions[i] = dpd_bracket(r, theta.sigma_hat, alpha);
        prof.likelihoods[i] = std::exp(-kLogSqrt2Pi - 0.5 * z * z);
    }
    return prof;
}

}  // namespace jumpsift
