#include "jumpsift/model.hpp"

#include <cmath>

namespace jumpsift {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw DomainError(message);
}

}  // namespace

DiffusionParams::DiffusionParams(double beta1, double beta2, double sigma, double gamma)
    : beta1_(beta1), beta2_(beta2), sigma_(sigma), gamma_(gamma) {
    require(std::isfinite(beta1) && beta1 > 0.0, "beta1 must be positive");
    require(std::isfinite(beta2) && beta2 > 0.0, "beta2 must be positive");
    require(std::isfinite(sigma) && sigma > 0.0, "sigma must be positive");
    require(gamma >= 0.5 && gamma <= 1.0, "gamma must lie in [0.5, 1]");
    feller_ = gamma_ > 0.5 || 2.0 * beta1_ > sigma_ * sigma_;
}

JumpParams::JumpParams(double lambda, double mu_J, double sigma_J)
    : lambda_(lambda), mu_J_(mu_J), sigma_J_(sigma_J) {
    require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be nonnegative");
    require(std::isfinite(mu_J), "mu_J must be finite");
    require(std::isfinite(sigma_J) && sigma_J >= 0.0, "sigma_J must be nonnegative");
}

SamplingScheme::SamplingScheme(std::size_t n, double delta_n, double x0)
    : n_(n), delta_n_(delta_n), x0_(x0) {
    require(n >= 2, "n must be at least 2");
    require(std::isfinite(delta_n) && delta_n > 0.0, "delta_n must be positive");
    require(std::isfinite(x0) && x0 > 0.0, "x0 must be positive");
}

double default_mesh(std::size_t n) {
    return std::pow(static_cast<double>(n), kDefaultMeshExponent);
}

SamplingScheme SamplingScheme::with_default_mesh(std::size_t n, double x0) {
    return SamplingScheme(n, default_mesh(n), x0);
}

void check_path(const SamplePath& path) {
    const std::size_t n = path.n();
    require(path.values.size() == n + 1, "path must hold n+1 values");
    require(path.times.size() == n + 1, "path must hold n+1 times");
    if (path.true_jump_increments) {
        require(path.true_jump_increments->size() == n, "path must hold n jump increments");
    }
    for (double v : path.values) {
        require(std::isfinite(v) && v > 0.0, "path values must be positive");
    }
}

std::pair<DiffusionParams, JumpParams> validate_params(const DiffusionInput& p, const JumpInput& j) {
    return {DiffusionParams(p), JumpParams(j)};
}

CirStationaryLaw cir_stationary_moments(const DiffusionParams& p) {
    require(p.is_cir(), "stationary law is only available for gamma = 0.5");
    require(p.feller_satisfied(), "Feller condition 2*beta1 > sigma^2 fails");
    const double s2 = p.sigma() * p.sigma();
    CirStationaryLaw law{};
    law.shape = 2.0 * p.beta1() / s2;
    law.rate = 2.0 * p.beta2() / s2;
    law.mean = p.beta1() / p.beta2();
    law.variance = p.beta1() * s2 / (2.0 * p.beta2() * p.beta2());
    return law;
}

CirSigmaMatrix cir_sigma_matrix(const DiffusionParams& p) {
    require(p.is_cir(), "CIR sigma matrix requires gamma = 0.5");
    const double gap = p.beta1() - 0.5 * p.sigma() * p.sigma();
    require(gap > 0.0, "CIR sigma matrix requires beta1 > sigma^2/2");
    return CirSigmaMatrix{p.beta2() / gap, -1.0, -1.0, p.beta1() / p.beta2()};
}

}  // namespace jumpsift
