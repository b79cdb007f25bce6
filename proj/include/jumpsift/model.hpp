#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jumpsift {

/// Raised when an input lies outside the admissible parameter region.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unvalidated CKLS inputs, as read from flags or config files.
struct DiffusionInput {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double sigma = 0.0;
    double gamma = 0.5;
};

struct JumpInput {
    double lambda = 0.0;
    double mu_J = 0.0;
    double sigma_J = 0.0;
};

/// CKLS coefficients of dX = (beta1 - beta2 X) dt + sigma X^gamma dW.
/// Every constructed value satisfies beta1, beta2, sigma > 0 and gamma in [1/2, 1].
class DiffusionParams {
public:
    DiffusionParams(double beta1, double beta2, double sigma, double gamma);
    explicit DiffusionParams(const DiffusionInput& in)
        : DiffusionParams(in.beta1, in.beta2, in.sigma, in.gamma) {}

    double beta1() const { return beta1_; }
    double beta2() const { return beta2_; }
    double sigma() const { return sigma_; }
    double gamma() const { return gamma_; }

    bool is_cir() const { return gamma_ == 0.5; }

    /// Zero is unattainable. For gamma = 1/2 this is 2 beta1 > sigma^2;
    /// for gamma in (1/2, 1] it always holds.
    bool feller_satisfied() const { return feller_; }

private:
    double beta1_;
    double beta2_;
    double sigma_;
    double gamma_;
    bool feller_;
};

/// Compound-Poisson jump component. lambda = 0 is the pure-diffusion model.
class JumpParams {
public:
    JumpParams(double lambda, double mu_J, double sigma_J);
    explicit JumpParams(const JumpInput& in) : JumpParams(in.lambda, in.mu_J, in.sigma_J) {}

    static JumpParams none() { return JumpParams(0.0, 0.0, 0.0); }

    double lambda() const { return lambda_; }
    double mu_J() const { return mu_J_; }
    double sigma_J() const { return sigma_J_; }
    bool has_jumps() const { return lambda_ > 0.0; }

private:
    double lambda_;
    double mu_J_;
    double sigma_J_;
};

/// Exponent of the high-frequency design delta_n = n^(-0.55).
inline constexpr double kDefaultMeshExponent = -0.55;

/// Equidistant observation grid t_i = i * delta_n, i = 0..n.
class SamplingScheme {
public:
    SamplingScheme(std::size_t n, double delta_n, double x0);

    /// Grid with the default mesh delta_n = n^(-0.55).
    static SamplingScheme with_default_mesh(std::size_t n, double x0);

    std::size_t n() const { return n_; }
    double delta_n() const { return delta_n_; }
    double x0() const { return x0_; }
    double horizon() const { return static_cast<double>(n_) * delta_n_; }

private:
    std::size_t n_;
    double delta_n_;
    double x0_;
};

double default_mesh(std::size_t n);

/// Discrete observations X_{t_0}, ..., X_{t_n}. Simulated paths also carry
/// the jump increment of each interval (t_{i-1}, t_i].
struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;
    std::optional<std::vector<double>> true_jump_increments;
    SamplingScheme scheme;

    std::size_t n() const { return scheme.n(); }
    bool has_ground_truth() const { return true_jump_increments.has_value(); }
};

/// Checks the length and positivity invariants of a path; throws DomainError.
void check_path(const SamplePath& path);

/// Drift and diffusion estimate. alpha = 0 denotes the least-squares fit.
struct EstimateTheta {
    double beta1_hat = 0.0;
    double beta2_hat = 0.0;
    double sigma_hat = 0.0;
    double alpha = 0.0;
    bool converged = false;
    double objective_value = 0.0;
    int iterations = 0;
};

/// Validates raw inputs, returning the constructed pair or throwing a
/// DomainError that names the first violated constraint.
std::pair<DiffusionParams, JumpParams> validate_params(const DiffusionInput& p, const JumpInput& j);

/// Gamma(shape, rate) stationary law of the CIR process.
struct CirStationaryLaw {
    double mean;
    double variance;
    double shape;
    double rate;
};

/// Requires gamma = 1/2 and 2 beta1 > sigma^2.
CirStationaryLaw cir_stationary_moments(const DiffusionParams& p);

/// Limiting information matrix of the least-squares drift estimator for CIR.
struct CirSigmaMatrix {
    double a11;
    double a12;
    double a21;
    double a22;
};

/// a11 = beta2 / (beta1 - sigma^2/2), a12 = a21 = -1, a22 = beta1 / beta2.
/// Requires gamma = 1/2 and beta1 > sigma^2 / 2.
CirSigmaMatrix cir_sigma_matrix(const DiffusionParams& p);

}  // namespace jumpsift
