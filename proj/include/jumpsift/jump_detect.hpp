#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jumpsift/model.hpp"

namespace jumpsift {

/// Drift-corrected increments scaled by sigma_hat X_{t_{i-1}}^gamma sqrt(dt).
struct ZStatistics {
    std::vector<double> z;
    EstimateTheta theta_used;
    SamplingScheme scheme;
    double gamma = 0.5;
};

ZStatistics compute_z_stats(const SamplePath& path, const EstimateTheta& theta, double gamma);

struct GumbelConstants {
    double a_n;
    double b_n;
};

/// Norming constants of the maximum of n absolute standard normals:
///   a_n = sqrt(2 log n) - (log log n + log pi) / (2 sqrt(2 log n)),
///   b_n = 1 / sqrt(2 log n).
/// Requires n >= 3.
GumbelConstants gumbel_constants(std::size_t n);

/// Standard Gumbel CDF exp(-exp(-x)) and its quantile function.
double gumbel_cdf(double x);
double gumbel_quantile(double p);

enum class ThresholdKind { GumbelQuantile, Additive, Fixed };

struct ThresholdMode {
    ThresholdKind kind = ThresholdKind::GumbelQuantile;
    /// q for GumbelQuantile, c for Additive, xi for Fixed.
    double value = 0.05;

    static ThresholdMode quantile(double q) { return {ThresholdKind::GumbelQuantile, q}; }
    static ThresholdMode additive(double c) { return {ThresholdKind::Additive, c}; }
    static ThresholdMode fixed(double xi) { return {ThresholdKind::Fixed, xi}; }

    /// Parses "quantile:0.05", "additive:0.5" or "fixed:3.512".
    static ThresholdMode parse(const std::string& text);
    std::string to_string() const;
    const char* kind_name() const;
};

struct ThresholdSpec {
    ThresholdMode mode;
    std::size_t n = 0;
    double resolved_xi = 0.0;
    double a_n = 0.0;
    double b_n = 0.0;
};

/// quantile(q): xi = a_n + b_n G^{-1}(1 - q); additive(c): xi = sqrt(2 log n) + c;
/// fixed(v): xi = v. Throws DomainError unless the resolved xi is positive.
ThresholdSpec detection_threshold(std::size_t n, const ThresholdMode& mode);

struct DetectionReport {
    std::vector<std::size_t> detected_set;  // 1-based, ascending
    ZStatistics z_stats;
    ThresholdSpec threshold;
    std::map<std::size_t, double> jump_size_estimates;
};

/// Strict-threshold classification |z_i| > xi. Sizes are left empty.
DetectionReport detect_jumps(const ZStatistics& z, const ThresholdSpec& t);

/// Drift-corrected increment at each detected (1-based) index.
std::map<std::size_t, double> estimate_jump_sizes(const SamplePath& path, const EstimateTheta& theta,
                                                  const std::vector<std::size_t>& detected);

/// compute_z_stats, detection_threshold, detect_jumps and estimate_jump_sizes in sequence.
DetectionReport run_detection(const SamplePath& path, const EstimateTheta& theta, double gamma,
                              const ThresholdMode& mode);

struct GumbelCheckSummary {
    std::size_t n = 0;
    std::size_t replications = 0;
    double a_n = 0.0;
    double b_n = 0.0;
    std::vector<double> normalized_maxima;  // sorted ascending
    double ks_distance = 0.0;
    double median = 0.0;
    double ecdf_at_zero = 0.0;
};

/// Simulates max_i |xi_i| over n i.i.d. standard normals per replication and
/// compares (M_n - a_n) / b_n with the standard Gumbel law.
/// Requires n >= 100 and replications >= 500. Deterministic for any thread count.
GumbelCheckSummary gumbel_max_check(std::size_t n, std::size_t replications, std::uint64_t seed,
                                    unsigned threads = 1);

/// Kolmogorov-Smirnov distance of sorted samples to the standard Gumbel CDF.
double ks_distance_to_gumbel(const std::vector<double>& sorted);

}  // namespace jumpsift
