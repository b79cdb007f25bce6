#include "jumpsift/jump_detect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "jumpsift/parallel.hpp"
#include "jumpsift/rng.hpp"

namespace jumpsift {

ZStatistics compute_z_stats(const SamplePath& path, const EstimateTheta& theta, double gamma) {
    if (!(theta.sigma_hat > 0.0) || !std::isfinite(theta.sigma_hat)) {
        throw DomainError("sigma_hat must be positive");
    }
    if (!(gamma >= 0.5 && gamma <= 1.0)) throw DomainError("gamma must lie in [0.5, 1]");
    check_path(path);
    const std::size_t n = path.n();
    const double dt = path.scheme.delta_n();
    const double sqrt_dt = std::sqrt(dt);

    ZStatistics out{std::vector<double>(n), theta, path.scheme, gamma};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = path.values[i];
        const double drift = (theta.beta1_hat - theta.beta2_hat * x) * dt;
        out.z[i] = (path.values[i + 1] - x - drift) / (theta.sigma_hat * std::pow(x, gamma) * sqrt_dt);
    }
    return out;
}

GumbelConstants gumbel_constants(std::size_t n) {
    if (n < 3) throw DomainError("Gumbel constants require n >= 3");
    const double log_n = std::log(static_cast<double>(n));
    const double root = std::sqrt(2.0 * log_n);
    return {root - (std::log(log_n) + std::log(std::numbers::pi)) / (2.0 * root), 1.0 / root};
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("Gumbel quantile requires p in (0, 1)");
    return -std::log(-std::log(p));
}

ThresholdMode ThresholdMode::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw DomainError("threshold must look like quantile:Q, additive:C or fixed:XI");
    }
    const std::string kind = text.substr(0, colon);
    const std::string number = text.substr(colon + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(number, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != number.size()) throw DomainError("threshold value is not a number: " + number);
    if (kind == "quantile") return quantile(value);
    if (kind == "additive") return additive(value);
    if (kind == "fixed") return fixed(value);
    throw DomainError("unknown threshold mode: " + kind);
}

const char* ThresholdMode::kind_name() const {
    switch (kind) {
        case ThresholdKind::GumbelQuantile: return "quantile";
        case ThresholdKind::Additive: return "additive";
        case ThresholdKind::Fixed: return "fixed";
    }
    return "unknown";
}

std::string ThresholdMode::to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s:%.17g", kind_name(), value);
    return buf;
}

ThresholdSpec detection_threshold(std::size_t n, const ThresholdMode& mode) {
    const GumbelConstants c = gumbel_constants(n);
    ThresholdSpec spec{mode, n, 0.0, c.a_n, c.b_n};
    switch (mode.kind) {
        case ThresholdKind::GumbelQuantile:
            if (!(mode.value > 0.0 && mode.value < 1.0)) throw DomainError("quantile level q must lie in (0, 1)");
            spec.resolved_xi = c.a_n + c.b_n * gumbel_quantile(1.0 - mode.value);
            break;
        case ThresholdKind::Additive:
            if (!(mode.value > 0.0) || !std::isfinite(mode.value)) throw DomainError("additive c must be positive");
            spec.resolved_xi = std::sqrt(2.0 * std::log(static_cast<double>(n))) + mode.value;
            break;
        case ThresholdKind::Fixed:
            spec.resolved_xi = mode.value;
            break;
    }
    if (!(spec.resolved_xi > 0.0) || !std::isfinite(spec.resolved_xi)) {
        throw DomainError("detection threshold must be positive");
    }
    return spec;
}

DetectionReport detect_jumps(const ZStatistics& z, const ThresholdSpec& t) {
    if (z.z.size() != t.n) throw DomainError("threshold was resolved for a different n");
    DetectionReport rep{{}, z, t, {}};
    for (std::size_t i = 0; i < z.z.size(); ++i) {
        if (std::fabs(z.z[i]) > t.resolved_xi) rep.detected_set.push_back(i + 1);
    }
    return rep;
}

std::map<std::size_t, double> estimate_jump_sizes(const SamplePath& path, const EstimateTheta& theta,
                                                  const std::vector<std::size_t>& detected) {
    const double dt = path.scheme.delta_n();
    std::map<std::size_t, double> sizes;
    for (std::size_t i : detected) {
        if (i < 1 || i > path.n()) throw DomainError("detected index out of range");
        const double x = path.values[i - 1];
        sizes[i] = path.values[i] - x - (theta.beta1_hat - theta.beta2_hat * x) * dt;
    }
    return sizes;
}

DetectionReport run_detection(const SamplePath& path, const EstimateTheta& theta, double gamma,
                              const ThresholdMode& mode) {
    const ZStatistics z = compute_z_stats(path, theta, gamma);
    DetectionReport rep = detect_jumps(z, detection_threshold(path.n(), mode));
    rep.jump_size_estimates = estimate_jump_sizes(path, theta, rep.detected_set);
    return rep;
}

double ks_distance_to_gumbel(const std::vector<double>& sorted) {
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double g = gumbel_cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / m - g, g - static_cast<double>(i) / m});
    }
    return d;
}

GumbelCheckSummary gumbel_max_check(std::size_t n, std::size_t replications, std::uint64_t seed,
                                    unsigned threads) {
    if (n < 100) throw DomainError("gumbel_max_check requires n >= 100");
    if (replications < 500) throw DomainError("gumbel_max_check requires at least 500 replications");
    const GumbelConstants c = gumbel_constants(n);

    std::vector<double> maxima(replications);
    parallel_for(replications, threads, [&](std::size_t r) {
        Rng rng(derive_stream_seed(seed, {r}));
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(rng.normal()));
        maxima[r] = (m - c.a_n) / c.b_n;
    });
    std::sort(maxima.begin(), maxima.end());

    GumbelCheckSummary s;
    s.n = n;
    s.replications = replications;
    s.a_n = c.a_n;
    s.b_n = c.b_n;
    s.ks_distance = ks_distance_to_gumbel(maxima);
    const std::size_t mid = replications / 2;
    s.median = replications % 2 == 1 ? maxima[mid] : 0.5 * (maxima[mid - 1] + maxima[mid]);
    const auto below = std::upper_bound(maxima.begin(), maxima.end(), 0.0) - maxima.begin();
    s.ecdf_at_zero = static_cast<double>(below) / static_cast<double>(replications);
    s.normalized_maxima = std::move(maxima);
    return s;
}

}  // namespace jumpsift
