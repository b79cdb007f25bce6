#include "jumpsift/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "jumpsift/path_sim.hpp"

namespace jumpsift {

namespace {

std::vector<std::size_t> normalized(std::vector<std::size_t> s, std::size_t n) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && (s.front() < 1 || s.back() > n)) throw DomainError("index outside 1..n");
    return s;
}

}  // namespace

ClassificationCounts classification_counts(const std::vector<std::size_t>& true_set,
                                           const std::vector<std::size_t>& detected_set, std::size_t n) {
    const auto truth = normalized(true_set, n);
    const auto found = normalized(detected_set, n);
    std::vector<std::size_t> both;
    std::set_intersection(truth.begin(), truth.end(), found.begin(), found.end(), std::back_inserter(both));
    return {both.size(), found.size() - both.size(), truth.size() - both.size()};
}

double precision(const ClassificationCounts& c) {
    if (c.tp + c.fp == 0) return c.fn == 0 ? 1.0 : 0.0;
    return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

double recall(const ClassificationCounts& c) {
    if (c.tp + c.fn == 0) return c.fp == 0 ? 1.0 : 0.0;
    return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

double f1_score(const ClassificationCounts& c) {
    const double p = precision(c);
    const double r = recall(c);
    return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

JumpStats realized_jump_stats(const SamplePath& path) {
    const auto idx = jump_index_set(path);
    JumpStats s;
    s.count = idx.size();
    s.intensity = static_cast<double>(s.count) / static_cast<double>(path.n());
    if (s.count > 0) {
        double sum = 0.0;
        for (std::size_t i : idx) sum += (*path.true_jump_increments)[i - 1];
        s.mean = sum / static_cast<double>(s.count);
    }
    return s;
}

JumpStats estimated_jump_stats(const DetectionReport& report, std::size_t n) {
    JumpStats s;
    s.count = report.detected_set.size();
    s.intensity = static_cast<double>(s.count) / static_cast<double>(n);
    if (s.count > 0) {
        double sum = 0.0;
        for (std::size_t i : report.detected_set) sum += report.jump_size_estimates.at(i);
        s.mean = sum / static_cast<double>(s.count);
    }
    return s;
}

std::optional<double> d_metric(const JumpStats& realized, const JumpStats& estimated) {
    if (!realized.mean || !estimated.mean) return std::nullopt;
    if (*estimated.mean == 0.0 || estimated.intensity == 0.0) return std::nullopt;
    const double dm = *realized.mean / *estimated.mean - 1.0;
    const double dl = realized.intensity / estimated.intensity - 1.0;
    return std::sqrt(dm * dm + dl * dl);
}

}  // namespace jumpsift
