#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jumpsift/jump_detect.hpp"
#include "jumpsift/model.hpp"

namespace jumpsift {

struct ClassificationCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

/// Counts from two 1-based index sets (any order, duplicates ignored).
ClassificationCounts classification_counts(const std::vector<std::size_t>& true_set,
                                           const std::vector<std::size_t>& detected_set, std::size_t n);

// Empty-set conventions: with nothing to find and nothing found every score
// is 1; an empty side against a nonempty one scores 0.
double precision(const ClassificationCounts& c);
double recall(const ClassificationCounts& c);
double f1_score(const ClassificationCounts& c);

/// Jump mean and per-increment intensity count / n.
struct JumpStats {
    std::optional<double> mean;  // undefined when count == 0
    double intensity = 0.0;
    std::size_t count = 0;

    /// Intensity in jumps per unit time.
    double intensity_per_time(double delta_n) const { return intensity / delta_n; }
};

JumpStats realized_jump_stats(const SamplePath& path);
JumpStats estimated_jump_stats(const DetectionReport& report, std::size_t n);

/// sqrt((mu_real/mu_hat - 1)^2 + (lam_real/lam_hat - 1)^2); nullopt when a
/// ratio is undefined (no true jumps, no detections, or a zero estimate).
std::optional<double> d_metric(const JumpStats& realized, const JumpStats& estimated);

}  // namespace jumpsift
