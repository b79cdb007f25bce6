#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jumpsift/model.hpp"

namespace jumpsift {

/// Floor used by the full-truncation Euler scheme.
inline constexpr double kPositivityFloor = 1e-8;

struct SimConfig {
    DiffusionParams params;
    JumpParams jumps;
    SamplingScheme scheme;
    std::uint64_t seed = 0;
};

/// Full-truncation Euler-Maruyama path of the CKLS diffusion with
/// compound-Poisson jumps added after each diffusion step. The seed fully
/// determines the output.
SamplePath simulate(const SimConfig& cfg);

/// 1-based indices i with a nonzero jump increment on (t_{i-1}, t_i].
/// Throws DomainError when the path carries no ground truth.
std::vector<std::size_t> jump_index_set(const SamplePath& path);

}  // namespace jumpsift
