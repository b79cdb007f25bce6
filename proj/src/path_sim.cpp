#include "jumpsift/path_sim.hpp"

#include <algorithm>
#include <cmath>

#include "jumpsift/rng.hpp"

namespace jumpsift {

SamplePath simulate(const SimConfig& cfg) {
    const auto& p = cfg.params;
    const auto& j = cfg.jumps;
    const std::size_t n = cfg.scheme.n();
    const double dt = cfg.scheme.delta_n();
    const double sqrt_dt = std::sqrt(dt);
    const double jump_mean = j.lambda() * dt;

    SamplePath path{{}, {}, std::vector<double>(n, 0.0), cfg.scheme};
    path.times.resize(n + 1);
    path.values.resize(n + 1);
    auto& jumps = *path.true_jump_increments;

    Rng rng(cfg.seed);
    double x = cfg.scheme.x0();
    path.times[0] = 0.0;
    path.values[0] = x;
    for (std::size_t i = 1; i <= n; ++i) {
        const double xp = std::max(x, kPositivityFloor);
        const double xi = rng.normal();
        x += (p.beta1() - p.beta2() * xp) * dt + p.sigma() * std::pow(xp, p.gamma()) * sqrt_dt * xi;

        double dj = 0.0;
        if (j.has_jumps()) {
            const std::uint64_t count = rng.poisson(jump_mean);
            for (std::uint64_t k = 0; k < count; ++k) {
                dj += j.mu_J() + j.sigma_J() * rng.normal();
            }
        }
        x += dj;
        if (!(x > 0.0)) x = kPositivityFloor;

        jumps[i - 1] = dj;
        path.times[i] = static_cast<double>(i) * dt;
        path.values[i] = x;
    }
    return path;
}

std::vector<std::size_t> jump_index_set(const SamplePath& path) {
    if (!path.true_jump_increments) throw DomainError("path carries no ground-truth jumps");
    std::vector<std::size_t> out;
    const auto& jumps = *path.true_jump_increments;
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        if (jumps[i] != 0.0) out.push_back(i + 1);
    }
    return out;
}

}  // namespace jumpsift
