#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace jumpsift {

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct SimplexOptions {
    int max_iters = 2000;
    /// Stop once |f_worst - f_best| <= tol * max(|f_best|, |f_worst|, 1).
    double tol = 1e-10;
    double reflect = 1.0;
    double expand = 2.0;
    double contract = 0.5;
    double shrink = 0.5;
};

/// Nelder-Mead downhill simplex. `step` gives the initial edge length
/// along each coordinate.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start,
                             const std::array<double, N>& step, const SimplexOptions& opt = {}) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> fx;
    pts[0] = start;
    for (std::size_t k = 0; k < N; ++k) {
        pts[k + 1] = start;
        pts[k + 1][k] += step[k];
    }
    for (std::size_t k = 0; k <= N; ++k) fx[k] = f(pts[k]);

    std::array<std::size_t, N + 1> order;
    auto combine = [](const Point& c, const Point& p, double t) {
        Point out;
        for (std::size_t i = 0; i < N; ++i) out[i] = c[i] + t * (p[i] - c[i]);
        return out;
    };

    SimplexResult<N> res;
    int iter = 0;
    for (; iter < opt.max_iters; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[N];
        const std::size_t second = order[N - 1];

        const double scale = std::max({std::fabs(fx[best]), std::fabs(fx[worst]), 1.0});
        if (std::fabs(fx[worst] - fx[best]) <= opt.tol * scale) {
            res.converged = true;
            break;
        }

        Point centroid{};
        for (std::size_t k = 0; k <= N; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < N; ++i) centroid[i] += pts[k][i];
        }
        for (auto& c : centroid) c /= static_cast<double>(N);

        const Point xr = combine(centroid, pts[worst], -opt.reflect);
        const double fr = f(xr);
        if (fr < fx[best]) {
            const Point xe = combine(centroid, pts[worst], -opt.reflect * opt.expand);
            const double fe = f(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fx[worst] = fe;
            } else {
                pts[worst] = xr;
                fx[worst] = fr;
            }
            continue;
        }
        if (fr < fx[second]) {
            pts[worst] = xr;
            fx[worst] = fr;
            continue;
        }
        // Contraction, outside or inside depending on the reflected value.
        const bool outside = fr < fx[worst];
        const Point xc = outside ? combine(centroid, xr, opt.contract)
                                 : combine(centroid, pts[worst], opt.contract);
        const double fc = f(xc);
        if (fc < (outside ? fr : fx[worst])) {
            pts[worst] = xc;
            fx[worst] = fc;
            continue;
        }
        for (std::size_t k = 0; k <= N; ++k) {
            if (k == best) continue;
            pts[k] = combine(pts[best], pts[k], opt.shrink);
            fx[k] = f(pts[k]);
        }
    }

    const auto it = std::min_element(fx.begin(), fx.end());
    const auto idx = static_cast<std::size_t>(it - fx.begin());
    res.x = pts[idx];
    res.f = fx[idx];
    res.iterations = iter;
    return res;
}

}  // namespace jumpsift
