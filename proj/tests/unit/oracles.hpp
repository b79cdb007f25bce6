#pragma once

// Reference computations used only by the tests. They deliberately avoid the
// library's code paths: plain quadrature, finite differences, direct density
// evaluation and Gaussian elimination.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

/// Composite Simpson rule on [a, b] with m (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t m) {
    if (m % 2 == 1) ++m;
    const double h = (b - a) / static_cast<double>(m);
    double s = f(a) + f(b);
    for (std::size_t k = 1; k < m; ++k) s += f(a + h * static_cast<double>(k)) * (k % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double normal_pdf(double x, double sigma) {
    return std::exp(-0.5 * x * x / (sigma * sigma)) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

/// Integral of N(0, sigma^2)^(1 + alpha) over +-40 sigma.
inline double power_integral_quadrature(double sigma, double alpha) {
    return simpson([&](double x) { return std::pow(normal_pdf(x, sigma), 1.0 + alpha); }, -40.0 * sigma,
                   40.0 * sigma, 200000);
}

/// Direct sum of -log f over residuals, from the density itself.
inline double direct_nll(const std::vector<double>& residuals, double sigma) {
    double s = 0.0;
    for (double r : residuals) s -= std::log(normal_pdf(r, sigma));
    return s;
}

/// Literal per-observation density power divergence term.
inline double literal_bracket(double r, double sigma, double alpha) {
    const double f = normal_pdf(r, sigma);
    const double integral = power_integral_quadrature(sigma, alpha);
    return integral - (1.0 + alpha) / alpha * std::pow(f, alpha) + 1.0 / alpha;
}

/// Central-difference gradient with relative step h.
template <class F>
std::array<double, 3> central_gradient(F&& f, const std::array<double, 3>& x, double h = 1e-6) {
    std::array<double, 3> g{};
    for (std::size_t k = 0; k < 3; ++k) {
        const double step = h * std::max(std::fabs(x[k]), 1.0);
        auto up = x, dn = x;
        up[k] += step;
        dn[k] -= step;
        g[k] = (f(up) - f(dn)) / (2.0 * step);
    }
    return g;
}

/// Least squares for two regressors by Gaussian elimination with pivoting on
/// the normal equations.
inline std::pair<double, double> least_squares_2(const std::vector<double>& z1, const std::vector<double>& z2,
                                                 const std::vector<double>& y) {
    long double a[2][3] = {{0, 0, 0}, {0, 0, 0}};
    for (std::size_t i = 0; i < y.size(); ++i) {
        a[0][0] += static_cast<long double>(z1[i]) * z1[i];
        a[0][1] += static_cast<long double>(z1[i]) * z2[i];
        a[1][1] += static_cast<long double>(z2[i]) * z2[i];
        a[0][2] += static_cast<long double>(z1[i]) * y[i];
        a[1][2] += static_cast<long double>(z2[i]) * y[i];
    }
    a[1][0] = a[0][1];
    if (std::fabs(a[1][0]) > std::fabs(a[0][0])) {
        for (int c = 0; c < 3; ++c) std::swap(a[0][c], a[1][c]);
    }
    const long double m = a[1][0] / a[0][0];
    for (int c = 0; c < 3; ++c) a[1][c] -= m * a[0][c];
    const long double b2 = a[1][2] / a[1][1];
    const long double b1 = (a[0][2] - a[0][1] * b2) / a[0][0];
    return {static_cast<double>(b1), static_cast<double>(b2)};
}

/// Gumbel norming constants in extended precision.
inline std::pair<long double, long double> gumbel_constants_ld(long double n) {
    const long double root = std::sqrt(2.0L * std::log(n));
    const long double pi = 3.141592653589793238462643383279502884L;
    return {root - (std::log(std::log(n)) + std::log(pi)) / (2.0L * root), 1.0L / root};
}

}  // namespace oracle
