// Test-side quadrature oracles, kept independent of the library's own
// evaluation paths.
#pragma once

#include <cmath>
#include <functional>

namespace testsupport {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m), right = simpson(f, m, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 60);
}

/// Gaussian tail probability by direct quadrature of the density, the
/// defining integral truncated where the integrand underflows.
inline double q_by_quadrature(double xi, double tol = 1e-15) {
    const double inv = 0.39894228040143267794;  // 1/sqrt(2 pi)
    auto density = [inv](double t) { return inv * std::exp(-0.5 * t * t); };
    const double hi = std::max(xi + 45.0, 45.0);
    return integrate(density, xi, hi, tol);
}

/// log q(xi) for large xi by quadrature of the exponentially rescaled
/// integrand e^{-(t^2 - xi^2)/2}/sqrt(2 pi), which stays representable.
inline double log_q_by_quadrature(double xi) {
    const double inv = 0.39894228040143267794;
    auto scaled = [inv, xi](double t) { return inv * std::exp(-0.5 * (t - xi) * (t + xi)); };
    const double body = integrate(scaled, xi, xi + 50.0, 1e-16);
    return std::log(body) - 0.5 * xi * xi;
}

}  // namespace testsupport
