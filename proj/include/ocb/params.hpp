// The exponential-family rate map phi, its inverse mu*, and the closed-form
// default choices for every bound's free parameters.
#pragma once

#include <cmath>
#include <stdexcept>

#include "ocb/qfunc.hpp"

namespace ocb {

/// phi(mu) = 1/mu - 1/(e^mu - 1), strictly decreasing from 1/2 to 0 on
/// (0, inf). Below mu = 1e-4 a short Taylor series avoids the cancellation
/// between the two reciprocals.
inline double phi(double mu) {
    if (!(mu > 0) || !std::isfinite(mu)) throw std::domain_error("phi: requires mu > 0");
    if (mu < 1e-4) {
        const double m2 = mu * mu;
        return 0.5 - mu / 12.0 + mu * m2 / 720.0 - mu * m2 * m2 / 30240.0;
    }
    if (mu > 700.0) return 1.0 / mu;  // e^mu - 1 overflows; its reciprocal is negligible
    return 1.0 / mu - 1.0 / std::expm1(mu);
}

namespace detail {

// phi'(mu) = 1/(4 sinh^2(mu/2)) - 1/mu^2, strictly negative.
inline double phi_derivative(double mu) {
    if (mu < 0.5) {
        const double m2 = mu * mu;
        return -1.0 / 12.0 + m2 / 240.0 - m2 * m2 / 6048.0;
    }
    if (mu > 60.0) return -1.0 / (mu * mu);
    const double s = 2.0 * std::sinh(0.5 * mu);
    return 1.0 / (s * s) - 1.0 / (mu * mu);
}

}  // namespace detail

/// Solution of phi(mu) = alpha together with its verification residual.
struct MuStar {
    double mu;
    double alpha;
    double residual;  // phi(mu) - alpha
};

/// Inverts phi on (0, 1/2) by bracketed bisection with a Newton polish once
/// the bracket is tight. Deterministic; residual <= 1e-12.
inline MuStar solve_mu_star(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 0.5) || !std::isfinite(alpha))
        throw std::domain_error("solve_mu_star: requires 0 < alpha < 1/2");
    double lo = 1e-12, hi = 1e12;
    while (phi(lo) < alpha) lo *= 1e-3;  // alpha within 1e-13 of 1/2
    while (phi(hi) > alpha) hi *= 1e3;
    // bisect to a relative bracket width of 1e-3, then polish
    while (hi - lo > 1e-3 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    double mu = 0.5 * (lo + hi);
    double r = phi(mu) - alpha;
    for (int it = 0; it < 100 && std::fabs(r) > 1e-12; ++it) {
        const double step = r / detail::phi_derivative(mu);
        double next = mu - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // keep the bracket
        mu = next;
        r = phi(mu) - alpha;
        if (r > 0)
            lo = mu;
        else
            hi = mu;
    }
    return MuStar{mu, alpha, r};
}

struct Case1Params {
    double delta;
    double mu;
};

/// Closed-form parameter choice for the two-sided dual bound in the
/// average-dominated peak regime.
inline Case1Params default_params_case1(double peak, double sigma, double alpha) {
    if (!(peak > 0) || !(sigma > 0)) throw std::domain_error("default_params_case1: requires peak, sigma > 0");
    const double delta = sigma * std::log1p(peak / sigma);
    const double ms = solve_mu_star(alpha).mu;
    const double mu = ms * (-std::expm1(-alpha * delta * delta / (2.0 * sigma * sigma)));
    return Case1Params{delta, mu};
}

/// Closed-form offset for the uniform-middle dual bound.
inline double default_delta_case2(double peak, double sigma) {
    if (!(peak > 0) || !(sigma > 0)) throw std::domain_error("default_delta_case2: requires peak, sigma > 0");
    return sigma * std::log1p(peak / sigma);
}

struct Case3Params {
    double delta;
    double beta;
};

namespace detail {

// sqrt(2 pi) sigma e^{delta^2/(2 sigma^2)} Q(delta/sigma), computed in the
// log domain so it survives delta of either sign at extreme ratios.
inline double scaled_tail_mass(double delta, double sigma) {
    const double d2 = delta * delta / (2.0 * sigma * sigma);
    return std::exp(std::log(kSqrt2Pi * sigma) + d2 + log_q(delta / sigma));
}

}  // namespace detail

inline constexpr double kCase3LowRatioLimit = 0.91213264054146125722;  // e^{-1/(4e)}

/// Parameters for the average-only dual bound on the negative-offset branch.
/// Valid only while average/sigma <= e^{-1/(4e)}; above that the offset would
/// land outside the branch's domain and the high branch must be used.
inline Case3Params default_params_case3_low(double average, double sigma) {
    if (!(average > 0) || !(sigma > 0))
        throw std::domain_error("default_params_case3_low: requires average, sigma > 0");
    if (average / sigma > kCase3LowRatioLimit)
        throw std::domain_error(
            "default_params_case3_low: average/sigma too large for the negative-offset branch; "
            "use default_params_case3_high");
    const double delta = -2.0 * sigma * std::sqrt(std::log(sigma / average));
    const double base = average + sigma / detail::kSqrt2Pi;
    const double beta =
        0.5 * base + 0.5 * std::sqrt(base * base + 4.0 * base * detail::scaled_tail_mass(delta, sigma));
    return Case3Params{delta, beta};
}

/// Parameters for the average-only dual bound on the nonnegative-offset branch.
inline Case3Params default_params_case3_high(double average, double sigma) {
    if (!(average > 0) || !(sigma > 0))
        throw std::domain_error("default_params_case3_high: requires average, sigma > 0");
    const double delta = sigma * std::log1p(average / sigma);
    const double base =
        delta + average + sigma / detail::kSqrt2Pi * std::exp(-delta * delta / (2.0 * sigma * sigma));
    const double beta =
        0.5 * base + 0.5 * std::sqrt(base * base + 4.0 * base * detail::scaled_tail_mass(delta, sigma));
    return Case3Params{delta, beta};
}

/// dB convention used throughout: value_dB = 10 log10(ratio).
inline double db_from_ratio(double ratio) { return 10.0 * std::log10(ratio); }
inline double ratio_from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace ocb
