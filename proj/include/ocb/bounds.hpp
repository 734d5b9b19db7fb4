// Closed-form capacity bounds for the nonnegative-input Gaussian channel
// under peak and/or average constraints, evaluated in the log domain so the
// full sweep range (beyond 60 dB) stays free of overflow and cancellation.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "ocb/params.hpp"
#include "ocb/qfunc.hpp"

namespace ocb {

enum class CaseTag { I, II, III };

inline const char* to_string(CaseTag c) {
    switch (c) {
        case CaseTag::I: return "I";
        case CaseTag::II: return "II";
        default: return "III";
    }
}

/// One channel/constraint instance: noise level, optional peak, average.
struct ConstraintSpec {
    double sigma = 1.0;
    std::optional<double> peak;  // amplitude bound, if any
    double average = 0.0;

    static ConstraintSpec peak_and_average(double peak, double average, double sigma) {
        if (!(sigma > 0) || !std::isfinite(sigma)) throw std::domain_error("ConstraintSpec: sigma must be > 0");
        if (peak < 0 || average < 0 || !std::isfinite(peak) || !std::isfinite(average))
            throw std::domain_error("ConstraintSpec: peak and average must be >= 0");
        if (average > peak) throw std::domain_error("ConstraintSpec: average must not exceed peak");
        return ConstraintSpec{sigma, peak, average};
    }

    static ConstraintSpec average_only(double average, double sigma) {
        if (!(sigma > 0) || !std::isfinite(sigma)) throw std::domain_error("ConstraintSpec: sigma must be > 0");
        if (average < 0 || !std::isfinite(average)) throw std::domain_error("ConstraintSpec: average must be >= 0");
        return ConstraintSpec{sigma, std::nullopt, average};
    }

    bool has_peak() const { return peak.has_value(); }

    /// average-to-peak ratio; requires a peak constraint
    double alpha() const {
        if (!peak) throw std::logic_error("ConstraintSpec::alpha: no peak constraint");
        if (*peak == 0.0) return 1.0;  // degenerate instance
        return average / *peak;
    }

    bool degenerate() const { return peak ? *peak == 0.0 || average == 0.0 : average == 0.0; }
};

/// Constraint-regime dispatch. An exact ratio of 1/2 is routed to the
/// symmetric regime, where the mean constraint is inactive.
inline CaseTag case_of(const ConstraintSpec& spec) {
    if (!spec.has_peak()) return CaseTag::III;
    return spec.alpha() < 0.5 ? CaseTag::I : CaseTag::II;
}

enum class Side { lower, upper };

/// Stable numeric formula identifiers, used in CSV headers and results.
namespace formula {
inline constexpr int lower_trunc_exp = 26;   // entropy-power bound, truncated-exponential input
inline constexpr int upper_gauss_moment = 27;  // Gaussian output law matched to first two moments
inline constexpr int upper_dual_texp = 28;   // dual bound, exponential middle + Gaussian tails
inline constexpr int lower_uniform = 38;     // entropy-power bound, uniform input
inline constexpr int upper_gauss_peak = 39;  // Gaussian output law for the symmetric regime
inline constexpr int upper_dual_uniform = 40;  // dual bound, flat middle + Gaussian tails
inline constexpr int lower_exp = 46;         // entropy-power bound, exponential input
inline constexpr int upper_dual_exp_low = 47;   // dual bound, shifted exponential, negative offset
inline constexpr int upper_dual_exp_high = 48;  // dual bound, shifted exponential, nonnegative offset
}  // namespace formula

struct BoundParams {
    std::optional<double> delta;
    std::optional<double> mu;
    std::optional<double> beta;
};

/// One bound value in nats, tagged with its side and originating formula.
struct BoundEstimate {
    double nats = 0.0;
    Side side = Side::lower;
    int formula = 0;
    BoundParams params;
};

namespace detail {

inline void require_positive(double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v)) throw std::domain_error(std::string(what) + ": must be > 0");
}

inline void require_nonneg(double v, const char* what) {
    if (v < 0 || !std::isfinite(v)) throw std::domain_error(std::string(what) + ": must be >= 0");
}

inline void require_alpha_case1(double alpha) {
    if (!(alpha > 0) || !(alpha < 0.5)) throw std::domain_error("alpha: must lie in (0, 1/2)");
}

inline BoundEstimate lower(double nats, int id, BoundParams p = {}) {
    return BoundEstimate{std::max(nats, 0.0), Side::lower, id, p};
}

inline BoundEstimate upper(double nats, int id, BoundParams p = {}) {
    return BoundEstimate{nats, Side::upper, id, p};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Case I: peak A with average alpha*A, alpha in (0, 1/2)
// ---------------------------------------------------------------------------

inline BoundEstimate lower_case1(double peak, double sigma, double alpha) {
    detail::require_nonneg(peak, "peak");
    detail::require_positive(sigma, "sigma");
    detail::require_alpha_case1(alpha);
    if (peak == 0.0) return detail::lower(0.0, formula::lower_trunc_exp);
    const double ms = solve_mu_star(alpha).mu;
    const double shape = -std::expm1(-ms) / ms;  // (1 - e^{-mu*})/mu*
    const double snr2 = (peak / sigma) * (peak / sigma);
    const double t = snr2 * std::exp(2.0 * alpha * ms) * shape * shape / (2.0 * detail::kPi * detail::kE);
    return detail::lower(0.5 * std::log1p(t), formula::lower_trunc_exp);
}

inline BoundEstimate upper_case1_gauss(double peak, double sigma, double alpha) {
    detail::require_nonneg(peak, "peak");
    detail::require_positive(sigma, "sigma");
    if (!(alpha > 0) || !(alpha <= 0.5)) throw std::domain_error("alpha: must lie in (0, 1/2]");
    const double snr2 = (peak / sigma) * (peak / sigma);
    return detail::upper(0.5 * std::log1p(alpha * (1.0 - alpha) * snr2), formula::upper_gauss_moment);
}

inline BoundEstimate upper_case1_dual(double peak, double sigma, double alpha, double delta, double mu) {
    detail::require_nonneg(peak, "peak");
    detail::require_positive(sigma, "sigma");
    detail::require_alpha_case1(alpha);
    detail::require_positive(delta, "delta");
    detail::require_positive(mu, "mu");
    if (peak == 0.0) return detail::upper(0.0, formula::upper_dual_texp, {delta, mu, {}});
    const double A = peak, s = sigma;
    const double weight = 1.0 - q((delta + alpha * A) / s) - q((delta + (1.0 - alpha) * A) / s);
    // log of (A/s) (e^{mu delta/A} - e^{-mu(1 + delta/A)}) / (sqrt(2 pi) mu (1 - 2q(delta/s)))
    const double log_gap = logdiffexp(mu * delta / A, -mu * (1.0 + delta / A));
    const double log_factor =
        std::log(A / s) + log_gap - std::log(detail::kSqrt2Pi * mu) - log1m2q(delta / s);
    const double e_d = std::exp(-delta * delta / (2.0 * s * s));
    const double e_ad = std::exp(-(A + delta) * (A + delta) / (2.0 * s * s));
    const double nats = weight * log_factor - 0.5 + q(delta / s) + delta / (detail::kSqrt2Pi * s) * e_d +
                        mu * s / (A * detail::kSqrt2Pi) * (e_d - e_ad) +
                        mu * alpha * (1.0 - 2.0 * q((delta + 0.5 * A) / s));
    return detail::upper(nats, formula::upper_dual_texp, {delta, mu, {}});
}

// ---------------------------------------------------------------------------
// Case II: peak A with average >= A/2 (mean constraint inactive)
// ---------------------------------------------------------------------------

inline BoundEstimate lower_case2(double peak, double sigma) {
    detail::require_nonneg(peak, "peak");
    detail::require_positive(sigma, "sigma");
    const double snr2 = (peak / sigma) * (peak / sigma);
    return detail::lower(0.5 * std::log1p(snr2 / (2.0 * detail::kPi * detail::kE)), formula::lower_uniform);
}

inline BoundEstimate upper_case2_gauss(double peak, double sigma) {
    detail::require_nonneg(peak, "peak");
    detail::require_positive(sigma, "sigma");
    const double snr2 = (peak / sigma) * (peak / sigma);
    return detail::upper(0.5 * std::log1p(snr2 / 4.0), formula::upper_gauss_peak);
}

inline BoundEstimate upper_case2_dual(double peak, double sigma, double delta) {
    detail::require_nonneg(peak, "peak");
    detail::require_positive(sigma, "sigma");
    detail::require_positive(delta, "delta");
    if (peak == 0.0) return detail::upper(0.0, formula::upper_dual_uniform, {delta, {}, {}});
    const double A = peak, s = sigma;
    const double weight = 1.0 - 2.0 * q((delta + 0.5 * A) / s);
    const double log_factor = std::log(A + 2.0 * delta) - std::log(s * detail::kSqrt2Pi) - log1m2q(delta / s);
    const double nats = weight * log_factor - 0.5 + q(delta / s) +
                        delta / (detail::kSqrt2Pi * s) * std::exp(-delta * delta / (2.0 * s * s));
    return detail::upper(nats, formula::upper_dual_uniform, {delta, {}, {}});
}

// ---------------------------------------------------------------------------
// Case III: average-only constraint
// ---------------------------------------------------------------------------

inline BoundEstimate lower_case3(double average, double sigma) {
    detail::require_nonneg(average, "average");
    detail::require_positive(sigma, "sigma");
    const double r2 = (average / sigma) * (average / sigma);
    return detail::lower(0.5 * std::log1p(r2 * detail::kE / (2.0 * detail::kPi)), formula::lower_exp);
}

inline constexpr double kCase3DeltaLimitFactor = -0.60653065971263342360;  // -e^{-1/2}

namespace detail {

// log(beta e^{-delta^2/(2 sigma^2)} + sqrt(2 pi) sigma Q(delta/sigma))
inline double log_mix_normalizer(double beta, double delta, double sigma) {
    return logsumexp(std::log(beta) - delta * delta / (2.0 * sigma * sigma),
                     std::log(kSqrt2Pi * sigma) + log_q(delta / sigma));
}

}  // namespace detail

inline BoundEstimate upper_case3_low(double average, double sigma, double delta, double beta) {
    detail::require_nonneg(average, "average");
    detail::require_positive(sigma, "sigma");
    detail::require_positive(beta, "beta");
    if (!(delta <= kCase3DeltaLimitFactor * sigma))
        throw std::domain_error("upper_case3_low: requires delta <= -sigma/sqrt(e)");
    if (average == 0.0) return detail::upper(0.0, formula::upper_dual_exp_low, {delta, {}, beta});
    const double s = sigma, E = average;
    const double d2 = delta * delta / (2.0 * s * s);
    const double qd = q(delta / s);
    const double nats = detail::log_mix_normalizer(beta, delta, s) - std::log(detail::kSqrt2Pi * s) -
                        delta * E / (2.0 * s * s) + d2 * (1.0 - qd - (E / delta) * qd) +
                        (E + s / detail::kSqrt2Pi) / beta;
    return detail::upper(nats, formula::upper_dual_exp_low, {delta, {}, beta});
}

inline BoundEstimate upper_case3_high(double average, double sigma, double delta, double beta) {
    detail::require_nonneg(average, "average");
    detail::require_positive(sigma, "sigma");
    detail::require_positive(beta, "beta");
    if (!(delta >= 0)) throw std::domain_error("upper_case3_high: requires delta >= 0");
    if (average == 0.0) return detail::upper(0.0, formula::upper_dual_exp_high, {delta, {}, beta});
    const double s = sigma, E = average;
    const double d2 = delta * delta / (2.0 * s * s);
    const double e_d = std::exp(-d2);
    const double nats = detail::log_mix_normalizer(beta, delta, s) + 0.5 * q(delta / s) +
                        delta / (2.0 * detail::kSqrt2Pi * s) * e_d + d2 * (1.0 - q((delta + E) / s)) +
                        (delta + E + s / detail::kSqrt2Pi * e_d) / beta -
                        0.5 * std::log(2.0 * detail::kPi * detail::kE * s * s);
    return detail::upper(nats, formula::upper_dual_exp_high, {delta, {}, beta});
}

}  // namespace ocb
