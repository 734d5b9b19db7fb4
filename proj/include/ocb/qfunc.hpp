// Gaussian tail probability Q and log-domain companions.
//
// The complementary-error-function kernel is implemented in-repo (rational
// approximations on three branches plus an asymptotic tail) so that the
// accuracy of every bound formula built on it is under test control.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ocb {

namespace detail {

inline constexpr double kPi = 3.1415926535897932385;
inline constexpr double kE = 2.7182818284590452354;
inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kSqrt2Pi = 2.5066282746310005024;
inline constexpr double kInvSqrtPi = 0.56418958354775628695;
inline constexpr double kLogHalf = -0.69314718055994530942;

// Rational Chebyshev fits for erf/erfc (Cody), |relative error| < 6e-17
// on each branch.
inline double erf_small(double x) {
    // |x| <= 0.46875
    static constexpr double a[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                                    3.77485237685302021e2, 3.20937758913846947e3,
                                    1.85777706184603153e-1};
    static constexpr double b[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                                    1.28261652607737228e3, 2.84423683343917062e3};
    const double z = x * x;
    double num = a[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
        num = (num + a[i]) * z;
        den = (den + b[i]) * z;
    }
    return x * (num + a[3]) / (den + b[3]);
}

// exp(x^2) * erfc(x) for x >= 0.46875.
inline double erfcx_core(double y) {
    if (y <= 4.0) {
        static constexpr double c[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                                        6.61191906371416295e1,  2.98635138197400131e2,
                                        8.81952221241769090e2,  1.71204761263407058e3,
                                        2.05107837782607147e3,  1.23033935479799725e3,
                                        2.15311535474403846e-8};
        static constexpr double d[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                                        5.37181101862009858e2, 1.62138957456669019e3,
                                        3.29079923573345963e3, 4.36261909014324716e3,
                                        3.43936767414372164e3, 1.23033935480374942e3};
        double num = c[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + c[i]) * y;
            den = (den + d[i]) * y;
        }
        return (num + c[7]) / (den + d[7]);
    }
    if (y > 1e8) {
        // leading asymptotic term; relative error < 1e-16/y^2
        return kInvSqrtPi / y;
    }
    static constexpr double p[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                    1.25781726111229246e-1, 1.60837851487422766e-2,
                                    6.58749161529837803e-4, 1.63153871373020978e-2};
    static constexpr double q[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                                    5.27905102951428412e-1, 6.05183413124413191e-2,
                                    2.33520497626869185e-3};
    const double z = 1.0 / (y * y);
    double num = p[5] * z;
    double den = z;
    for (int i = 0; i < 4; ++i) {
        num = (num + p[i]) * z;
        den = (den + q[i]) * z;
    }
    const double r = z * (num + p[4]) / (den + q[4]);
    return (kInvSqrtPi - r) / y;
}

// exp(-y^2) with the argument squared in split precision, so the relative
// error stays near one ulp even when y^2 is large.
inline double exp_neg_ysq(double y) {
    const double yh = std::trunc(y * 16.0) / 16.0;
    const double del = (y - yh) * (y + yh);
    return std::exp(-yh * yh) * std::exp(-del);
}

inline double neg_ysq_exact(double y) {
    const double yh = std::trunc(y * 16.0) / 16.0;
    return -yh * yh - (y - yh) * (y + yh);
}

inline double erfc_positive(double y) {
    // y >= 0.46875
    return exp_neg_ysq(y) * erfcx_core(y);
}

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite argument");
}

}  // namespace detail

/// Gaussian tail probability: integral of the standard normal density over
/// [xi, inf). Underflows to 0 beyond the representable range (xi ~ 38.6).
inline double q(double xi) {
    detail::require_finite(xi, "q");
    const double y = xi / detail::kSqrt2;
    const double ay = std::fabs(y);
    if (ay <= 0.46875) return 0.5 * (1.0 - detail::erf_small(y));
    const double tail = 0.5 * detail::erfc_positive(ay);
    return y > 0 ? tail : 1.0 - tail;
}

/// log(q(xi)), stable over the whole double range (no underflow at large xi).
inline double log_q(double xi) {
    detail::require_finite(xi, "log_q");
    if (xi < 0.0) {
        // q(xi) = 1 - q(-xi); the tail being subtracted is at most 1/2
        return std::log1p(-q(-xi));
    }
    const double y = xi / detail::kSqrt2;
    if (y <= 0.46875) return std::log(0.5 * (1.0 - detail::erf_small(y)));
    return detail::kLogHalf + std::log(detail::erfcx_core(y)) + detail::neg_ysq_exact(y);
}

/// 1 - q(xi0 + xi) - q(xi0 + gamma - xi): the coverage of [-xi0, gamma - xi]
/// shaped window, concave in xi and symmetric around gamma/2.
inline double lemma4_f(double xi, double xi0, double gamma) {
    detail::require_finite(xi, "lemma4_f");
    if (xi0 < 0 || gamma < 0) throw std::domain_error("lemma4_f: xi0 and gamma must be >= 0");
    if (xi < 0 || xi > gamma) throw std::domain_error("lemma4_f: xi outside [0, gamma]");
    return 1.0 - q(xi0 + xi) - q(xi0 + gamma - xi);
}

/// log(1 - 2 q(x)) for x > 0, i.e. the log-mass of a centred Gaussian on
/// [-x, x]. Small x is routed through erf to dodge the 1 - 2q cancellation.
inline double log1m2q(double x) {
    if (!(x > 0)) throw std::domain_error("log1m2q: requires x > 0");
    const double y = x / detail::kSqrt2;
    if (y <= 0.46875) return std::log(detail::erf_small(y));
    return std::log1p(-2.0 * q(x));
}

/// log(e^a + e^b) without overflow.
inline double logsumexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

/// log(e^a - e^b) for a > b, accurate when a - b is tiny.
inline double logdiffexp(double a, double b) {
    if (!(a > b)) throw std::domain_error("logdiffexp: requires a > b");
    const double h = 0.5 * (a - b);
    if (h < 350.0) return 0.5 * (a + b) + std::log(2.0 * std::sinh(h));
    return a + std::log1p(-std::exp(b - a));
}

}  // namespace ocb
