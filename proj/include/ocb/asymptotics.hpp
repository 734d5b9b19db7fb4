// High- and low-power asymptotic capacity expressions and the convergence
// diagnostics that witness them against the computed envelope.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ocb/optimize.hpp"

namespace ocb {

inline constexpr double kHalfLog2PiE = 1.4189385332046727418;   // (1/2) log(2 pi e)
inline constexpr double kHalfLogEOver2Pi = -0.41893853320467274178;  // (1/2) log(e/(2 pi))

/// Constant offset of the high-power expansion C ~ log(peak/sigma) + chi(alpha).
/// Tends to -inf as alpha tends to 0; constant -1/2 log(2 pi e) for alpha >= 1/2.
/// Evaluated through the form with one alpha eliminated via the defining
/// relation of mu*, which stays finite in doubles down to vanishing alpha
/// (the direct form loses 1 - alpha*mu* to rounding once mu* exceeds ~40).
inline double chi(double alpha) {
    if (!(alpha > 0) || !(alpha <= 1.0)) throw std::domain_error("chi: requires alpha in (0, 1]");
    if (alpha >= 0.5) return -kHalfLog2PiE;
    const double ms = solve_mu_star(alpha).mu;
    return -kHalfLog2PiE + alpha * ms - std::log(ms / (-std::expm1(-ms)));
}

namespace detail {

// direct two-term form of chi on (0, 1/2); numerically sane only while
// 1 - alpha*mu* is representable, used as a cross-check on that range
inline double chi_direct(double alpha) {
    require_alpha_case1(alpha);
    const double ms = solve_mu_star(alpha).mu;
    return -kHalfLog2PiE - (1.0 - alpha) * ms - std::log1p(-alpha * ms);
}

}  // namespace detail

/// log(ratio) + constant: the high-power capacity expansion for the given
/// regime. `ratio` is peak/sigma (cases I, II) or average/sigma (case III).
inline double high_snr_asymptote(CaseTag tag, double ratio, std::optional<double> alpha = {}) {
    if (!(ratio > 0)) throw std::domain_error("high_snr_asymptote: requires ratio > 0");
    switch (tag) {
        case CaseTag::I:
            if (!alpha) throw std::domain_error("high_snr_asymptote: case I requires alpha");
            return std::log(ratio) + chi(*alpha);
        case CaseTag::II:
            return std::log(ratio) - kHalfLog2PiE;
        default:
            return std::log(ratio) + kHalfLogEOver2Pi;
    }
}

/// Low-power scaling law. Cases I and II: quadratic, C ~ coeff * ratio^2.
/// Case III: C ~ ratio * sqrt(log(1/ratio)) with the capacity-to-law ratio
/// bracketed in [1/sqrt(2), 2].
struct LowSnrLaw {
    CaseTag case_tag = CaseTag::I;
    double quadratic_coeff = 0.0;           // cases I, II
    double bracket_lo = 0.0, bracket_hi = 0.0;  // case III
    double value(double ratio) const {
        if (case_tag == CaseTag::III) {
            if (!(ratio > 0) || !(ratio < 1)) throw std::domain_error("LowSnrLaw: requires ratio in (0, 1)");
            return ratio * std::sqrt(std::log(1.0 / ratio));
        }
        return quadratic_coeff * ratio * ratio;
    }
};

inline LowSnrLaw low_snr_asymptote(CaseTag tag, std::optional<double> alpha = {}) {
    LowSnrLaw law;
    law.case_tag = tag;
    switch (tag) {
        case CaseTag::I:
            if (!alpha) throw std::domain_error("low_snr_asymptote: case I requires alpha");
            detail::require_alpha_case1(*alpha);
            law.quadratic_coeff = *alpha * (1.0 - *alpha) / 2.0;
            break;
        case CaseTag::II:
            law.quadratic_coeff = 0.125;
            break;
        case CaseTag::III:
            law.bracket_lo = 1.0 / std::sqrt(2.0);
            law.bracket_hi = 2.0;
            break;
    }
    return law;
}

enum class Regime { high, low };

/// Envelope-versus-asymptote deviations over a ratio grid, with a verdict.
/// High regime: converging means both deviation sequences are strictly
/// decreasing over the tail of the grid and end below `threshold`.
/// Low regime (cases I/II): the upper envelope divided by the quadratic law
/// must approach 1 from below; (case III): the ratio must end inside the
/// stated bracket widened by 10%.
struct AsymptoteReport {
    Regime regime = Regime::high;
    CaseTag case_tag = CaseTag::I;
    std::vector<double> grid_db;
    std::vector<double> asymptote;   // high regime only
    std::vector<double> upper_dev;   // high: |upper - asymptote|; low: upper/law
    std::vector<double> lower_dev;   // high: |lower - asymptote|; low: lower/law
    bool converging = false;
};

namespace detail {

inline ConstraintSpec spec_at_ratio(CaseTag tag, double ratio, std::optional<double> alpha) {
    switch (tag) {
        case CaseTag::I:
            return ConstraintSpec::peak_and_average(ratio, *alpha * ratio, 1.0);
        case CaseTag::II:
            return ConstraintSpec::peak_and_average(ratio, alpha ? *alpha * ratio : 0.75 * ratio, 1.0);
        default:
            return ConstraintSpec::average_only(ratio, 1.0);
    }
}

inline bool strictly_decreasing_tail(const std::vector<double>& v, std::size_t tail) {
    if (v.size() < tail) return false;
    for (std::size_t i = v.size() - tail; i + 1 < v.size(); ++i)
        if (!(v[i] > v[i + 1])) return false;
    return true;
}

}  // namespace detail

inline AsymptoteReport convergence_report(CaseTag tag, std::optional<double> alpha, Regime regime,
                                          std::span<const double> grid_db, double threshold = 0.01) {
    AsymptoteReport rep;
    rep.regime = regime;
    rep.case_tag = tag;
    rep.grid_db.assign(grid_db.begin(), grid_db.end());
    const LowSnrLaw law = regime == Regime::low ? low_snr_asymptote(tag, alpha) : LowSnrLaw{};
    for (const double db : grid_db) {
        const double ratio = ratio_from_db(db);
        const Envelope env = envelope(detail::spec_at_ratio(tag, ratio, alpha));
        if (regime == Regime::high) {
            const double asym = high_snr_asymptote(tag, ratio, alpha);
            rep.asymptote.push_back(asym);
            rep.upper_dev.push_back(std::fabs(env.upper - asym));
            rep.lower_dev.push_back(std::fabs(env.lower - asym));
        } else {
            const double lv = law.value(ratio);
            rep.upper_dev.push_back(env.upper / lv);
            rep.lower_dev.push_back(env.lower / lv);
        }
    }
    if (regime == Regime::high) {
        const std::size_t tail = std::min<std::size_t>(5, rep.upper_dev.size());
        rep.converging = detail::strictly_decreasing_tail(rep.upper_dev, tail) &&
                         detail::strictly_decreasing_tail(rep.lower_dev, tail) &&
                         rep.upper_dev.back() < threshold && rep.lower_dev.back() < threshold;
    } else if (tag == CaseTag::III) {
        const double r = rep.upper_dev.back();
        rep.converging = r >= law.bracket_lo * 0.9 && r <= law.bracket_hi * 1.1;
    } else {
        const double r = rep.upper_dev.back();
        rep.converging = r <= 1.0 + 1e-9 && r >= 1.0 - 1e-3;
    }
    return rep;
}

}  // namespace ocb
