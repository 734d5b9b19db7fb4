// Free-parameter minimization of the dual upper bounds and the best-bound
// envelope. The optimizer is a deterministic Nelder-Mead run in log-parameter
// space (positivity by construction), multi-started from the closed-form
// seed and a log grid around it.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ocb/bounds.hpp"

namespace ocb {

struct NelderMeadOptions {
    int max_evals = 400;
    double rel_tol = 1e-9;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    long evaluations = 0;
    bool converged = false;
};

/// Minimizes f over R^n with fixed, deterministic update rules.
/// Non-finite objective values are treated as +inf (rejected points).
template <typename F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0, const NelderMeadOptions& opts = {}) {
    const std::size_t n = x0.size();
    const double inf = std::numeric_limits<double>::infinity();
    long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        return std::isfinite(v) ? v : inf;
    };

    struct Vertex {
        std::vector<double> x;
        double v;
    };
    std::vector<Vertex> simplex;
    simplex.push_back({x0, eval(x0)});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = x0;
        x[i] += 0.5;
        simplex.push_back({std::move(x), 0.0});
        simplex.back().v = eval(simplex.back().x);
    }
    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
    };
    order();

    bool converged = false;
    while (evals < opts.max_evals) {
        const double spread = simplex.back().v - simplex.front().v;
        if (spread <= opts.rel_tol * (std::fabs(simplex.front().v) + 1e-300)) {
            converged = true;
            break;
        }
        // centroid of all but the worst vertex
        std::vector<double> c(n, 0.0);
        for (std::size_t k = 0; k + 1 < simplex.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) c[i] += simplex[k].x[i];
        for (double& ci : c) ci /= static_cast<double>(n);

        auto combine = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = c[i] + t * (simplex.back().x[i] - c[i]);
            return x;
        };
        const auto xr = combine(-1.0);
        const double vr = eval(xr);
        if (vr < simplex.front().v) {
            const auto xe = combine(-2.0);
            const double ve = eval(xe);
            if (ve < vr)
                simplex.back() = {xe, ve};
            else
                simplex.back() = {xr, vr};
        } else if (vr < simplex[simplex.size() - 2].v) {
            simplex.back() = {xr, vr};
        } else {
            const bool outside = vr < simplex.back().v;
            const auto xc = combine(outside ? -0.5 : 0.5);
            const double vc = eval(xc);
            if (vc < std::min(vr, simplex.back().v)) {
                simplex.back() = {xc, vc};
            } else {
                // shrink toward the best vertex
                for (std::size_t k = 1; k < simplex.size(); ++k) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[k].x[i] = simplex[0].x[i] + 0.5 * (simplex[k].x[i] - simplex[0].x[i]);
                    simplex[k].v = eval(simplex[k].x);
                }
            }
        }
        order();
    }
    return NelderMeadResult{simplex.front().x, simplex.front().v, evals, converged};
}

/// Outcome of one bound minimization. `value <= seed_value` always holds:
/// the closed-form seed is kept whenever the optimizer cannot improve on it.
struct OptResult {
    std::vector<double> argmin;  // native parameters (delta, mu) / (delta) / (delta, beta)
    double value = 0.0;
    double seed_value = 0.0;
    long evaluations = 0;
    bool converged = false;
    int formula = 0;
};

namespace detail {

// multi-start offsets: the seed itself plus a grid of +-2 decades around it
inline std::vector<std::vector<double>> log_grid_starts(const std::vector<double>& seed_log, int per_axis = 5) {
    std::vector<std::vector<double>> starts{seed_log};
    const double span = 2.0 * std::log(10.0);
    if (seed_log.size() == 1) {
        for (int i = 0; i < per_axis; ++i) {
            const double t = -span + 2.0 * span * i / (per_axis - 1);
            if (t == 0.0) continue;
            starts.push_back({seed_log[0] + t});
        }
        return starts;
    }
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j) {
            const double ti = -span + 2.0 * span * i / (per_axis - 1);
            const double tj = -span + 2.0 * span * j / (per_axis - 1);
            if (ti == 0.0 && tj == 0.0) continue;
            starts.push_back({seed_log[0] + ti, seed_log[1] + tj});
        }
    return starts;
}

template <typename Obj>
OptResult multistart_minimize(Obj&& obj, const std::vector<double>& seed_log, double seed_value,
                              int formula_id, const NelderMeadOptions& opts = {}) {
    OptResult out;
    out.seed_value = seed_value;
    out.value = seed_value;
    out.formula = formula_id;
    std::vector<double> best_log = seed_log;
    for (const auto& start : log_grid_starts(seed_log)) {
        const auto r = nelder_mead(obj, start, opts);
        out.evaluations += r.evaluations;
        if (r.value < out.value) {
            out.value = r.value;
            best_log = r.x;
            out.converged = out.converged || r.converged;
        } else if (r.converged) {
            out.converged = true;
        }
    }
    out.argmin.reserve(best_log.size());
    for (double v : best_log) out.argmin.push_back(std::exp(v));
    return out;
}

}  // namespace detail

/// Minimizes the two-parameter dual bound of the average-dominated regime
/// over delta, mu > 0.
inline OptResult minimize_upper_case1(double peak, double sigma, double alpha) {
    const auto seed = default_params_case1(peak, sigma, alpha);
    const double seed_value = upper_case1_dual(peak, sigma, alpha, seed.delta, seed.mu).nats;
    auto obj = [&](const std::vector<double>& v) {
        return upper_case1_dual(peak, sigma, alpha, std::exp(v[0]), std::exp(v[1])).nats;
    };
    return detail::multistart_minimize(obj, {std::log(seed.delta), std::log(seed.mu)}, seed_value,
                                       formula::upper_dual_texp);
}

/// Minimizes the one-parameter dual bound of the symmetric regime over delta > 0.
inline OptResult minimize_upper_case2(double peak, double sigma) {
    const double seed_delta = default_delta_case2(peak, sigma);
    const double seed_value = upper_case2_dual(peak, sigma, seed_delta).nats;
    auto obj = [&](const std::vector<double>& v) {
        return upper_case2_dual(peak, sigma, std::exp(v[0])).nats;
    };
    return detail::multistart_minimize(obj, {std::log(seed_delta)}, seed_value, formula::upper_dual_uniform);
}

/// Minimizes the negative-offset average-only dual bound. The offset is
/// searched through the substitution delta = -sigma/sqrt(e) - t, t > 0, so
/// every evaluated point lies inside the branch's domain. When the
/// closed-form seed offset is out of range (large average), the search is
/// seeded at the domain edge instead.
inline OptResult minimize_upper_case3_low(double average, double sigma) {
    const double dlim = kCase3DeltaLimitFactor * sigma;
    Case3Params seed{};
    if (average / sigma <= kCase3LowRatioLimit) {
        seed = default_params_case3_low(average, sigma);
    } else {
        seed.delta = dlim - sigma;
        const double base = average + sigma / detail::kSqrt2Pi;
        seed.beta = 0.5 * base +
                    0.5 * std::sqrt(base * base + 4.0 * base * detail::scaled_tail_mass(seed.delta, sigma));
    }
    const double t_seed = std::max(dlim - seed.delta, 1e-8 * sigma);
    const double seed_value = upper_case3_low(average, sigma, dlim - t_seed, seed.beta).nats;
    auto obj = [&](const std::vector<double>& v) {
        return upper_case3_low(average, sigma, dlim - std::exp(v[0]), std::exp(v[1])).nats;
    };
    OptResult out = detail::multistart_minimize(obj, {std::log(t_seed), std::log(seed.beta)}, seed_value,
                                                formula::upper_dual_exp_low);
    out.argmin[0] = dlim - out.argmin[0];  // back to the native offset
    return out;
}

/// Minimizes the nonnegative-offset average-only dual bound over
/// delta >= 0, beta > 0.
inline OptResult minimize_upper_case3_high(double average, double sigma) {
    const auto seed = default_params_case3_high(average, sigma);
    const double seed_value = upper_case3_high(average, sigma, seed.delta, seed.beta).nats;
    auto obj = [&](const std::vector<double>& v) {
        return upper_case3_high(average, sigma, std::exp(v[0]), std::exp(v[1])).nats;
    };
    return detail::multistart_minimize(obj, {std::log(std::max(seed.delta, 1e-8 * sigma)),
                                             std::log(seed.beta)},
                                       seed_value, formula::upper_dual_exp_high);
}

/// Minimizes both average-only dual bounds and returns the smaller.
inline OptResult minimize_upper_case3(double average, double sigma) {
    const OptResult low = minimize_upper_case3_low(average, sigma);
    const OptResult high = minimize_upper_case3_high(average, sigma);
    OptResult best = low.value <= high.value ? low : high;
    best.evaluations = low.evaluations + high.evaluations;
    best.converged = low.converged || high.converged;
    return best;
}

/// Best lower and upper bound at one constraint instance, with the formula
/// ids that achieve them.
struct Envelope {
    double lower = 0.0;
    double upper = 0.0;
    double gap = 0.0;
    std::vector<int> lower_contributors;
    std::vector<int> upper_contributors;
};

inline Envelope envelope(const ConstraintSpec& spec) {
    Envelope env;
    const CaseTag tag = case_of(spec);
    if (spec.degenerate()) {
        switch (tag) {
            case CaseTag::I:
                env.lower_contributors = {formula::lower_trunc_exp};
                env.upper_contributors = {formula::upper_gauss_moment};
                break;
            case CaseTag::II:
                env.lower_contributors = {formula::lower_uniform};
                env.upper_contributors = {formula::upper_gauss_peak};
                break;
            case CaseTag::III:
                env.lower_contributors = {formula::lower_exp};
                env.upper_contributors = {formula::upper_dual_exp_high};
                break;
        }
        return env;
    }
    switch (tag) {
        case CaseTag::I: {
            const double A = *spec.peak, s = spec.sigma, a = spec.alpha();
            env.lower = lower_case1(A, s, a).nats;
            env.lower_contributors = {formula::lower_trunc_exp};
            const double up_gauss = upper_case1_gauss(A, s, a).nats;
            const OptResult up_dual = minimize_upper_case1(A, s, a);
            if (up_gauss <= up_dual.value) {
                env.upper = up_gauss;
                env.upper_contributors = {formula::upper_gauss_moment};
            } else {
                env.upper = up_dual.value;
                env.upper_contributors = {formula::upper_dual_texp};
            }
            break;
        }
        case CaseTag::II: {
            const double A = *spec.peak, s = spec.sigma;
            env.lower = lower_case2(A, s).nats;
            env.lower_contributors = {formula::lower_uniform};
            const double up_gauss = upper_case2_gauss(A, s).nats;
            const OptResult up_dual = minimize_upper_case2(A, s);
            if (up_gauss <= up_dual.value) {
                env.upper = up_gauss;
                env.upper_contributors = {formula::upper_gauss_peak};
            } else {
                env.upper = up_dual.value;
                env.upper_contributors = {formula::upper_dual_uniform};
            }
            break;
        }
        case CaseTag::III: {
            const double E = spec.average, s = spec.sigma;
            env.lower = lower_case3(E, s).nats;
            env.lower_contributors = {formula::lower_exp};
            const OptResult up = minimize_upper_case3(E, s);
            env.upper = up.value;
            env.upper_contributors = {up.formula};
            break;
        }
    }
    env.gap = env.upper - env.lower;
    return env;
}

}  // namespace ocb
