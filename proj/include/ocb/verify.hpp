// Named invariant suites behind the `verify` subcommand. Each check returns
// a machine-readable pass/fail line; a suite passes only if every check does.
#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ocb/asymptotics.hpp"
#include "ocb/oracle.hpp"
#include "ocb/optimize.hpp"

namespace ocb {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Suite {
    std::vector<CheckResult> results;
    void add(const std::string& name, bool pass, const std::string& detail = {}) {
        results.push_back({name, pass, detail});
    }
};

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) v[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return v;
}

// strict-inequality margin used by the property grids
inline double margin(double lhs) { return 1e-15 * std::max(1.0, std::fabs(lhs)); }

}  // namespace detail

// ---------------------------------------------------------------------------
// lemmas: Q-function toolkit, the rate map phi, and the log-factor positivity
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_lemmas() {
    detail::Suite s;

    {  // reflection and midpoint value
        bool ok = std::fabs(q(0.0) - 0.5) < 1e-15;
        double worst = 0.0;
        for (const double xi : detail::linspace(-10.0, 10.0, 2001)) {
            const double r = std::fabs(q(-xi) + q(xi) - 1.0);
            worst = std::max(worst, r);
            ok = ok && r <= 1e-14;
        }
        s.add("q_reflection", ok, "max |q(-x)+q(x)-1| = " + detail::num(worst));
    }
    {  // tail bracket, checked in the log domain; the lower arm needs xi > 1
        bool ok = true;
        for (const double xi : detail::logspace(1e-3, 40.0, 2001)) {
            const double lq = log_q(xi);
            const double lu = -std::log(detail::kSqrt2Pi * xi) - 0.5 * xi * xi;
            ok = ok && lq < lu;
            if (xi > 1.0) ok = ok && lu + std::log1p(-1.0 / (xi * xi)) < lq;
        }
        s.add("q_tail_bracket", ok);
    }
    {  // half-Gaussian dominance
        bool ok = true;
        for (const double xi : detail::linspace(0.0, 40.0, 2001))
            ok = ok && log_q(xi) <= detail::kLogHalf - 0.5 * xi * xi + 1e-12;
        s.add("q_half_gauss_bound", ok);
    }
    {  // strict decrease, and the convex/concave split of the second differences;
       // the sign checks stop where the curvature drops below one ulp of q
        bool ok = true;
        const auto grid = detail::linspace(-8.0, 8.0, 2001);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) ok = ok && q(grid[i]) > q(grid[i + 1]);
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double dd = q(grid[i - 1]) - 2.0 * q(grid[i]) + q(grid[i + 1]);
            if (grid[i - 1] >= 0.05) ok = ok && dd > 0.0;
            if (grid[i + 1] <= -0.05 && grid[i - 1] >= -7.0) ok = ok && dd < 0.0;
        }
        s.add("q_monotone_convexity", ok);
    }
    {  // window function: concavity, symmetry, peak at the midpoint. The
       // second difference is evaluated through its two tail-curvature terms,
       // which keeps it meaningful where the window itself is flat to one ulp.
        bool ok = true;
        for (const double xi0 : {0.0, 0.5, 3.0})
            for (const double gamma : {0.1, 1.0, 10.0}) {
                const auto grid = detail::linspace(0.0, gamma, 401);
                const double h = grid[1] - grid[0];
                double best = -1.0, best_xi = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const double v = lemma4_f(grid[i], xi0, gamma);
                    if (v > best) {
                        best = v;
                        best_xi = grid[i];
                    }
                    if (i >= 1 && i + 1 < grid.size()) {
                        const double ddq_left = q(xi0 + grid[i] - h) - 2.0 * q(xi0 + grid[i]) +
                                                q(xi0 + grid[i] + h);
                        const double m = xi0 + gamma - grid[i];
                        const double ddq_right = q(m - h) - 2.0 * q(m) + q(m + h);
                        ok = ok && ddq_left + ddq_right > 0.0;  // window curvature is its negative
                    }
                }
                // the peak flattens below one ulp over a width set by the curvature
                const double mid = xi0 + 0.5 * gamma;
                const double curv = 2.0 * mid * std::exp(-0.5 * mid * mid) / detail::kSqrt2Pi;
                const double flat = curv > 0 ? std::sqrt(4.0 * 2.3e-16 / curv) : gamma;
                ok = ok && std::fabs(best_xi - 0.5 * gamma) <= std::max(h, flat) + 1e-12;
                for (const double d : detail::linspace(0.0, 0.5 * gamma, 101)) {
                    const double a = lemma4_f(0.5 * gamma + d, xi0, gamma);
                    const double b = lemma4_f(0.5 * gamma - d, xi0, gamma);
                    ok = ok && std::fabs(a - b) <= 1e-14;
                }
            }
        s.add("window_concave_symmetric", ok);
    }
    {  // xi q(xi - mu) <= mu for mu >= 1/sqrt(e)
        bool ok = true;
        for (const double mu : {std::exp(-0.5), 1.0, 5.0})
            for (const double xi : detail::linspace(0.0, 50.0, 2001))
                ok = ok && xi * q(xi - mu) <= mu + detail::margin(mu);
        s.add("scaled_tail_bound", ok);
    }
    {  // 1 - q(xi - mu) <= 1 - q(-mu) + (xi/mu) q(-mu)
        bool ok = true;
        for (const double mu : {0.1, 0.5, 1.0, 3.0, 10.0})
            for (const double xi : detail::linspace(1e-6, 50.0, 2001)) {
                const double lhs = 1.0 - q(xi - mu);
                const double rhs = 1.0 - q(-mu) + (xi / mu) * q(-mu);
                ok = ok && lhs <= rhs + detail::margin(rhs);
            }
        s.add("shifted_cdf_linear_bound", ok);
    }
    {  // phi: strict decrease on (0, 100], limits, and inversion round trip
        bool ok = true;
        const auto grid = detail::logspace(1e-6, 100.0, 2001);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) ok = ok && phi(grid[i]) > phi(grid[i + 1]);
        ok = ok && phi(1e-8) > 0.5 - 1e-8 && phi(1e-8) < 0.5;
        ok = ok && phi(1e6) < 1.1e-6;
        ok = ok && std::fabs(1e3 * phi(1e3) - 1.0) < 1e-6;
        double worst = 0.0;
        for (const double a : detail::logspace(1e-6, 0.4999, 50)) {
            const MuStar m = solve_mu_star(a);
            worst = std::max(worst, std::fabs(phi(m.mu) - a));
        }
        ok = ok && worst <= 1e-12;
        s.add("phi_monotone_invertible", ok, "max inversion residual = " + detail::num(worst));
    }
    {  // positivity of the dual texp log factor over a 10^4-point grid
        bool ok = true;
        for (const double A : detail::logspace(1e-3, 1e3, 10))
            for (const double sg : detail::logspace(0.1, 10.0, 10))
                for (const double d : detail::logspace(1e-3 * sg, 1e2 * sg, 10))
                    for (const double mu : detail::logspace(1e-3, 1e3, 10)) {
                        const double lf = std::log(A / sg) + logdiffexp(mu * d / A, -mu * (1.0 + d / A)) -
                                          std::log(detail::kSqrt2Pi * mu) - log1m2q(d / sg);
                        ok = ok && lf >= -1e-12;
                    }
        s.add("dual_texp_log_factor_nonneg", ok);
    }
    {  // (A + 2 delta) / (sqrt(2 pi) sigma (1 - 2 q(delta/sigma))) >= 1
        bool ok = true;
        for (const double A : detail::logspace(1e-3, 1e3, 40))
            for (const double d : detail::logspace(1e-3, 1e2, 40)) {
                const double lf = std::log(A + 2.0 * d) - std::log(detail::kSqrt2Pi) - log1m2q(d);
                ok = ok && lf >= -1e-12;
            }
        s.add("dual_uniform_log_factor_nonneg", ok);
    }
    {  // the two closed forms of chi agree where both are well conditioned
        bool ok = true;
        double worst = 0.0;
        for (const double a : detail::linspace(0.07, 0.4999, 200)) {
            const double r = std::fabs(chi(a) - detail::chi_direct(a));
            worst = std::max(worst, r);
            ok = ok && r <= 1e-10;
        }
        s.add("chi_identity", ok, "max |route difference| = " + detail::num(worst));
    }
    {  // chi continuity at the regime boundary
        const double left = chi(0.5 - 1e-7);
        const bool ok = std::fabs(left - (-kHalfLog2PiE)) < 1e-6;
        s.add("chi_boundary_continuity", ok, "chi(1/2-) - chi(1/2) = " + detail::num(left + kHalfLog2PiE));
    }
    return s.results;
}

// ---------------------------------------------------------------------------
// sandwich: upper >= lower everywhere, continuity, monotonicity, BA inside
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_sandwich(int ba_n_in = 256, int ba_n_out = 2048) {
    detail::Suite s;

    {  // closed-form sandwich with default parameters, all cases
        bool ok = true;
        double worst = 0.0;
        for (const double db : detail::linspace(-20.0, 60.0, 81)) {
            const double r = ratio_from_db(db);
            for (const double a : {0.1, 0.25, 0.4}) {
                const double lo = lower_case1(r, 1.0, a).nats;
                const auto p = default_params_case1(r, 1.0, a);
                const double u1 = upper_case1_gauss(r, 1.0, a).nats;
                const double u2 = upper_case1_dual(r, 1.0, a, p.delta, p.mu).nats;
                worst = std::max(worst, std::max(lo - u1, lo - u2));
                ok = ok && u1 >= lo - 1e-12 && u2 >= lo - 1e-12;
            }
            {
                const double lo = lower_case2(r, 1.0).nats;
                const double u1 = upper_case2_gauss(r, 1.0).nats;
                const double u2 = upper_case2_dual(r, 1.0, default_delta_case2(r, 1.0)).nats;
                worst = std::max(worst, std::max(lo - u1, lo - u2));
                ok = ok && u1 >= lo - 1e-12 && u2 >= lo - 1e-12;
            }
            {
                const double lo = lower_case3(r, 1.0).nats;
                const auto ph = default_params_case3_high(r, 1.0);
                const double u2 = upper_case3_high(r, 1.0, ph.delta, ph.beta).nats;
                ok = ok && u2 >= lo - 1e-12;
                if (r <= kCase3LowRatioLimit) {
                    const auto pl = default_params_case3_low(r, 1.0);
                    const double u1 = upper_case3_low(r, 1.0, pl.delta, pl.beta).nats;
                    ok = ok && u1 >= lo - 1e-12;
                }
            }
        }
        s.add("closed_form_sandwich", ok, "worst lower-upper overshoot = " + detail::num(worst));
    }
    {  // optimized dual bounds never undercut the matching lower bound
        bool ok = true;
        for (const double db : detail::linspace(-10.0, 60.0, 29)) {
            const double r = ratio_from_db(db);
            ok = ok && minimize_upper_case1(r, 1.0, 0.1).value >= lower_case1(r, 1.0, 0.1).nats - 1e-6;
            ok = ok && minimize_upper_case2(r, 1.0).value >= lower_case2(r, 1.0).nats - 1e-6;
            ok = ok && minimize_upper_case3(r, 1.0).value >= lower_case3(r, 1.0).nats - 1e-6;
        }
        s.add("optimized_upper_above_lower", ok);
    }
    {  // regime-boundary continuity of the lower bounds
        const double A = 5.0;
        const double gap = std::fabs(lower_case1(A, 1.0, 0.5 - 1e-7).nats - lower_case2(A, 1.0).nats);
        s.add("lower_bound_boundary_continuity", gap < 1e-6, "difference = " + detail::num(gap));
    }
    {  // lower bounds nondecreasing in the available power
        bool ok = true;
        const auto grid = detail::logspace(1e-3, 1e3, 200);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            ok = ok && lower_case1(grid[i + 1], 1.0, 0.2).nats >= lower_case1(grid[i], 1.0, 0.2).nats;
            ok = ok && lower_case2(grid[i + 1], 1.0).nats >= lower_case2(grid[i], 1.0).nats;
            ok = ok && lower_case3(grid[i + 1], 1.0).nats >= lower_case3(grid[i], 1.0).nats;
        }
        s.add("lower_bounds_monotone", ok);
    }
    {  // symmetric regime bounds carry no dependence on the mean ratio
        bool ok = true;
        for (const double a : {0.5, 0.6, 0.75, 0.9, 1.0}) {
            const auto spec = ConstraintSpec::peak_and_average(4.0, a * 4.0, 1.0);
            ok = ok && case_of(spec) == CaseTag::II;
        }
        s.add("symmetric_regime_dispatch", ok);
    }
    {  // alternating-maximization estimates lie inside the envelope
        bool ok = true;
        std::string detail_str;
        for (const double snr : {3.0, 10.0, 30.0})
            for (const double a : {0.1, 0.3, 0.6}) {
                const auto spec = ConstraintSpec::peak_and_average(snr, a * snr, 1.0);
                const auto g = build_grid(spec, ba_n_in, ba_n_out);
                const auto ba = blahut_arimoto(g, spec);
                const auto env = envelope(spec);
                const bool inside = ba.capacity >= env.lower - 0.01 && ba.capacity <= env.upper + 0.01;
                ok = ok && inside;
                if (!inside)
                    detail_str += " (" + detail::num(snr) + "," + detail::num(a) + ")=" +
                                  detail::num(ba.capacity);
            }
        for (const double e : {1.0, 3.0, 10.0}) {
            const auto spec = ConstraintSpec::average_only(e, 1.0);
            const auto g = build_grid(spec, ba_n_in, ba_n_out);
            const auto ba = blahut_arimoto(g, spec);
            const auto env = envelope(spec);
            ok = ok && ba.capacity >= env.lower - 0.01 && ba.capacity <= env.upper + 0.01;
        }
        s.add("ba_inside_envelope", ok, detail_str);
    }
    return s.results;
}

// ---------------------------------------------------------------------------
// asymptotics: convergence toward the high- and low-power laws
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_asymptotics() {
    detail::Suite s;
    const std::vector<double> high_grid{20.0, 30.0, 40.0, 50.0, 60.0};

    const struct {
        CaseTag tag;
        std::optional<double> alpha;
        const char* name;
    } configs[] = {{CaseTag::I, 0.1, "high_snr_case1_a01"},
                   {CaseTag::I, 0.4, "high_snr_case1_a04"},
                   {CaseTag::II, std::nullopt, "high_snr_case2"},
                   {CaseTag::III, std::nullopt, "high_snr_case3"}};
    for (const auto& c : configs) {
        const auto rep = convergence_report(c.tag, c.alpha, Regime::high, high_grid);
        s.add(c.name, rep.converging,
              "final |upper-asym| = " + detail::num(rep.upper_dev.back()) +
                  ", |lower-asym| = " + detail::num(rep.lower_dev.back()));
    }
    {  // quadratic laws at vanishing power, approached from below
        const double r = ratio_from_db(-40.0);
        const double v1 = upper_case1_gauss(r, 1.0, 0.1).nats / (r * r);
        bool ok = v1 <= 0.045 && v1 >= 0.045 * (1.0 - 1e-3);
        const double v2 = upper_case2_gauss(r, 1.0).nats / (r * r);
        ok = ok && v2 <= 0.125 && v2 >= 0.125 * (1.0 - 1e-3);
        s.add("low_snr_quadratic_laws", ok,
              "ratios " + detail::num(v1 / 0.045) + ", " + detail::num(v2 / 0.125));
    }
    {  // average-only scaling-law bracket at the lowest tested power
        const std::vector<double> grid{-60.0};
        const auto rep = convergence_report(CaseTag::III, std::nullopt, Regime::low, grid);
        s.add("low_snr_case3_bracket", rep.converging,
              "upper/law at -60 dB = " + detail::num(rep.upper_dev.back()));
    }
    return s.results;
}

// ---------------------------------------------------------------------------
// oracle: grid sanity, densities, duality gaps, BA behaviour, symmetrization
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_oracle(int n_in = 256, int n_out = 2048) {
    detail::Suite s;

    const auto spec = ConstraintSpec::peak_and_average(5.0, 1.5, 1.0);
    const auto grid = build_grid(spec, n_in, n_out);

    {  // kernel rows integrate to one
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < grid.n_in(); ++i) {
            double sum = 0.0;
            for (int j = 0; j < grid.n_out(); ++j) sum += grid.kw[static_cast<std::size_t>(i) * grid.y.size() + j];
            worst = std::max(worst, std::fabs(sum - 1.0));
            ok = ok && std::fabs(sum - 1.0) <= 1e-6;
        }
        s.add("kernel_rows_normalized", ok, "max |sum-1| = " + detail::num(worst));
    }
    {  // reference output densities integrate to one over the output grid
        bool ok = true;
        double worst = 0.0;
        const auto p1 = default_params_case1(5.0, 1.0, 0.3);
        const auto p3h = default_params_case3_high(1.5, 1.0);
        const OutputDensity densities[] = {
            output_density_gauss_moment(5.0, 1.5, 1.0),
            output_density_texp_tails(5.0, 1.0, p1.delta, p1.mu),
            output_density_gauss_peak(5.0, 1.0),
            output_density_uniform_tails(5.0, 1.0, default_delta_case2(5.0, 1.0)),
            output_density_exp_shifted(1.0, p3h.delta, p3h.beta),
        };
        // widen the span for the shifted-exponential tail
        const auto spec3 = ConstraintSpec::average_only(1.5, 1.0);
        const auto grid3 = build_grid(spec3, n_in, n_out);
        for (const auto& d : densities) {
            const ChannelGrid& g = d.id == DensityId::exp_shifted ? grid3 : grid;
            double mass = 0.0;
            for (int j = 0; j < g.n_out(); ++j) mass += g.wy[j] * std::exp(d.log_pdf(g.y[j]));
            worst = std::max(worst, std::fabs(mass - 1.0));
            ok = ok && std::fabs(mass - 1.0) <= 1e-8;
        }
        s.add("output_densities_normalized", ok, "max |mass-1| = " + detail::num(worst));
    }
    {  // maxent densities: mass, mean, and the uniform limit
        bool ok = true;
        const auto d1 = maxent_truncated_exp(5.0, 0.25);
        const auto du = maxent_uniform(5.0);
        const auto d3 = maxent_exponential(1.5);
        auto mass_mean = [&](const MaxentDensity& d, double hi) {
            double m0 = 0.0, m1 = 0.0;
            const int n = 20001;
            for (int i = 0; i < n; ++i) {
                const double x = hi * i / (n - 1);
                const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                m0 += w * d.pdf(x);
                m1 += w * d.pdf(x) * x;
            }
            const double dx = hi / (n - 1);
            return std::pair{m0 * dx, m1 * dx};
        };
        const auto [m0a, m1a] = mass_mean(d1, 5.0);
        ok = ok && std::fabs(m0a - 1.0) <= 1e-10 && std::fabs(m1a - d1.mean) <= 1e-8;
        const auto [m0b, m1b] = mass_mean(du, 5.0);
        ok = ok && std::fabs(m0b - 1.0) <= 1e-10 && std::fabs(m1b - du.mean) <= 1e-8;
        const auto [m0c, m1c] = mass_mean(d3, 40.0 * 1.5);
        ok = ok && std::fabs(m0c - 1.0) <= 1e-10 && std::fabs(m1c - d3.mean) <= 1e-6;
        const auto near_uniform = maxent_truncated_exp(5.0, 0.5 - 1e-9);
        for (const double x : detail::linspace(0.0, 5.0, 101))
            ok = ok && std::fabs(near_uniform.pdf(x) - 0.2) <= 1e-6;
        s.add("maxent_densities", ok);
    }
    {  // entropy-power chain: quadrature MI dominates the closed-form floor
        bool ok = true;
        const MaxentDensity ds[] = {maxent_truncated_exp(5.0, 0.3), maxent_uniform(5.0),
                                    maxent_exponential(1.5)};
        for (const auto& d : ds) {
            const bool unbounded = !std::isfinite(d.support_hi);
            const auto sp = unbounded ? ConstraintSpec::average_only(d.mean, 1.0)
                                      : ConstraintSpec::peak_and_average(d.support_hi, d.mean, 1.0);
            const auto g = build_grid(sp, 2048, n_out);
            const double mi = mutual_information(discretize(d.pdf, g), g);
            const double floor_nats =
                0.5 * std::log1p(std::exp(2.0 * d.entropy) / (2.0 * detail::kPi * detail::kE));
            ok = ok && mi >= floor_nats - 1e-4;
        }
        s.add("entropy_power_floor", ok);
    }
    {  // duality gap nonnegative across the density/input/power matrix
        bool ok = true;
        double worst = 1e99;
        for (const double snr : {2.0, 5.0, 10.0}) {
            const double E = 0.3 * snr;
            const auto sp = ConstraintSpec::peak_and_average(snr, E, 1.0);
            const auto g = build_grid(sp, 512, n_out);
            const auto p1 = default_params_case1(snr, 1.0, 0.3);
            const auto p3h = default_params_case3_high(E, 1.0);
            const OutputDensity densities[] = {
                output_density_gauss_moment(snr, E, 1.0),
                output_density_texp_tails(snr, 1.0, p1.delta, p1.mu),
                output_density_gauss_peak(snr, 1.0),
                output_density_uniform_tails(snr, 1.0, default_delta_case2(snr, 1.0)),
                output_density_exp_shifted(1.0, p3h.delta, p3h.beta),
            };
            const DiscreteInput inputs[] = {
                discretize(maxent_uniform(snr).pdf, g),
                discretize(maxent_truncated_exp(snr, 0.3).pdf, g),
                DiscreteInput{{0.0, snr}, {0.5, 0.5}},
                DiscreteInput{{0.0, 0.4 * snr, snr}, {0.5, 0.3, 0.2}},
            };
            for (const auto& d : densities)
                for (const auto& in : inputs) {
                    const double gap = duality_gap(in, d, g);
                    worst = std::min(worst, gap);
                    ok = ok && gap >= -1e-6;
                }
        }
        s.add("duality_gap_nonneg", ok, "min gap = " + detail::num(worst));
    }
    {  // a reference law equal to the true output law closes the gap
        const DiscreteInput in{{0.0, 2.0, 5.0}, {0.4, 0.35, 0.25}};
        const double sg = grid.sigma;
        OutputDensity self{DensityId::gauss_moment, [in, sg](double y) {
                               double f = 0.0;
                               for (std::size_t i = 0; i < in.points.size(); ++i)
                                   f += in.mass[i] * std::exp(detail::gauss_log_pdf(y, in.points[i], sg));
                               return std::log(f);
                           }};
        const double gap = duality_gap(in, self, grid);
        s.add("self_density_zero_gap", std::fabs(gap) <= 1e-8, "gap = " + detail::num(gap));
    }
    {  // alternating maximization: monotone objective, constraint honored
        const auto sp = ConstraintSpec::peak_and_average(10.0, 3.0, 1.0);
        const auto g = build_grid(sp, n_in, n_out);
        const auto ba = blahut_arimoto(g, sp);
        bool mono = true;
        for (std::size_t i = 0; i + 1 < ba.objective_trace.size(); ++i)
            mono = mono && ba.objective_trace[i + 1] >= ba.objective_trace[i] - 1e-10;
        bool ok = mono && ba.input.mean() <= 3.0 + 1e-9;
        double mass = ba.input.total_mass();
        ok = ok && std::fabs(mass - 1.0) <= 1e-12;
        s.add("ba_monotone_feasible", ok,
              "mean = " + detail::num(ba.input.mean()) + ", iterations = " + detail::num(ba.iterations));
    }
    {  // grid refinement stability
        const auto sp = ConstraintSpec::peak_and_average(10.0, 3.0, 1.0);
        const auto c1 = blahut_arimoto(build_grid(sp, n_in, n_out), sp).capacity;
        const auto c2 = blahut_arimoto(build_grid(sp, 2 * n_in, 2 * n_out), sp).capacity;
        s.add("ba_grid_refinement", std::fabs(c2 - c1) < 1e-3, "drift = " + detail::num(c2 - c1));
    }
    {  // symmetric-mean witness at a mean-rich instance
        const auto sp = ConstraintSpec::peak_and_average(10.0, 9.0, 1.0);
        const auto g = build_grid(sp, n_in, n_out);
        const auto ba = blahut_arimoto(g, sp);
        const double spacing = 10.0 / (n_in - 1);
        s.add("optimal_mean_is_half_peak", std::fabs(ba.input.mean() - 5.0) <= spacing,
              "mean = " + detail::num(ba.input.mean()));
    }
    {  // symmetrization: exact mean, no loss of information
        const DiscreteInput in{{0.0, 0.8 * 5.0}, {0.9, 0.1}};
        const auto sym = symmetrize(in, 5.0);
        bool ok = std::fabs(sym.mean() - 2.5) <= 1e-12;
        ok = ok && mutual_information(sym, grid) >= mutual_information(in, grid) - 1e-9;
        const DiscreteInput point{{0.0}, {1.0}};
        const auto sp2 = symmetrize(point, 5.0);
        ok = ok && sp2.points.size() == 2 && std::fabs(sp2.mass[0] - 0.5) < 1e-15;
        const DiscreteInput already{{0.0, 5.0}, {0.5, 0.5}};
        const auto sp3 = symmetrize(already, 5.0);
        ok = ok && sp3.points.size() == 2 && std::fabs(sp3.mass[0] - 0.5) < 1e-15;
        s.add("symmetrize", ok);
    }
    {  // degenerate input carries no information
        const DiscreteInput point{{0.0}, {1.0}};
        const double mi = mutual_information(point, grid);
        s.add("point_mass_zero_mi", std::fabs(mi) <= 1e-9, "mi = " + detail::num(mi));
    }
    {  // weak binary input matches its quadratic expansion
        const double A = 0.05, a = 0.1;
        const auto sp = ConstraintSpec::peak_and_average(A, a * A, 1.0);
        const auto g = build_grid(sp, 2, 4096);
        const DiscreteInput in{{0.0, A * (1.0 - A)}, {1.0 - a, a}};
        const double mi = mutual_information(in, g);
        const double lead = a * (1.0 - a) * A * A * (1.0 - A) * (1.0 - A) / 2.0;
        const bool ok = std::fabs(mi / lead - 1.0) <= 0.1;
        s.add("weak_binary_expansion", ok, "mi/leading = " + detail::num(mi / lead));
    }
    {  // flash input achieves the average-only low-power scaling
        const double E = 1e-2, c = 3.0;
        const double x1 = std::sqrt(c * std::log(1.0 / E));
        const double law = E * std::sqrt(std::log(1.0 / E));
        const auto sp = ConstraintSpec::peak_and_average(x1, E, 1.0);
        const auto g = build_grid(sp, 2, 4096);
        const DiscreteInput in{{0.0, x1}, {1.0 - E / x1, E / x1}};
        const double mi = mutual_information(in, g);
        const double first_term = E * x1 / 2.0;
        bool ok = std::fabs(first_term - 0.5 * std::sqrt(c) * law) <= 1e-12 * law;
        ok = ok && mi / law >= 0.5;
        s.add("flash_input_scaling", ok, "mi/law = " + detail::num(mi / law));
    }
    return s.results;
}

inline std::vector<CheckResult> verify_suite(const std::string& name) {
    if (name == "lemmas") return verify_lemmas();
    if (name == "sandwich") return verify_sandwich();
    if (name == "asymptotics") return verify_asymptotics();
    if (name == "oracle") return verify_oracle();
    if (name == "all") {
        std::vector<CheckResult> all;
        for (const char* n : {"lemmas", "sandwich", "asymptotics", "oracle"}) {
            auto r = verify_suite(n);
            all.insert(all.end(), r.begin(), r.end());
        }
        return all;
    }
    throw std::domain_error("verify: unknown suite '" + name + "'");
}

}  // namespace ocb
