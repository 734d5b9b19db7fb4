// Independent numerical witnesses: a discretized channel grid, Blahut-Arimoto
// capacity estimates under the mean constraint, quadrature mutual information
// for explicit input laws, the five reference output densities, and the
// duality-gap inequality they must satisfy.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocb/bounds.hpp"

namespace ocb {

/// Discretized channel: uniform input support, composite Gauss-Legendre
/// output quadrature, and the log transition kernel.
struct ChannelGrid {
    std::vector<double> x;       // input points on [0, x_max]
    std::vector<double> y, wy;   // output nodes and quadrature weights
    std::vector<double> k;       // n_in x n_out, row-major: W(y_j | x_i)
    std::vector<double> kw;      // k .* wy, same layout
    double sigma = 1.0;
    double x_max = 0.0;

    int n_in() const { return static_cast<int>(x.size()); }
    int n_out() const { return static_cast<int>(y.size()); }
    double kernel(int i, int j) const { return k[static_cast<std::size_t>(i) * y.size() + j]; }
};

namespace detail {

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored)
inline constexpr int kPanelOrder = 32;
inline constexpr double kGlNode[16] = {
    0.048307665687738316235, 0.144471961582796493485, 0.239287362252137074545,
    0.331868602282127649780, 0.421351276130635345364, 0.506899908932229390024,
    0.587715757240762329041, 0.663044266930215200975, 0.732182118740289680387,
    0.794483795967942406963, 0.849367613732569970134, 0.896321155766052123965,
    0.934906075937739689171, 0.964762255587506430774, 0.985611511545268335400,
    0.997263861849481563545};
inline constexpr double kGlWeight[16] = {
    0.096540088514727800567, 0.095638720079274859419, 0.093844399080804565639,
    0.091173878695763884713, 0.087652093004403811143, 0.083311924226946755222,
    0.078193895787070306472, 0.072345794108848506225, 0.065822222776361846838,
    0.058684093478535547145, 0.050998059262376176196, 0.042835898022226680657,
    0.034273862913021433103, 0.025392065309262059456, 0.016274394730905670605,
    0.007018610009470096600};

inline double gauss_log_pdf(double y, double mean, double sigma) {
    const double z = (y - mean) / sigma;
    return -0.5 * z * z - std::log(kSqrt2Pi * sigma);
}

}  // namespace detail

/// Input support truncation for the average-only regime: generous enough
/// that the exponential reference law keeps less than e^{-40} tail mass
/// beyond it.
inline double case3_truncation(double average, double sigma) {
    return std::max(40.0 * average, average + 10.0 * sigma);
}

/// Builds the discretized channel for one constraint instance. The output
/// nodes cover [-8 sigma, x_max + 8 sigma] with ~n_out nodes in panels of
/// 32-point Gauss-Legendre quadrature.
inline ChannelGrid build_grid(const ConstraintSpec& spec, int n_in, int n_out) {
    if (n_in < 2) throw std::domain_error("build_grid: n_in must be >= 2");
    if (n_out < 16) throw std::domain_error("build_grid: n_out must be >= 16");
    if (spec.degenerate()) throw std::domain_error("build_grid: degenerate constraint instance");
    ChannelGrid g;
    g.sigma = spec.sigma;
    g.x_max = spec.has_peak() ? *spec.peak : case3_truncation(spec.average, spec.sigma);

    g.x.resize(n_in);
    for (int i = 0; i < n_in; ++i) g.x[i] = g.x_max * i / (n_in - 1);

    const double lo = -8.0 * spec.sigma, hi = g.x_max + 8.0 * spec.sigma;
    const int panels = std::max(1, n_out / detail::kPanelOrder);
    const double width = (hi - lo) / panels;
    g.y.reserve(static_cast<std::size_t>(panels) * detail::kPanelOrder);
    g.wy.reserve(g.y.capacity());
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width, c = a + 0.5 * width, h = 0.5 * width;
        for (int m = detail::kPanelOrder / 2 - 1; m >= 0; --m) {
            g.y.push_back(c - h * detail::kGlNode[m]);
            g.wy.push_back(h * detail::kGlWeight[m]);
        }
        for (int m = 0; m < detail::kPanelOrder / 2; ++m) {
            g.y.push_back(c + h * detail::kGlNode[m]);
            g.wy.push_back(h * detail::kGlWeight[m]);
        }
    }

    const std::size_t rows = g.x.size(), cols = g.y.size();
    g.k.resize(rows * cols);
    g.kw.resize(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        double* krow = g.k.data() + i * cols;
        double* kwrow = g.kw.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) {
            krow[j] = std::exp(detail::gauss_log_pdf(g.y[j], g.x[i], g.sigma));
            kwrow[j] = krow[j] * g.wy[j];
        }
    }
    return g;
}

/// Probability masses on a finite support.
struct DiscreteInput {
    std::vector<double> points;
    std::vector<double> mass;

    double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) m += points[i] * mass[i];
        return m;
    }
    double total_mass() const {
        double m = 0.0;
        for (double p : mass) m += p;
        return m;
    }
};

/// Mutual information in nats of a finite-support input over the grid's
/// channel: h(Y) by quadrature of the mixture output density minus the
/// Gaussian noise entropy. Input points need not lie on the grid's x points.
inline double mutual_information(const DiscreteInput& input, const ChannelGrid& g) {
    if (input.points.size() != input.mass.size() || input.points.empty())
        throw std::domain_error("mutual_information: malformed input law");
    const std::size_t cols = g.y.size();
    std::vector<double> f(cols, 0.0);
    for (std::size_t i = 0; i < input.points.size(); ++i) {
        const double p = input.mass[i];
        if (p == 0.0) continue;
        const double xi = input.points[i];
        for (std::size_t j = 0; j < cols; ++j)
            f[j] += p * std::exp(detail::gauss_log_pdf(g.y[j], xi, g.sigma));
    }
    double h_y = 0.0;
    for (std::size_t j = 0; j < cols; ++j)
        if (f[j] > 0.0) h_y -= g.wy[j] * f[j] * std::log(f[j]);
    const double mi = h_y - 0.5 * std::log(2.0 * detail::kPi * detail::kE * g.sigma * g.sigma);
    return std::max(mi, 0.0);
}

/// Projects a density on [0, x_max] onto the grid's input points as
/// normalized trapezoid masses.
inline DiscreteInput discretize(const std::function<double(double)>& pdf, const ChannelGrid& g) {
    DiscreteInput in;
    in.points = g.x;
    in.mass.resize(g.x.size());
    const double dx = g.x.size() > 1 ? g.x[1] - g.x[0] : 1.0;
    double total = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double w = (i == 0 || i + 1 == g.x.size()) ? 0.5 * dx : dx;
        in.mass[i] = std::max(pdf(g.x[i]), 0.0) * w;
        total += in.mass[i];
    }
    if (!(total > 0)) throw std::domain_error("discretize: density vanishes on the grid");
    for (double& m : in.mass) m /= total;
    return in;
}

// ---------------------------------------------------------------------------
// Maximum-entropy input densities behind the entropy-power lower bounds
// ---------------------------------------------------------------------------

/// A named input density with its analytic differential entropy and mean.
struct MaxentDensity {
    std::function<double(double)> pdf;
    double entropy = 0.0;
    double mean = 0.0;
    double support_hi = 0.0;  // density lives on [0, support_hi] (or [0, inf))
};

/// Truncated exponential on [0, peak] with mean alpha*peak; the entropy
/// maximizer under nonnegativity, peak and mean constraints.
inline MaxentDensity maxent_truncated_exp(double peak, double alpha) {
    detail::require_positive(peak, "peak");
    detail::require_alpha_case1(alpha);
    const double ms = solve_mu_star(alpha).mu;
    const double norm = ms / (-std::expm1(-ms)) / peak;
    MaxentDensity d;
    d.pdf = [peak, ms, norm](double x) {
        if (x < 0 || x > peak) return 0.0;
        return norm * std::exp(-ms * x / peak);
    };
    d.entropy = std::log(peak * (-std::expm1(-ms)) / ms) + ms * alpha;
    d.mean = alpha * peak;
    d.support_hi = peak;
    return d;
}

/// Uniform on [0, peak]; the entropy maximizer under a peak constraint alone.
inline MaxentDensity maxent_uniform(double peak) {
    detail::require_positive(peak, "peak");
    MaxentDensity d;
    d.pdf = [peak](double x) { return (x < 0 || x > peak) ? 0.0 : 1.0 / peak; };
    d.entropy = std::log(peak);
    d.mean = 0.5 * peak;
    d.support_hi = peak;
    return d;
}

/// Exponential with mean `average`; the entropy maximizer under
/// nonnegativity and a mean constraint.
inline MaxentDensity maxent_exponential(double average) {
    detail::require_positive(average, "average");
    MaxentDensity d;
    d.pdf = [average](double x) { return x < 0 ? 0.0 : std::exp(-x / average) / average; };
    d.entropy = 1.0 + std::log(average);
    d.mean = average;
    d.support_hi = std::numeric_limits<double>::infinity();
    return d;
}

// ---------------------------------------------------------------------------
// Reference output densities for the duality bounds
// ---------------------------------------------------------------------------

enum class DensityId {
    gauss_moment,    // Gaussian matched to the constrained first two moments
    texp_tails,      // exponential middle with Gaussian tails
    gauss_peak,      // Gaussian for the symmetric peak regime
    uniform_tails,   // flat middle with Gaussian tails
    exp_shifted,     // shifted exponential tail glued to a Gaussian left part
};

inline const char* to_string(DensityId id) {
    switch (id) {
        case DensityId::gauss_moment: return "gauss_moment";
        case DensityId::texp_tails: return "texp_tails";
        case DensityId::gauss_peak: return "gauss_peak";
        case DensityId::uniform_tails: return "uniform_tails";
        default: return "exp_shifted";
    }
}

/// A reference law on the channel output, evaluable in the log domain.
struct OutputDensity {
    DensityId id;
    std::function<double(double)> log_pdf;
};

inline OutputDensity output_density_gauss_moment(double peak, double average, double sigma) {
    detail::require_positive(peak, "peak");
    detail::require_positive(sigma, "sigma");
    if (!(average > 0) || average > peak)
        throw std::domain_error("output_density_gauss_moment: requires 0 < average <= peak");
    const double var = sigma * sigma + average * (peak - average);
    const double sd = std::sqrt(var);
    return {DensityId::gauss_moment,
            [average, sd](double y) { return detail::gauss_log_pdf(y, average, sd); }};
}

inline OutputDensity output_density_texp_tails(double peak, double sigma, double delta, double mu) {
    detail::require_positive(peak, "peak");
    detail::require_positive(sigma, "sigma");
    detail::require_positive(delta, "delta");
    detail::require_positive(mu, "mu");
    // log of mu (1 - 2q(delta/sigma)) / (A (e^{mu delta/A} - e^{-mu(1+delta/A)}))
    const double log_mid_norm = std::log(mu) + log1m2q(delta / sigma) - std::log(peak) -
                                logdiffexp(mu * delta / peak, -mu * (1.0 + delta / peak));
    return {DensityId::texp_tails, [peak, sigma, delta, mu, log_mid_norm](double y) {
                if (y < -delta) return detail::gauss_log_pdf(y, 0.0, sigma);
                if (y > peak + delta) return detail::gauss_log_pdf(y, peak, sigma);
                return log_mid_norm - mu * y / peak;
            }};
}

inline OutputDensity output_density_gauss_peak(double peak, double sigma) {
    detail::require_positive(peak, "peak");
    detail::require_positive(sigma, "sigma");
    const double sd = std::sqrt(sigma * sigma + 0.25 * peak * peak);
    const double mean = 0.5 * peak;
    return {DensityId::gauss_peak, [mean, sd](double y) { return detail::gauss_log_pdf(y, mean, sd); }};
}

inline OutputDensity output_density_uniform_tails(double peak, double sigma, double delta) {
    detail::require_positive(peak, "peak");
    detail::require_positive(sigma, "sigma");
    detail::require_positive(delta, "delta");
    const double log_mid = log1m2q(delta / sigma) - std::log(peak + 2.0 * delta);
    return {DensityId::uniform_tails, [peak, sigma, delta, log_mid](double y) {
                if (y < -delta) return detail::gauss_log_pdf(y, 0.0, sigma);
                if (y > peak + delta) return detail::gauss_log_pdf(y, peak, sigma);
                return log_mid;
            }};
}

inline OutputDensity output_density_exp_shifted(double sigma, double delta, double beta) {
    detail::require_positive(sigma, "sigma");
    detail::require_positive(beta, "beta");
    if (!std::isfinite(delta)) throw std::domain_error("output_density_exp_shifted: delta must be finite");
    const double log_z = detail::log_mix_normalizer(beta, delta, sigma);
    const double s2 = 2.0 * sigma * sigma;
    return {DensityId::exp_shifted, [sigma, delta, beta, log_z, s2](double y) {
                if (y < -delta) return -y * y / s2 - log_z;
                return -delta * delta / s2 - (y + delta) / beta - log_z;
            }};
}

/// Expected relative entropy E_Q[D(W(.|X) || R)] by output quadrature:
/// the raw dual value whose infimum over R is capacity.
inline double dual_value(const DiscreteInput& input, const OutputDensity& density, const ChannelGrid& g) {
    const std::size_t cols = g.y.size();
    std::vector<double> log_r(cols);
    for (std::size_t j = 0; j < cols; ++j) log_r[j] = density.log_pdf(g.y[j]);
    double total = 0.0;
    for (std::size_t i = 0; i < input.points.size(); ++i) {
        const double p = input.mass[i];
        if (p == 0.0) continue;
        const double xi = input.points[i];
        double d = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            const double lw = detail::gauss_log_pdf(g.y[j], xi, g.sigma);
            const double w = std::exp(lw);
            if (w > 0.0) d += g.wy[j] * w * (lw - log_r[j]);
        }
        total += p * d;
    }
    return total;
}

/// E_Q[D(W || R)] - I(Q, W): equals the relative entropy between the true
/// output law and R, hence nonnegative for every admissible pair.
inline double duality_gap(const DiscreteInput& input, const OutputDensity& density, const ChannelGrid& g) {
    return dual_value(input, density, g) - mutual_information(input, g);
}

/// Equal mixture of X and peak - X: mean becomes peak/2 and the mutual
/// information cannot decrease.
inline DiscreteInput symmetrize(const DiscreteInput& input, double peak) {
    detail::require_positive(peak, "peak");
    std::map<double, double> acc;
    for (std::size_t i = 0; i < input.points.size(); ++i) {
        const double xi = input.points[i];
        if (xi < 0 || xi > peak) throw std::domain_error("symmetrize: support outside [0, peak]");
        acc[xi] += 0.5 * input.mass[i];
        acc[peak - xi] += 0.5 * input.mass[i];
    }
    DiscreteInput out;
    out.points.reserve(acc.size());
    out.mass.reserve(acc.size());
    for (const auto& [pt, m] : acc) {
        out.points.push_back(pt);
        out.mass.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Blahut-Arimoto with a bisected mean-constraint multiplier
// ---------------------------------------------------------------------------

struct BaOptions {
    double increment_tol = 1e-9;   // stop when the objective gain per sweep falls below
    long max_iterations = 100000;
    double mean_rel_tol = 1e-6;    // |E[X] - average| <= tol * average at the multiplier
};

struct BaResult {
    double capacity = 0.0;  // mutual information of the returned input
    DiscreteInput input;
    long iterations = 0;
    double multiplier = 0.0;
    std::vector<double> objective_trace;  // per-iteration objective at the final multiplier
    bool converged = false;
};

/// Raised when the alternating maximization fails to converge; carries the
/// last iterate for diagnosis.
struct BaError : std::runtime_error {
    BaResult last;
    explicit BaError(BaResult r)
        : std::runtime_error("blahut_arimoto: no convergence within the iteration budget"),
          last(std::move(r)) {}
};

namespace detail {

struct BaWorkspace {
    std::vector<double> kself;  // sum_j kw_ij log k_ij per row
    std::vector<double> f, logf, d;
};

inline void ba_init(const ChannelGrid& g, BaWorkspace& ws) {
    const std::size_t rows = g.x.size(), cols = g.y.size();
    ws.kself.assign(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        const double* krow = g.k.data() + i * cols;
        const double* kwrow = g.kw.data() + i * cols;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j)
            if (krow[j] > 0.0) acc += kwrow[j] * std::log(krow[j]);
        ws.kself[i] = acc;
    }
    ws.f.resize(cols);
    ws.logf.resize(cols);
    ws.d.resize(rows);
}

// one full alternating-maximization pass at a fixed multiplier; returns the
// objective value I(p) - s E_p[X] of the distribution it was entered with
inline double ba_sweep(const ChannelGrid& g, double s, std::vector<double>& p, BaWorkspace& ws) {
    const std::size_t rows = g.x.size(), cols = g.y.size();
    std::fill(ws.f.begin(), ws.f.end(), 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        const double pi = p[i];
        if (pi == 0.0) continue;
        const double* krow = g.k.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) ws.f[j] += pi * krow[j];
    }
    for (std::size_t j = 0; j < cols; ++j)
        ws.logf[j] = ws.f[j] > 0.0 ? std::log(ws.f[j]) : -745.0;
    double objective = 0.0;
    double gmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
        const double* kwrow = g.kw.data() + i * cols;
        double cross = 0.0;
        for (std::size_t j = 0; j < cols; ++j) cross += kwrow[j] * ws.logf[j];
        ws.d[i] = ws.kself[i] - cross - s * g.x[i];
        objective += p[i] * ws.d[i];
        gmax = std::max(gmax, ws.d[i]);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        p[i] *= std::exp(ws.d[i] - gmax);
        norm += p[i];
    }
    for (std::size_t i = 0; i < rows; ++i) p[i] /= norm;
    return objective;
}

struct BaFixedResult {
    std::vector<double> p;
    double objective = 0.0;
    double mean = 0.0;
    long iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

inline BaFixedResult ba_fixed_multiplier(const ChannelGrid& g, double s, double tol, long max_iter,
                                         BaWorkspace& ws, const std::vector<double>* warm,
                                         bool keep_trace) {
    BaFixedResult r;
    const std::size_t rows = g.x.size();
    r.p = warm ? *warm : std::vector<double>(rows, 1.0 / static_cast<double>(rows));
    double prev = -std::numeric_limits<double>::infinity();
    for (long it = 0; it < max_iter; ++it) {
        const double obj = ba_sweep(g, s, r.p, ws);
        if (keep_trace) r.trace.push_back(obj);
        r.iterations = it + 1;
        r.objective = obj;
        if (std::fabs(obj - prev) < tol) {
            r.converged = true;
            break;
        }
        prev = obj;
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mean += r.p[i] * g.x[i];
    r.mean = mean;
    return r;
}

}  // namespace detail

/// Capacity of the discretized channel under the instance's constraints by
/// alternating maximization; the mean constraint is enforced through an
/// outer bisection on the multiplier.
inline BaResult blahut_arimoto(const ChannelGrid& g, const ConstraintSpec& spec, const BaOptions& opts = {}) {
    const double average = spec.average;
    detail::BaWorkspace ws;
    detail::ba_init(g, ws);

    const double loose_tol = std::max(opts.increment_tol, 1e-7);
    auto run = [&](double s, double tol, const std::vector<double>* warm, bool trace) {
        return detail::ba_fixed_multiplier(g, s, tol, opts.max_iterations, ws, warm, trace);
    };

    // unconstrained first: if its mean already satisfies the constraint the
    // multiplier is zero
    detail::BaFixedResult cur = run(0.0, loose_tol, nullptr, false);
    double s_final = 0.0;
    if (cur.mean > average * (1.0 + 1e-9)) {
        double s_lo = 0.0, s_hi = 1.0 / spec.sigma;
        detail::BaFixedResult hi = run(s_hi, loose_tol, &cur.p, false);
        while (hi.mean > average && s_hi < 1e12) {
            s_lo = s_hi;
            s_hi *= 2.0;
            hi = run(s_hi, loose_tol, &hi.p, false);
        }
        double s_feasible = s_hi;
        std::vector<double> warm = hi.p;
        for (int it = 0; it < 200; ++it) {
            const double s = 0.5 * (s_lo + s_hi);
            const detail::BaFixedResult mid = run(s, loose_tol, &warm, false);
            warm = mid.p;
            if (mid.mean > average)
                s_lo = s;
            else {
                s_hi = s;
                s_feasible = s;
            }
            if (std::fabs(mid.mean - average) <= opts.mean_rel_tol * average) {
                if (mid.mean <= average) s_feasible = s;
                break;
            }
        }
        s_final = s_feasible;
        cur = run(s_final, loose_tol, &warm, false);
    }

    // final pass at the chosen multiplier, at full tolerance, with the trace
    detail::BaFixedResult fin = run(s_final, opts.increment_tol, &cur.p, true);
    // nudge the multiplier up if re-convergence drifted the mean infeasible
    for (int guard = 0; guard < 64 && fin.mean > average * (1.0 + 1e-9) && s_final > 0.0; ++guard) {
        s_final *= 1.001;
        fin = run(s_final, opts.increment_tol, &fin.p, true);
    }

    BaResult out;
    out.iterations = fin.iterations;
    out.multiplier = s_final;
    out.objective_trace = std::move(fin.trace);
    out.converged = fin.converged;
    out.input.points = g.x;
    out.input.mass = std::move(fin.p);
    out.capacity = mutual_information(out.input, g);
    if (!out.converged) throw BaError(std::move(out));
    return out;
}

}  // namespace ocb
