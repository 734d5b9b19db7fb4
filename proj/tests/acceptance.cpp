// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ocb/oracle.hpp"
#include "ocb/sweep.hpp"
#include "ocb/verify.hpp"

namespace {

using ocb::ConstraintSpec;

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// --- 1: figure-gap reproduction ---------------------------------------------
Criterion criterion_figure_gaps() {
    Criterion c{"1 figure-gap reproduction"};
    const auto t0 = std::chrono::steady_clock::now();
    const struct {
        int figure;
        double gap, at_db, db_tol;
    } targets[] = {{1, 0.68, 10.5, 1.0}, {2, 0.52, 6.4, 1.0}, {3, 0.50, 6.4, 1.0}, {5, 0.57, 2.8, 1.0}};
    for (const auto& t : targets) {
        const auto rows = ocb::compute_sweep(ocb::figure_sweep_spec(t.figure));
        const auto g = ocb::max_gap(rows);
        c.require(std::fabs(g.max_gap - t.gap) <= 0.02,
                  "figure " + std::to_string(t.figure) + " gap " + num(g.max_gap) + " not within 0.02 of " +
                      num(t.gap));
        c.require(std::fabs(g.at_db - t.at_db) <= t.db_tol,
                  "figure " + std::to_string(t.figure) + " peak at " + num(g.at_db) + " dB, expected " +
                      num(t.at_db) + " +- " + num(t.db_tol));
        c.note("fig" + std::to_string(t.figure) + ": " + num(g.max_gap) + " @ " + num(g.at_db) + " dB");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 60.0, "sweep runtime " + num(secs) + " s exceeds 60 s");
    c.note("runtime " + num(secs) + " s");
    return c;
}

// --- 2: high-power convergence ----------------------------------------------
Criterion criterion_high_snr() {
    Criterion c{"2 high-SNR convergence"};
    const std::vector<double> grid{20.0, 30.0, 40.0, 50.0, 60.0};
    const std::vector<std::pair<ocb::CaseTag, std::optional<double>>> configs{
        {ocb::CaseTag::I, 0.1}, {ocb::CaseTag::I, 0.4}, {ocb::CaseTag::II, {}}, {ocb::CaseTag::III, {}}};
    for (const auto& [tag, alpha] : configs) {
        const auto rep = ocb::convergence_report(tag, alpha, ocb::Regime::high, grid, 0.01);
        std::string label = std::string("case ") + ocb::to_string(tag) +
                            (alpha ? " a=" + num(*alpha) : "");
        c.require(rep.upper_dev.back() < 0.01, label + " upper dev " + num(rep.upper_dev.back()));
        c.require(rep.lower_dev.back() < 0.01, label + " lower dev " + num(rep.lower_dev.back()));
        bool monotone = true;
        for (std::size_t i = 0; i + 1 < rep.upper_dev.size(); ++i)
            monotone = monotone && rep.upper_dev[i] > rep.upper_dev[i + 1] &&
                       rep.lower_dev[i] > rep.lower_dev[i + 1];
        c.require(monotone, label + " deviations not strictly decreasing over the last five decades");
        c.note(label + ": " + num(rep.upper_dev.back()) + "/" + num(rep.lower_dev.back()));
    }
    return c;
}

// --- 3: low-power quadratic laws --------------------------------------------
Criterion criterion_low_snr_laws() {
    Criterion c{"3 low-SNR laws"};
    const double r = ocb::ratio_from_db(-40.0);
    const double v1 = ocb::upper_case1_gauss(r, 1.0, 0.1).nats / (r * r);
    c.require(v1 <= 0.045 && v1 >= 0.045 * (1.0 - 1e-3),
              "case I ratio " + num(v1) + " outside [0.045(1-1e-3), 0.045]");
    const double v2 = ocb::upper_case2_gauss(r, 1.0).nats / (r * r);
    c.require(v2 <= 0.125 && v2 >= 0.125 * (1.0 - 1e-3),
              "case II ratio " + num(v2) + " outside [0.125(1-1e-3), 0.125]");

    const double A = 0.05, a = 0.1;
    const auto g = ocb::build_grid(ConstraintSpec::peak_and_average(A, a * A, 1.0), 2, 4096);
    const double mi = ocb::mutual_information({{0.0, A * (1.0 - A)}, {1.0 - a, a}}, g);
    const double lead = a * (1.0 - a) * A * A * (1.0 - A) * (1.0 - A) / 2.0;
    c.require(std::fabs(mi / lead - 1.0) <= 0.1, "binary-input MI off by " + num(mi / lead - 1.0));
    c.note("gauss ratios " + num(v1) + ", " + num(v2) + "; binary MI/lead " + num(mi / lead));
    return c;
}

// --- 4: average-only low-power bracket --------------------------------------
Criterion criterion_case3_bracket() {
    Criterion c{"4 case III low-SNR bracket"};
    const double E = ocb::ratio_from_db(-40.0);
    const double law = E * std::sqrt(std::log(1.0 / E));
    const auto env = ocb::envelope(ConstraintSpec::average_only(E, 1.0));
    c.require(env.upper / law <= 2.2, "upper/law " + num(env.upper / law) + " exceeds 2.2");
    c.note("upper/law " + num(env.upper / law));

    const double cc = 3.0;
    const double x1 = std::sqrt(cc * std::log(1.0 / E));
    const auto g = ocb::build_grid(ConstraintSpec::peak_and_average(x1, E, 1.0), 2, 4096);
    const double mi = ocb::mutual_information({{0.0, x1}, {1.0 - E / x1, E / x1}}, g);
    c.require(mi / law >= 0.5, "flash MI/law " + num(mi / law) + " below 0.5");
    c.note("flash MI/law " + num(mi / law));
    return c;
}

// --- 5: alternating-maximization sandwich -----------------------------------
Criterion criterion_ba_sandwich() {
    Criterion c{"5 oracle sandwich (512 x 4096)"};
    struct Point {
        ConstraintSpec spec;
        std::string label;
        bool doubled;
    };
    std::vector<Point> points;
    for (const double snr : {3.0, 10.0, 30.0})
        for (const double a : {0.1, 0.3, 0.6})
            points.push_back({ConstraintSpec::peak_and_average(snr, a * snr, 1.0),
                              "A=" + num(snr) + ",a=" + num(a), snr == 10.0 && a == 0.3});
    for (const double e : {1.0, 3.0, 10.0})
        points.push_back({ConstraintSpec::average_only(e, 1.0), "E=" + num(e), e == 3.0});
    points[8].doubled = true;  // A=30, a=0.6 joins the refinement subset

    struct Outcome {
        bool inside = false, monotone = false, feasible = false;
        double capacity = 0.0, drift = 0.0;
        bool drift_ok = true;
    };
    std::vector<Outcome> outcomes(points.size());
    ocb::detail::parallel_for(static_cast<int>(points.size()), [&](int i) {
        const auto& pt = points[i];
        const auto g = ocb::build_grid(pt.spec, 512, 4096);
        const auto ba = ocb::blahut_arimoto(g, pt.spec);
        const auto env = ocb::envelope(pt.spec);
        Outcome o;
        o.capacity = ba.capacity;
        o.inside = ba.capacity >= env.lower - 0.01 && ba.capacity <= env.upper + 0.01;
        o.monotone = true;
        for (std::size_t k = 0; k + 1 < ba.objective_trace.size(); ++k)
            o.monotone = o.monotone && ba.objective_trace[k + 1] >= ba.objective_trace[k] - 1e-10;
        o.feasible = ba.input.mean() <= pt.spec.average + 1e-9;
        if (pt.doubled) {
            const auto g2 = ocb::build_grid(pt.spec, 1024, 8192);
            const auto ba2 = ocb::blahut_arimoto(g2, pt.spec);
            o.drift = std::fabs(ba2.capacity - ba.capacity);
            o.drift_ok = o.drift < 1e-3;
        }
        outcomes[i] = o;
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& o = outcomes[i];
        c.require(o.inside, points[i].label + " estimate " + num(o.capacity) + " leaves the envelope");
        c.require(o.monotone, points[i].label + " objective not monotone");
        c.require(o.feasible, points[i].label + " mean constraint violated");
        if (points[i].doubled) {
            c.require(o.drift_ok, points[i].label + " grid-doubling drift " + num(o.drift));
            c.note(points[i].label + " drift " + num(o.drift));
        }
    }
    return c;
}

// --- 6: symmetric-mean witness ----------------------------------------------
Criterion criterion_symmetric_mean() {
    Criterion c{"6 symmetric-mean witness"};
    const auto spec = ConstraintSpec::peak_and_average(10.0, 9.0, 1.0);
    const auto g = ocb::build_grid(spec, 512, 4096);
    const auto ba = ocb::blahut_arimoto(g, spec);
    const double spacing = 10.0 / 511.0;
    c.require(std::fabs(ba.input.mean() - 5.0) <= spacing,
              "optimal mean " + num(ba.input.mean()) + " not within one grid spacing of 5");
    c.note("mean " + num(ba.input.mean()) + " (spacing " + num(spacing) + ")");

    const auto gs = ocb::build_grid(ConstraintSpec::peak_and_average(5.0, 2.5, 1.0), 64, 2048);
    const ocb::DiscreteInput matrix[] = {
        {{0.0}, {1.0}},
        {{0.0, 4.0}, {0.9, 0.1}},
        {{0.0, 1.0, 3.0}, {0.5, 0.3, 0.2}},
        {{0.0, 2.5, 5.0}, {0.25, 0.5, 0.25}},
    };
    for (const auto& in : matrix) {
        const double before = ocb::mutual_information(in, gs);
        const double after = ocb::mutual_information(ocb::symmetrize(in, 5.0), gs);
        c.require(after >= before - 1e-9,
                  "symmetrization lost information: " + num(before) + " -> " + num(after));
    }
    return c;
}

// --- 7: property suites ------------------------------------------------------
Criterion criterion_property_suites() {
    Criterion c{"7 property suites"};
    for (const auto& r : ocb::verify_lemmas())
        c.require(r.pass, r.name + (r.detail.empty() ? "" : " (" + r.detail + ")"));

    // duality-gap matrix: five reference laws x four inputs x three powers
    double min_gap = 1e99;
    for (const double snr : {2.0, 5.0, 10.0}) {
        const double E = 0.3 * snr;
        const auto sp = ConstraintSpec::peak_and_average(snr, E, 1.0);
        const auto g = ocb::build_grid(sp, 512, 2048);
        const auto p1 = ocb::default_params_case1(snr, 1.0, 0.3);
        const auto p3h = ocb::default_params_case3_high(E, 1.0);
        const ocb::OutputDensity densities[] = {
            ocb::output_density_gauss_moment(snr, E, 1.0),
            ocb::output_density_texp_tails(snr, 1.0, p1.delta, p1.mu),
            ocb::output_density_gauss_peak(snr, 1.0),
            ocb::output_density_uniform_tails(snr, 1.0, ocb::default_delta_case2(snr, 1.0)),
            ocb::output_density_exp_shifted(1.0, p3h.delta, p3h.beta),
        };
        const ocb::DiscreteInput inputs[] = {
            ocb::discretize(ocb::maxent_uniform(snr).pdf, g),
            ocb::discretize(ocb::maxent_truncated_exp(snr, 0.3).pdf, g),
            {{0.0, snr}, {0.5, 0.5}},
            {{0.0, 0.4 * snr, snr}, {0.5, 0.3, 0.2}},
        };
        for (const auto& d : densities)
            for (const auto& in : inputs) min_gap = std::min(min_gap, ocb::duality_gap(in, d, g));
    }
    c.require(min_gap >= -1e-6, "duality gap fell to " + num(min_gap));
    c.note("min duality gap " + num(min_gap));
    return c;
}

}  // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(criterion_figure_gaps());
    results.push_back(criterion_high_snr());
    results.push_back(criterion_low_snr_laws());
    results.push_back(criterion_case3_bracket());
    results.push_back(criterion_ba_sandwich());
    results.push_back(criterion_symmetric_mean());
    results.push_back(criterion_property_suites());

    int failures = 0;
    for (const auto& c : results) {
        std::printf("%s criterion %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.empty() ? "" : ": ", c.detail.c_str());
        if (!c.pass) ++failures;
    }
    std::printf("%zu/%zu acceptance criteria passed\n", results.size() - failures, results.size());
    return failures;
}
