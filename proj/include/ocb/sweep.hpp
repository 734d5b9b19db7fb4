// Sweep engine behind the CLI: bound evaluation over a dB grid, deterministic
// CSV emission, figure presets, and the key=value config file format.
#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ocb/asymptotics.hpp"
#include "ocb/optimize.hpp"

namespace ocb {

enum class DbConvention { power10, field20 };  // value_dB = 10 log10 or 20 log10

inline double ratio_from_db(double db, DbConvention conv) {
    return std::pow(10.0, db / (conv == DbConvention::power10 ? 10.0 : 20.0));
}

inline double db_from_ratio(double ratio, DbConvention conv) {
    return (conv == DbConvention::power10 ? 10.0 : 20.0) * std::log10(ratio);
}

struct SweepSpec {
    CaseTag case_tag = CaseTag::II;
    std::optional<double> alpha;  // required for case I
    double db_min = -10.0;
    double db_max = 60.0;
    int steps = 281;
    double sigma = 1.0;
    DbConvention db_conv = DbConvention::power10;
};

/// One sweep record: the constraint ratio, every applicable bound value,
/// the envelope, its gap and the high-power asymptote.
struct SweepRow {
    double ratio = 0.0;
    double ratio_db = 0.0;
    std::vector<std::pair<int, double>> bounds;  // formula id -> nats
    double env_lower = 0.0;
    double env_upper = 0.0;
    double gap = 0.0;
    double asymptote = 0.0;
};

namespace detail {

inline int thread_budget() {
    if (const char* env = std::getenv("OCB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

inline SweepRow sweep_point(const SweepSpec& spec, double db) {
    SweepRow row;
    row.ratio_db = db;
    row.ratio = ratio_from_db(db, spec.db_conv);
    const double s = spec.sigma;
    const double amp = row.ratio * s;
    switch (spec.case_tag) {
        case CaseTag::I: {
            const double a = *spec.alpha;
            row.bounds.emplace_back(formula::lower_trunc_exp, lower_case1(amp, s, a).nats);
            row.bounds.emplace_back(formula::upper_gauss_moment, upper_case1_gauss(amp, s, a).nats);
            row.bounds.emplace_back(formula::upper_dual_texp, minimize_upper_case1(amp, s, a).value);
            row.asymptote = high_snr_asymptote(CaseTag::I, row.ratio, a);
            break;
        }
        case CaseTag::II: {
            row.bounds.emplace_back(formula::lower_uniform, lower_case2(amp, s).nats);
            row.bounds.emplace_back(formula::upper_gauss_peak, upper_case2_gauss(amp, s).nats);
            row.bounds.emplace_back(formula::upper_dual_uniform, minimize_upper_case2(amp, s).value);
            row.asymptote = high_snr_asymptote(CaseTag::II, row.ratio);
            break;
        }
        case CaseTag::III: {
            row.bounds.emplace_back(formula::lower_exp, lower_case3(amp, s).nats);
            row.bounds.emplace_back(formula::upper_dual_exp_low, minimize_upper_case3_low(amp, s).value);
            row.bounds.emplace_back(formula::upper_dual_exp_high, minimize_upper_case3_high(amp, s).value);
            row.asymptote = high_snr_asymptote(CaseTag::III, row.ratio);
            break;
        }
    }
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (const auto& [id, v] : row.bounds) {
        const bool is_lower = id == formula::lower_trunc_exp || id == formula::lower_uniform ||
                              id == formula::lower_exp;
        if (is_lower)
            lo = std::max(lo, v);
        else
            hi = std::min(hi, v);
    }
    row.env_lower = lo;
    row.env_upper = hi;
    row.gap = hi - lo;
    return row;
}

inline std::vector<SweepRow> compute_sweep(const SweepSpec& spec) {
    if (!(spec.db_min < spec.db_max)) throw std::domain_error("sweep: requires db_min < db_max");
    if (spec.steps < 2) throw std::domain_error("sweep: requires steps >= 2");
    if (spec.case_tag == CaseTag::I && !spec.alpha)
        throw std::domain_error("sweep: case I requires alpha");
    if (spec.alpha && !(*spec.alpha > 0 && *spec.alpha <= 1))
        throw std::domain_error("sweep: alpha must lie in (0, 1]");
    std::vector<SweepRow> rows(spec.steps);
    detail::parallel_for(spec.steps, [&](int i) {
        const double db = spec.db_min + (spec.db_max - spec.db_min) * i / (spec.steps - 1);
        rows[i] = sweep_point(spec, db);
    });
    return rows;
}

struct GapSummary {
    double max_gap = 0.0;
    double at_db = 0.0;
};

inline GapSummary max_gap(const std::vector<SweepRow>& rows) {
    GapSummary g{-std::numeric_limits<double>::infinity(), 0.0};
    for (const auto& r : rows)
        if (r.gap > g.max_gap) g = GapSummary{r.gap, r.ratio_db};
    return g;
}

// ---------------------------------------------------------------------------
// CSV emission: schema comment, header, then rows at 12 significant digits
// with a locale-independent decimal point.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    os << "# schema=1\n";
    os << "ratio,ratio_db";
    if (!rows.empty())
        for (const auto& [id, v] : rows.front().bounds) {
            const bool is_lower = id == formula::lower_trunc_exp || id == formula::lower_uniform ||
                                  id == formula::lower_exp;
            os << ',' << (is_lower ? "lower" : "upper") << id;
        }
    os << ",env_lower,env_upper,gap,asymptote\n";
    for (const auto& r : rows) {
        os << detail::format_number(r.ratio) << ',' << detail::format_number(r.ratio_db);
        for (const auto& [id, v] : r.bounds) os << ',' << detail::format_number(v);
        os << ',' << detail::format_number(r.env_lower) << ',' << detail::format_number(r.env_upper)
           << ',' << detail::format_number(r.gap) << ',' << detail::format_number(r.asymptote) << '\n';
    }
    (void)spec;
}

/// Offset-constant table for the high-power expansion over alpha in (0, 1].
inline void write_chi_csv(std::ostream& os, int points = 400) {
    os << "# schema=1\n";
    os << "alpha,chi\n";
    for (int i = 1; i <= points; ++i) {
        const double a = static_cast<double>(i) / points;
        os << detail::format_number(a) << ',' << detail::format_number(chi(a)) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

inline SweepSpec figure_sweep_spec(int figure_id) {
    SweepSpec s;
    s.db_min = -10.0;
    s.db_max = 60.0;
    s.steps = 281;  // 0.25 dB apart
    switch (figure_id) {
        case 1:
            s.case_tag = CaseTag::I;
            s.alpha = 0.1;
            return s;
        case 2:
            s.case_tag = CaseTag::I;
            s.alpha = 0.4;
            return s;
        case 3:
            s.case_tag = CaseTag::II;
            return s;
        case 5:
            s.case_tag = CaseTag::III;
            return s;
        default:
            throw std::domain_error("figure_sweep_spec: no sweep preset for this figure");
    }
}

// ---------------------------------------------------------------------------
// Line-oriented key=value configuration
// ---------------------------------------------------------------------------

inline std::map<std::string, std::string> parse_config(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            const auto e = v.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : v.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

}  // namespace ocb
