// Command-line front end: capacity-bound sweeps, figure-data reproduction,
// and the verification suites.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ocb/sweep.hpp"
#include "ocb/verify.hpp"

namespace {

struct CommonArgs {
    std::string case_name;
    std::optional<double> alpha;
    std::optional<double> db_min, db_max;
    std::optional<int> steps;
    std::optional<double> sigma;
    std::string out_path;
    std::string config_path;
    std::string db_convention;
};

ocb::CaseTag parse_case(const std::string& name) {
    if (name == "I" || name == "i" || name == "1") return ocb::CaseTag::I;
    if (name == "II" || name == "ii" || name == "2") return ocb::CaseTag::II;
    if (name == "III" || name == "iii" || name == "3") return ocb::CaseTag::III;
    throw CLI::ValidationError("--case", "expected I, II or III");
}

ocb::DbConvention parse_convention(const std::string& name) {
    if (name.empty() || name == "10log10") return ocb::DbConvention::power10;
    if (name == "20log10") return ocb::DbConvention::field20;
    throw CLI::ValidationError("--db-convention", "expected 10log10 or 20log10");
}

// precedence: explicit flags > config file entries > built-in defaults
ocb::SweepSpec resolve_sweep_spec(const CommonArgs& args) {
    std::map<std::string, std::string> cfg;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + args.config_path);
        cfg = ocb::parse_config(in);
    }
    auto from_cfg = [&](const char* key) -> std::optional<std::string> {
        const auto it = cfg.find(key);
        if (it == cfg.end()) return std::nullopt;
        return it->second;
    };

    ocb::SweepSpec spec;
    std::string case_name = args.case_name;
    if (case_name.empty())
        if (const auto v = from_cfg("case")) case_name = *v;
    if (case_name.empty()) throw std::runtime_error("missing --case (or 'case=' in the config)");
    spec.case_tag = parse_case(case_name);

    if (args.alpha)
        spec.alpha = *args.alpha;
    else if (const auto v = from_cfg("alpha"))
        spec.alpha = std::stod(*v);
    if (args.db_min)
        spec.db_min = *args.db_min;
    else if (const auto v = from_cfg("db-min"))
        spec.db_min = std::stod(*v);
    if (args.db_max)
        spec.db_max = *args.db_max;
    else if (const auto v = from_cfg("db-max"))
        spec.db_max = std::stod(*v);
    if (args.steps)
        spec.steps = *args.steps;
    else if (const auto v = from_cfg("steps"))
        spec.steps = std::stoi(*v);
    if (args.sigma)
        spec.sigma = *args.sigma;
    else if (const auto v = from_cfg("sigma"))
        spec.sigma = std::stod(*v);
    std::string conv = args.db_convention;
    if (conv.empty())
        if (const auto v = from_cfg("db-convention")) conv = *v;
    spec.db_conv = parse_convention(conv);

    if (spec.case_tag != ocb::CaseTag::I && spec.alpha) {
        std::cerr << "warning: --alpha is ignored for cases II and III\n";
        spec.alpha.reset();
    }
    return spec;
}

int run_sweep(const CommonArgs& args) {
    const ocb::SweepSpec spec = resolve_sweep_spec(args);
    const auto rows = ocb::compute_sweep(spec);
    if (args.out_path.empty()) {
        ocb::write_sweep_csv(std::cout, spec, rows);
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + args.out_path);
        ocb::write_sweep_csv(out, spec, rows);
    }
    return 0;
}

int run_figure(int figure_id, const std::string& out_path) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + out_path);
        os = &file;
    }
    if (figure_id == 4) {
        ocb::write_chi_csv(*os);
        return 0;
    }
    const ocb::SweepSpec spec = ocb::figure_sweep_spec(figure_id);
    const auto rows = ocb::compute_sweep(spec);
    ocb::write_sweep_csv(*os, spec, rows);
    const auto g = ocb::max_gap(rows);
    std::printf("max_gap_nats=%.4f at_db=%.2f\n", g.max_gap, g.at_db);
    return 0;
}

int run_verify(const std::string& suite) {
    const auto results = ocb::verify_suite(suite);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("%s %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.empty() ? "" : ": ", r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures, results.size());
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity bounds for the nonnegative-input Gaussian (optical intensity) channel"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_sweep_flags = [&](CLI::App* cmd) {
        cmd->add_option("--case", args.case_name, "constraint regime: I, II or III");
        cmd->add_option("--alpha", args.alpha, "average-to-peak ratio (case I)");
        cmd->add_option("--db-min", args.db_min, "sweep start in dB (default -10)");
        cmd->add_option("--db-max", args.db_max, "sweep end in dB (default 60)");
        cmd->add_option("--steps", args.steps, "number of sweep points (default 281)");
        cmd->add_option("--sigma", args.sigma, "noise standard deviation (default 1)");
        cmd->add_option("--out", args.out_path, "output CSV path (default stdout)");
        cmd->add_option("--config", args.config_path, "key=value config file");
        cmd->add_option("--db-convention", args.db_convention, "10log10 (default) or 20log10");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "write a bound sweep as CSV");
    add_sweep_flags(sweep);

    int figure_id = 0;
    std::string figure_out;
    CLI::App* figure = app.add_subcommand("figure", "reproduce the data behind one figure");
    figure->add_option("id", figure_id, "figure number (1-5)")->required()->check(CLI::Range(1, 5));
    figure->add_option("--out", figure_out, "output CSV path (default stdout)");

    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", suite, "lemmas | sandwich | asymptotics | oracle | all")
        ->check(CLI::IsMember({"lemmas", "sandwich", "asymptotics", "oracle", "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep(args);
        if (figure->parsed()) return run_figure(figure_id, figure_out);
        if (verify->parsed()) return run_verify(suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
