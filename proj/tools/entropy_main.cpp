// entropy: scenario runner and search harnesses for the workbench.
//
//   entropy compute --scenario F [--report text|json] [--seed S] [--out F]
//   entropy suite --trials T --seed S
//   entropy conjecture1 --trials T --seed S [--log F]
//   entropy degrees --matrix "2 0 / 0 3" [--tol T]

#include "etale/runner.hpp"
#include "etale/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

int cmd_compute(const std::string& path, const std::string& format, std::uint64_t seed,
                const std::string& out_path) {
    etale::Scenario scenario;
    try {
        scenario = etale::parse_scenario_file(path);
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    etale::RunFlags flags;
    flags.seed = seed;
    flags.format = format;
    etale::RunReport report = etale::run_scenario(scenario, flags);
    std::string text = format == "json" ? report.to_json() : report.to_text();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    return report.any_failed() ? 1 : 0;
}

int cmd_suite(int trials, std::uint64_t seed) {
    etale::SuiteOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    etale::Theorem1Report report = etale::theorem1_suite(opts);
    std::cout << "entropy suite: " << report.trials << " trials, seed " << seed << "\n";
    for (const auto* part : report.parts()) {
        std::cout << part->name << ": pass=" << part->pass << " fail=" << part->fail << "\n";
        for (const std::string& f : part->failures) std::cout << "  failure: " << f << "\n";
    }
    std::cout << "status = " << (report.all_pass() ? "ok" : "failed") << "\n";
    return report.all_pass() ? 0 : 1;
}

int cmd_conjecture1(int trials, std::uint64_t seed, const std::string& log_path) {
    etale::SuiteOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    etale::Conjecture1Report report = etale::conjecture1_search(opts);
    if (!log_path.empty()) {
        std::ofstream log(log_path, std::ios::binary);
        if (!log) {
            std::cerr << "cannot write " << log_path << "\n";
            return 2;
        }
        for (const auto& rec : report.records) {
            nlohmann::ordered_json j;
            j["seed"] = rec.seed;
            j["cover_kind"] = rec.cover_kind;
            j["base_matrix"] = rec.base_matrix;
            j["host_matrix"] = rec.host_matrix;
            j["detail"] = rec.detail;
            j["base_entropy"] = {rec.base_entropy.lo, rec.base_entropy.hi};
            j["host_entropy"] = {rec.host_entropy.lo, rec.host_entropy.hi};
            j["violation"] = rec.violation;
            log << j.dump() << "\n";
        }
    }
    std::cout << "conjecture1 search: " << report.records.size() << " trials, seed " << seed
              << "\n";
    std::cout << "violations = " << report.violations << "\n";
    for (const auto& rec : report.records)
        if (rec.violation)
            std::cout << "VIOLATION seed=" << rec.seed << " base=" << rec.base_matrix
                      << " host=" << rec.host_matrix << "\n";
    std::cout << "status = " << (report.violations == 0 ? "ok" : "violations found") << "\n";
    return report.violations == 0 ? 0 : 1;
}

int cmd_degrees(const std::string& matrix, double tol) {
    etale::MonomialMap map;
    try {
        map = etale::make_monomial_map(etale::parse_matrix(matrix));
    } catch (const std::exception& e) {
        std::cerr << "bad matrix: " << e.what() << "\n";
        return 2;
    }
    etale::DegreeOptions opts;
    opts.radius.tol = tol;
    etale::DegreeProfile p = etale::monomial_dynamical_degrees(map, opts);
    for (std::size_t i = 0; i < p.lambdas.size(); ++i)
        std::cout << "lambda_" << i << " = " << etale::fmt_bracket(p.lambdas[i])
                  << (p.exact[i] ? " (exact)" : "") << "\n";
    std::cout << "det = " << p.det.str() << "\n";
    std::cout << "max_log = " << etale::fmt_bracket(p.max_log()) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"etale entropy workbench"};
    app.require_subcommand(1);

    std::string scenario_path, report_format = "text", out_path, log_path, matrix;
    std::uint64_t seed = 17;
    int trials = 100;
    double tol = 1e-9;

    CLI::App* compute = app.add_subcommand("compute", "run a scenario file");
    compute->add_option("--scenario", scenario_path, "scenario file")->required();
    compute->add_option("--report", report_format, "report format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    compute->add_option("--seed", seed, "seed for sampled verifications");
    compute->add_option("--out", out_path, "write the report to a file instead of stdout");

    CLI::App* suite = app.add_subcommand("suite", "run the entropy-law property suite");
    suite->add_option("--trials", trials, "number of seeded instances");
    suite->add_option("--seed", seed, "master seed");

    int c1_trials = 1000;
    CLI::App* conj = app.add_subcommand("conjecture1", "compact-base cover inequality search");
    conj->add_option("--trials", c1_trials, "number of seeded trials");
    conj->add_option("--seed", seed, "master seed");
    conj->add_option("--log", log_path, "write a replayable JSONL witness log");

    CLI::App* degrees = app.add_subcommand("degrees", "dynamical degrees of a monomial map");
    degrees->add_option("--matrix", matrix, "integer matrix, rows separated by '/'")->required();
    degrees->add_option("--tol", tol, "bracket tolerance");

    CLI11_PARSE(app, argc, argv);

    if (compute->parsed()) return cmd_compute(scenario_path, report_format, seed, out_path);
    if (suite->parsed()) return cmd_suite(trials, seed);
    if (conj->parsed()) return cmd_conjecture1(c1_trials, seed, log_path);
    if (degrees->parsed()) return cmd_degrees(matrix, tol);
    return 2;
}
