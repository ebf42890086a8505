// ffl: finite-factor lab batch runner.
//
// Generates seeded random inputs, executes the property suites across all
// modules and emits machine-readable reports for CI. Exit codes: 0 when every
// trial passes, 1 on any failing trial, 2 on configuration errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ffl/dense_matrix.hpp"
#include "ffl/errors.hpp"
#include "ffl/report.hpp"
#include "ffl/rng.hpp"
#include "ffl/suites.hpp"

namespace {

int write_output(const ffl::SuiteReport& report) {
    const std::string payload = ffl::emit_report(report, report.config.format);
    if (report.config.report_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(report.config.report_path, std::ios::binary);
        if (!out) {
            std::cerr << "ffl: cannot write report to " << report.config.report_path << "\n";
            return 2;
        }
        out << payload;
    }
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ffl: property suites for finite-dimensional matrix *-algebras"};

    std::string suite_str = "all";
    ffl::SuiteConfig config;
    config.n_list.clear();
    std::string format_str = "json";
    std::string input_path;
    std::uint64_t replay_seed = 0;
    bool have_replay = false;
    config.cond_bound = 50.0;
    config.trials = 10;
    config.seed = 1;

    // FFL_DEFAULT_TOL overrides the built-in default; --tol beats both.
    config.tol = 1e-8;
    if (const char* env = std::getenv("FFL_DEFAULT_TOL")) {
        try {
            config.tol = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "ffl: FFL_DEFAULT_TOL is not a number: " << env << "\n";
            return 2;
        }
    }

    app.add_option("--suite", suite_str,
                   "polar|remark2|dimension|quasitrace|lemma4|lemma5|theorem6|corollaries|star|all")
        ->capture_default_str();
    app.add_option("--n", config.n_list, "matrix sizes (repeatable)");
    app.add_option("--trials", config.trials, "trials per size")->capture_default_str();
    app.add_option("--seed", config.seed, "master seed")->capture_default_str();
    app.add_option("--tol", config.tol, "pass/fail residual threshold")->capture_default_str();
    app.add_option("--cond-bound", config.cond_bound, "condition bound for generated inputs")
        ->capture_default_str();
    app.add_option("--report", config.report_path, "report file (default: stdout)");
    app.add_option("--format", format_str, "json|csv")->capture_default_str();
    app.add_option("--input", input_path, "run the suite checks on a fixture matrix");
    app.add_option("--replay-seed", replay_seed, "replay one trial from its child seed")
        ->each([&have_replay](const std::string&) { have_replay = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        config.suite = ffl::suite_from_name(suite_str);
        if (format_str == "json")
            config.format = ffl::ReportFormat::json;
        else if (format_str == "csv")
            config.format = ffl::ReportFormat::csv;
        else
            throw ffl::ConfigInvalid("unknown format \"" + format_str + "\"");
        if (config.n_list.empty()) config.n_list = {4};

        if (!input_path.empty()) {
            const ffl::DenseMatrix x = ffl::read_matrix_file(input_path);
            ffl::SuiteReport rep;
            config.trials = 1;
            config.n_list = {static_cast<int>(x.dim())};
            rep.config = config;
            rep.records = ffl::run_fixture_trial(config.suite, x, config.tol);
            rep.recompute_aggregate(0.0);
            return write_output(rep);
        }

        if (have_replay) {
            if (config.n_list.size() != 1)
                throw ffl::ConfigInvalid("--replay-seed needs exactly one --n");
            ffl::SuiteReport rep;
            config.trials = 1;
            rep.config = config;
            rep.records = ffl::run_single_trial(config.suite, config.n_list[0], 0, replay_seed,
                                                config.tol, config.cond_bound);
            rep.recompute_aggregate(0.0);
            return write_output(rep);
        }

        config.validate();
        return write_output(ffl::run_suite(config));
    } catch (const ffl::ConfigInvalid& ex) {
        std::cerr << "ffl: " << ex.what() << "\n";
        return 2;
    } catch (const ffl::IoFailure& ex) {
        std::cerr << "ffl: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "ffl: unexpected error: " << ex.what() << "\n";
        return 1;
    }
}
