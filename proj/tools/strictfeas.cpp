#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "strictfeas/cli.hpp"

using namespace strictfeas;

namespace {

void add_common(CLI::App* cmd, cli::CliOptions& opts) {
    cmd->add_option("--gap-tol", opts.solver.gap_tol, "relative duality-gap tolerance")->capture_default_str();
    cmd->add_option("--feas-tol", opts.solver.feas_tol, "primal/dual residual tolerance")->capture_default_str();
    cmd->add_option("--max-iter", opts.solver.max_iter, "interior-point iteration limit")->capture_default_str();
    cmd->add_option("--max-den", opts.max_den, "largest denominator tried when rounding certificates")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eig-threshold", opts.eig_threshold,
                    "eigenvalues below this fraction of the largest count as zero")
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "output path (report, or problem file for reduce/export)");
    cmd->add_flag("--json", opts.json, "print the JSON report instead of text");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagnose and repair SDPs that are not strictly feasible"};
    app.require_subcommand(1);
    cli::CliOptions opts;
    std::string input;

    auto* solve = app.add_subcommand("solve", "solve an SDP with the interior-point method");
    solve->add_option("problem", input, "problem file, or builtin:<name>")->required();
    auto* diagnose = app.add_subcommand("diagnose", "look for an exact certificate that strict feasibility fails");
    diagnose->add_option("problem", input, "problem file, or builtin:<name>")->required();
    auto* reduce = app.add_subcommand("reduce", "substitute implicit equality constraints away");
    reduce->add_option("problem", input, "problem file, or builtin:<name>")->required();
    auto* reproduce = app.add_subcommand("reproduce", "run the full pipeline on a built-in problem");
    reproduce->add_option("target", input, "problem1, problem2, chsh-toy or all")
        ->required()
        ->check(CLI::IsMember({"problem1", "problem2", "chsh-toy", "all"}));
    auto* exporter = app.add_subcommand("export", "write a built-in problem as JSON");
    exporter->add_option("name", input, "built-in problem name")->required()->check(CLI::IsMember(cli::builtin_names()));
    for (auto* cmd : {solve, diagnose, reduce, reproduce, exporter}) add_common(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? cli::kExitOk : cli::kExitError;
    }

    cli::RunReport report;
    try {
        opts.seed = cli::seed_from_environment();
    } catch (const std::exception& e) {
        report.command = app.get_subcommands().front()->get_name();
        report.errors.push_back(e.what());
        report.exit_code = cli::kExitError;
        report.text = std::string("error: ") + e.what() + "\n";
    }
    if (report.errors.empty()) {
        if (solve->parsed()) report = cli::cmd_solve(input, opts);
        if (diagnose->parsed()) report = cli::cmd_diagnose(input, opts);
        if (reduce->parsed()) report = cli::cmd_reduce(input, opts);
        if (reproduce->parsed()) report = cli::cmd_reproduce(input, opts);
        if (exporter->parsed()) report = cli::cmd_export(input, opts);
    }

    const bool writes_problem = reduce->parsed() || exporter->parsed();
    if (!opts.out.empty() && !writes_problem) {
        std::ofstream f(opts.out);
        f << report.to_json().dump(2) << "\n";
        if (!f) {
            std::cerr << "error: cannot write report to " << opts.out << "\n";
            return cli::kExitError;
        }
    }
    if (opts.json)
        std::cout << report.to_json().dump(2) << "\n";
    else
        (report.exit_code == cli::kExitError && !report.errors.empty() ? std::cerr : std::cout) << report.text;
    return report.exit_code;
}
