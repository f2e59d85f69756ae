// Copyright 2026 The mdplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve, generate, experiment, export-lp, crosscheck.
//
// Exit codes: 0 success/converged, 1 input or usage error, 2 non-convergence
// (solve) or a failed experiment check.

#include "mdplab/experiments.hpp"
#include "mdplab/lp.hpp"
#include "mdplab/mdp_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

namespace {

using namespace mdplab;

struct InputOptions {
    std::string path;
    std::string generate;
};

void add_input(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("mdp", in.path, "MDP document (JSON)");
    cmd->add_option("--generate", in.generate,
                    "inline generator, e.g. mc90:N=10,gamma=0.95 or random:N=4,M=2,seed=1");
}

Mdp read_input(const InputOptions& in) {
    if (!in.path.empty() && !in.generate.empty()) {
        throw std::invalid_argument("give either an MDP file or --generate, not both");
    }
    if (!in.generate.empty()) return generate_from_spec(in.generate);
    if (in.path.empty()) throw std::invalid_argument("no MDP given (file path or --generate)");
    return load_mdp(in.path);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

struct SolveOptions {
    InputOptions input;
    std::string algorithm = "vi";
    std::optional<double> epsilon;
    std::optional<std::size_t> max_iters;
    std::size_t sweeps = 5;
    std::string pivot = "bland";
    std::string output;
    std::string format = "table";
};

int run_solve(const SolveOptions& opt) {
    const auto algorithm = parse_algorithm(opt.algorithm);
    if (!algorithm) {
        std::cerr << "error: unknown algorithm '" << opt.algorithm << "'\n";
        return 1;
    }
    const Mdp mdp = read_input(opt.input);
    AlgorithmOptions options;
    options.epsilon = opt.epsilon;
    options.max_iterations = opt.max_iters;
    options.sweeps = opt.sweeps;
    options.pivot_rule = opt.pivot == "dantzig" ? PivotRule::dantzig : PivotRule::bland;
    const SolveReport report = run_algorithm(mdp, *algorithm, options);

    const double objective = std::accumulate(report.values.begin(), report.values.end(), 0.0);
    CsvTable states;
    states.header = {"state", "action", "value"};
    for (std::size_t i = 0; i < report.values.size(); ++i) {
        states.rows.push_back({std::to_string(i), std::to_string(report.policy[i]),
                               format_double(report.values[i])});
    }
    if (opt.format == "csv") {
        std::cout << states.to_csv();
    } else {
        std::cout << "algorithm: " << to_string(*algorithm) << '\n'
                  << "converged: " << (report.converged ? "true" : "false") << '\n'
                  << "iterations: " << report.iterations << '\n';
        if (!report.residual_history.empty()) {
            std::cout << "final residual: " << format_double(report.residual_history.back()) << '\n';
        }
        if (report.converged) {
            std::cout << "objective: " << format_double(objective) << '\n' << states.to_table();
        }
    }

    if (!opt.output.empty()) {
        CsvTable trace;
        trace.header = {"iteration", "residual", "policy_changes"};
        const std::size_t rows = std::max(report.residual_history.size(), report.policy_change_history.size());
        for (std::size_t r = 0; r < rows; ++r) {
            trace.rows.push_back(
                {std::to_string(r + 1),
                 r < report.residual_history.size() ? format_double(report.residual_history[r]) : "",
                 r < report.policy_change_history.size() ? std::to_string(report.policy_change_history[r]) : ""});
        }
        write_text(opt.output, trace.to_csv());
    }
    return report.converged ? 0 : 2;
}

struct ExperimentOptions {
    std::string kind;
    std::vector<std::size_t> n_values;
    std::vector<std::size_t> m_values;
    std::vector<double> gammas;
    std::vector<std::uint64_t> seeds;
    std::optional<std::uint64_t> count;
    std::vector<double> epsilons;
    std::string output;
    std::string format = "csv";
};

int run_experiment_command(const ExperimentOptions& opt) {
    const auto kind = parse_experiment_kind(opt.kind);
    if (!kind) {
        std::cerr << "error: unknown experiment '" << opt.kind << "'\n";
        return 1;
    }
    ExperimentSpec spec;
    spec.kind = *kind;
    spec.n_values = opt.n_values;
    spec.m_values = opt.m_values;
    spec.gammas = opt.gammas;
    spec.seeds = opt.seeds;
    if (opt.count) {
        const std::uint64_t first = opt.seeds.empty() ? 0 : opt.seeds.front();
        spec.seeds.clear();
        for (std::uint64_t s = 0; s < *opt.count; ++s) spec.seeds.push_back(first + s);
    }
    spec.epsilons = opt.epsilons;
    spec.output_path = opt.output;

    const ExperimentResult result = run_experiment(spec);
    const std::string text = opt.format == "table" ? result.table.to_table() : result.table.to_csv();
    write_text(opt.output, text);
    std::cerr << result.summary << '\n';
    return result.all_passed ? 0 : 2;
}

void add_grid_options(CLI::App* cmd, ExperimentOptions& opt) {
    cmd->add_option("--n", opt.n_values, "state counts")->delimiter(',');
    cmd->add_option("--m", opt.m_values, "action counts")->delimiter(',');
    cmd->add_option("--gamma", opt.gammas, "discount rates")->delimiter(',');
    cmd->add_option("--seed", opt.seeds, "seeds (with --count: the first seed)")->delimiter(',');
    cmd->add_option("--count", opt.count, "number of consecutive seeds");
    cmd->add_option("--epsilon", opt.epsilons, "epsilon targets")->delimiter(',');
    cmd->add_option("--output", opt.output, "CSV output path (default stdout)");
    cmd->add_option("--format", opt.format, "csv or table")->check(CLI::IsMember({"csv", "table"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mdplab: tabular MDP solvers and iteration-complexity experiments"};
    app.require_subcommand(1);

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve an MDP with one algorithm");
    add_input(solve_cmd, solve.input);
    solve_cmd->add_option("--algorithm", solve.algorithm, "vi, pi, spi, mpi, lp-primal or lp-dual");
    solve_cmd->add_option("--epsilon", solve.epsilon, "vi: epsilon-optimality target");
    solve_cmd->add_option("--max-iters", solve.max_iters, "iteration cap");
    solve_cmd->add_option("--sweeps", solve.sweeps, "mpi: backups per evaluation")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--pivot", solve.pivot, "lp: bland or dantzig")
        ->check(CLI::IsMember({"bland", "dantzig"}));
    solve_cmd->add_option("--output", solve.output, "per-iteration CSV trace");
    solve_cmd->add_option("--format", solve.format, "table or csv")->check(CLI::IsMember({"csv", "table"}));

    InputOptions gen_input;
    std::string gen_output;
    std::optional<double> gen_gamma;
    std::optional<std::uint64_t> gen_seed;
    auto* gen_cmd = app.add_subcommand("generate", "write a generated MDP as JSON");
    gen_cmd->add_option("spec", gen_input.generate, "generator spec, e.g. mc90:N=10")->required();
    gen_cmd->add_option("--gamma", gen_gamma, "discount rate (overrides the spec)");
    gen_cmd->add_option("--seed", gen_seed, "seed (overrides the spec)");
    gen_cmd->add_option("--output", gen_output, "output path (default stdout)");

    ExperimentOptions exp;
    auto* exp_cmd = app.add_subcommand("experiment", "run a scripted experiment grid");
    exp_cmd->add_option("kind", exp.kind, "mc90-scaling, vi-gamma-scaling, cross-check, stopping-rule")
        ->required();
    add_grid_options(exp_cmd, exp);

    ExperimentOptions cross;
    cross.kind = "cross-check";
    auto* cross_cmd = app.add_subcommand("crosscheck", "compare every solver with the exhaustive oracle");
    add_grid_options(cross_cmd, cross);

    InputOptions lp_input;
    std::string lp_which = "primal";
    std::string lp_output;
    auto* lp_cmd = app.add_subcommand("export-lp", "write the primal or dual LP in LP text format");
    add_input(lp_cmd, lp_input);
    lp_cmd->add_option("--which", lp_which, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
    lp_cmd->add_option("--output", lp_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*gen_cmd) {
            std::string spec = gen_input.generate;
            const auto append = [&](const std::string& kv) {
                spec += (spec.find(':') == std::string::npos ? ":" : ",") + kv;
            };
            if (gen_gamma) append("gamma=" + format_double(*gen_gamma));
            if (gen_seed) append("seed=" + std::to_string(*gen_seed));
            write_text(gen_output, mdp_to_json(generate_from_spec(spec)));
            return 0;
        }
        if (*exp_cmd) return run_experiment_command(exp);
        if (*cross_cmd) return run_experiment_command(cross);
        if (*lp_cmd) {
            const Mdp mdp = read_input(lp_input);
            const LpProgram lp = lp_which == "dual" ? build_dual(mdp) : build_primal(mdp);
            write_text(lp_output, export_lp(lp));
            return 0;
        }
    } catch (const MdpValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
