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

#include "mdplab/experiments.hpp"

#include "mdplab/families.hpp"
#include "mdplab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mdplab {

std::optional<Algorithm> parse_algorithm(const std::string& name) {
    if (name == "vi") return Algorithm::vi;
    if (name == "pi") return Algorithm::pi;
    if (name == "spi") return Algorithm::spi;
    if (name == "mpi") return Algorithm::mpi;
    if (name == "lp-primal") return Algorithm::lp_primal;
    if (name == "lp-dual") return Algorithm::lp_dual;
    return std::nullopt;
}

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::vi: return "vi";
    case Algorithm::pi: return "pi";
    case Algorithm::spi: return "spi";
    case Algorithm::mpi: return "mpi";
    case Algorithm::lp_primal: return "lp-primal";
    case Algorithm::lp_dual: return "lp-dual";
    }
    return "unknown";
}

SolveReport run_algorithm(const Mdp& mdp, Algorithm algorithm, const AlgorithmOptions& options) {
    const DeterministicPolicy start(mdp.n_states(), 0);
    switch (algorithm) {
    case Algorithm::vi: {
        const double epsilon = options.epsilon.value_or(kDefaultEpsilon);
        return value_iteration(mdp, ValueVector(mdp.n_states(), 0.0),
                               StoppingRule::epsilon(epsilon, options.max_iterations));
    }
    case Algorithm::pi:
        return policy_iteration(mdp, start, options.max_iterations.value_or(1'000'000));
    case Algorithm::spi:
        return simple_policy_iteration(mdp, start, options.max_iterations.value_or(10'000'000));
    case Algorithm::mpi:
        return modified_policy_iteration(mdp, start, options.sweeps, 1e-10,
                                         options.max_iterations.value_or(10'000'000));
    case Algorithm::lp_primal:
    case Algorithm::lp_dual: {
        if (auto report = validate(mdp); !report.empty()) {
            throw std::invalid_argument("invalid MDP: " + report.front().describe());
        }
        const bool primal = algorithm == Algorithm::lp_primal;
        const LpProgram lp = primal ? build_primal(mdp) : build_dual(mdp);
        const LpSolution solution = solve_lp(lp, SimplexOptions{.rule = options.pivot_rule});
        SolveReport report;
        report.algorithm_name = to_string(algorithm);
        report.iterations = solution.pivots;
        report.converged = solution.status == LpStatus::optimal;
        if (!report.converged) return report;
        if (primal) {
            report.values = solution.values;
            report.policy = greedy_policy(mdp, report.values);
        } else {
            report.policy = stochastic_to_deterministic(solution.values, mdp.n_actions());
            report.values =
                evaluate_stochastic_policy(mdp, dual_to_stochastic_policy(mdp, solution.values));
        }
        return report;
    }
    }
    throw std::invalid_argument("unknown algorithm");
}

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name) {
    if (name == "mc90-scaling") return ExperimentKind::mc90_scaling;
    if (name == "vi-gamma-scaling") return ExperimentKind::vi_gamma_scaling;
    if (name == "cross-check") return ExperimentKind::cross_check;
    if (name == "stopping-rule") return ExperimentKind::stopping_rule;
    return std::nullopt;
}

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::mc90_scaling: return "mc90-scaling";
    case ExperimentKind::vi_gamma_scaling: return "vi-gamma-scaling";
    case ExperimentKind::cross_check: return "cross-check";
    case ExperimentKind::stopping_rule: return "stopping-rule";
    }
    return "unknown";
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string CsvTable::to_csv() const {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out += ',';
            out += cells[c];
        }
        out += '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return out;
}

std::string CsvTable::to_table() const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::ostringstream out;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out << "  ";
            out << cells[c] << std::string(width[c] - cells[c].size(), ' ');
        }
        out << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return out.str();
}

namespace {

template <class T>
std::vector<T> or_default(std::vector<T> values, std::vector<T> fallback) {
    return values.empty() ? fallback : values;
}

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
    std::vector<std::uint64_t> seeds(count);
    std::iota(seeds.begin(), seeds.end(), std::uint64_t{0});
    return seeds;
}

void require_gammas(const std::vector<double>& gammas) {
    for (double g : gammas) {
        if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("gamma values must lie in (0,1)");
    }
}

double max_norm_distance(const ValueVector& a, const ValueVector& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    return bellman_residual(a, b);
}

ExperimentResult run_mc90(const ExperimentSpec& spec) {
    ExperimentResult result;
    result.table.header = {"gamma",           "n_states",      "spi_switches",      "policies_visited",
                           "pi_iterations",   "vi_iterations", "predicted_switches"};
    std::optional<std::size_t> previous;
    for (double gamma : spec.gammas) {
        previous.reset();
        for (std::size_t n : spec.n_values) {
            const auto inst = mc90_family(n, gamma);
            const auto spi = simple_policy_iteration(inst.mdp, inst.initial_policy);
            const auto pi = policy_iteration(inst.mdp, inst.initial_policy);

            std::size_t vi_iterations = 0;
            value_iteration(inst.mdp, ValueVector(n, 0.0), StoppingRule::residual(1e-12, 100'000),
                            [&](std::size_t sweep, const ValueVector& v) {
                                if (vi_iterations == 0 && greedy_policy(inst.mdp, v) == inst.optimal_policy) {
                                    vi_iterations = sweep;
                                }
                            });

            result.all_passed = result.all_passed && spi.converged && pi.converged &&
                                spi.policy == inst.optimal_policy && pi.policy == inst.optimal_policy;
            if (previous && spi.iterations + 1 != 2 * (*previous + 1)) result.all_passed = false;
            previous = spi.iterations;

            result.table.rows.push_back({format_double(gamma), std::to_string(n),
                                         std::to_string(spi.iterations),
                                         std::to_string(spi.policy_trace.size()),
                                         std::to_string(pi.iterations), std::to_string(vi_iterations),
                                         std::to_string(inst.predicted_switches)});
        }
    }
    result.summary = result.all_passed
                         ? "mc90-scaling: policies visited by simple policy iteration double with every two states"
                         : "mc90-scaling: doubling law or optimality check failed";
    return result;
}

} // namespace

std::size_t observed_vi_crossing(const Mdp& mdp, std::size_t max_sweeps) {
    std::size_t crossing = 0;
    value_iteration(mdp, ValueVector(mdp.n_states(), 0.0), StoppingRule::iterations(max_sweeps),
                    [&](std::size_t sweep, const ValueVector& v) {
                        if (crossing != 0) return;
                        const auto q1 = q_value(mdp, v, 0, 0);
                        const auto q2 = q_value(mdp, v, 0, 1);
                        if (q2 < q1) crossing = sweep;
                    });
    return crossing;
}

namespace {

ExperimentResult run_vi_gamma(const ExperimentSpec& spec) {
    ExperimentResult result;
    result.table.header = {"gamma", "observed_crossing", "exact_crossing", "predicted_lower_bound"};
    for (double gamma : spec.gammas) {
        const auto inst = vi_lower_bound_family(gamma);
        const std::size_t observed = observed_vi_crossing(inst.mdp, 4 * inst.exact_crossing + 16);
        result.all_passed = result.all_passed && observed == inst.exact_crossing &&
                            (gamma < 0.5 || static_cast<double>(observed) > inst.predicted_lower_bound);
        result.table.rows.push_back({format_double(gamma), std::to_string(observed),
                                     std::to_string(inst.exact_crossing),
                                     format_double(inst.predicted_lower_bound)});
    }
    result.summary = result.all_passed ? "vi-gamma-scaling: every observed crossing matches gamma^n < 1-gamma"
                                       : "vi-gamma-scaling: crossing mismatch";
    return result;
}

constexpr double kCrossCheckTolerance = 1e-5;

ExperimentResult run_cross_check(const ExperimentSpec& spec) {
    ExperimentResult result;
    result.table.header = {"seed", "n_states", "n_actions", "gamma",   "vi",     "pi",
                           "mpi",  "lp_primal", "lp_dual",   "max_disagreement", "all_epsilon_optimal"};
    const std::vector<Algorithm> algorithms = {Algorithm::vi, Algorithm::pi, Algorithm::mpi,
                                               Algorithm::lp_primal, Algorithm::lp_dual};
    double worst = 0.0;
    for (double gamma : spec.gammas) {
        for (std::size_t n : spec.n_values) {
            for (std::size_t m : spec.m_values) {
                for (std::uint64_t seed : spec.seeds) {
                    const Mdp mdp = random_mdp(n, m, gamma, seed);
                    const auto oracle = brute_force_optimal(mdp);
                    std::vector<std::string> row = {std::to_string(seed), std::to_string(n),
                                                    std::to_string(m), format_double(gamma)};
                    double row_worst = 0.0;
                    bool all_optimal = true;
                    for (Algorithm a : algorithms) {
                        const auto report = run_algorithm(mdp, a);
                        const double d = report.converged
                                             ? max_norm_distance(report.values, oracle.optimal_values)
                                             : std::numeric_limits<double>::infinity();
                        if (!report.converged ||
                            optimality_gap(mdp, report.policy, oracle.optimal_values) > kCrossCheckTolerance) {
                            all_optimal = false;
                        }
                        row_worst = std::max(row_worst, d);
                        row.push_back(format_double(d));
                    }
                    row.push_back(format_double(row_worst));
                    row.push_back(all_optimal ? "true" : "false");
                    worst = std::max(worst, row_worst);
                    result.all_passed = result.all_passed && all_optimal && row_worst <= kCrossCheckTolerance;
                    result.table.rows.push_back(std::move(row));
                }
            }
        }
    }
    result.summary = "cross-check: worst disagreement with the exhaustive optimum " + format_double(worst) +
                     (result.all_passed ? " (within 1e-5)" : " (exceeds 1e-5)");
    return result;
}

ExperimentResult run_stopping_rule(const ExperimentSpec& spec) {
    ExperimentResult result;
    result.table.header = {"epsilon", "seed",         "n_states", "n_actions",
                           "gamma",   "residual_threshold", "iterations", "achieved_gap", "pass"};
    std::size_t failures = 0;
    for (double epsilon : spec.epsilons) {
        for (double gamma : spec.gammas) {
            for (std::size_t n : spec.n_values) {
                for (std::size_t m : spec.m_values) {
                    for (std::uint64_t seed : spec.seeds) {
                        const Mdp mdp = random_mdp(n, m, gamma, seed);
                        const auto oracle = brute_force_optimal(mdp);
                        const double threshold = stopping_threshold(epsilon, gamma);
                        const auto vi = value_iteration(mdp, ValueVector(n, 0.0),
                                                        StoppingRule::residual(threshold));
                        const double gap = optimality_gap(mdp, vi.policy, oracle.optimal_values);
                        const bool pass = gap <= epsilon;
                        if (!pass) ++failures;
                        result.table.rows.push_back({format_double(epsilon), std::to_string(seed),
                                                     std::to_string(n), std::to_string(m),
                                                     format_double(gamma), format_double(threshold),
                                                     std::to_string(vi.iterations), format_double(gap),
                                                     pass ? "true" : "false"});
                    }
                }
            }
        }
    }
    result.all_passed = failures == 0;
    result.summary = "stopping-rule: " + std::to_string(failures) + " failures in " +
                     std::to_string(result.table.rows.size()) + " runs";
    return result;
}

} // namespace

Mdp generate_from_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    std::map<std::string, std::string> params;
    if (colon != std::string::npos) {
        std::istringstream in(text.substr(colon + 1));
        std::string item;
        while (std::getline(in, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw std::invalid_argument("generator parameter '" + item + "' is not key=value");
            }
            params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    const auto take = [&](const std::string& key, const std::string& fallback) {
        auto it = params.find(key);
        if (it == params.end()) return fallback;
        std::string value = it->second;
        params.erase(it);
        return value;
    };
    const auto as_size = [](const std::string& key, const std::string& value) {
        std::size_t used = 0;
        long long parsed = 0;
        try {
            parsed = std::stoll(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size() || parsed < 0) {
            throw std::invalid_argument("generator parameter " + key + " must be a nonnegative integer");
        }
        return static_cast<std::size_t>(parsed);
    };
    const auto as_double = [](const std::string& key, const std::string& value) {
        std::size_t used = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size()) throw std::invalid_argument("generator parameter " + key + " must be a number");
        return parsed;
    };

    Mdp mdp;
    if (kind == "mc90") {
        const auto n = as_size("N", take("N", "10"));
        const auto gamma = as_double("gamma", take("gamma", format_double(kMc90DefaultDiscount)));
        mdp = mc90_family(n, gamma).mdp;
    } else if (kind == "vi-lower-bound" || kind == "fig2") {
        mdp = vi_lower_bound_family(as_double("gamma", take("gamma", "0.9"))).mdp;
    } else if (kind == "random") {
        const auto n = as_size("N", take("N", "4"));
        const auto m = as_size("M", take("M", "2"));
        const auto gamma = as_double("gamma", take("gamma", "0.9"));
        mdp = random_mdp(n, m, gamma, as_size("seed", take("seed", "0")));
    } else if (kind == "rational") {
        const auto n = as_size("N", take("N", "4"));
        const auto m = as_size("M", take("M", "2"));
        const auto gamma = as_double("gamma", take("gamma", "0.5"));
        const auto bits = as_size("bits", take("bits", "8"));
        mdp = random_rational_mdp(n, m, gamma, static_cast<unsigned>(bits),
                                  as_size("seed", take("seed", "0")));
    } else {
        throw std::invalid_argument("unknown generator '" + kind + "'");
    }
    if (!params.empty()) {
        throw std::invalid_argument("unknown generator parameter '" + params.begin()->first + "'");
    }
    return mdp;
}

ExperimentSpec normalized(ExperimentSpec spec) {
    switch (spec.kind) {
    case ExperimentKind::mc90_scaling:
        spec.n_values = or_default<std::size_t>(spec.n_values, {6, 8, 10, 12, 14});
        spec.gammas = or_default<double>(spec.gammas, {kMc90DefaultDiscount});
        for (std::size_t n : spec.n_values) {
            if (n < 6 || n % 2 != 0) throw std::invalid_argument("mc90-scaling: N must be even and >= 6");
            if (n > 40) throw std::invalid_argument("mc90-scaling: N above 40 is impractical");
        }
        break;
    case ExperimentKind::vi_gamma_scaling:
        spec.gammas = or_default<double>(spec.gammas, {0.5, 0.9, 0.99, 0.999});
        for (double g : spec.gammas) {
            if (g > 0.99999) throw std::invalid_argument("vi-gamma-scaling: gamma above 0.99999 is impractical");
        }
        break;
    case ExperimentKind::cross_check:
        spec.n_values = or_default<std::size_t>(spec.n_values, {4});
        spec.m_values = or_default<std::size_t>(spec.m_values, {2});
        spec.gammas = or_default<double>(spec.gammas, {0.9});
        spec.seeds = or_default<std::uint64_t>(spec.seeds, seed_range(10));
        break;
    case ExperimentKind::stopping_rule:
        spec.n_values = or_default<std::size_t>(spec.n_values, {4});
        spec.m_values = or_default<std::size_t>(spec.m_values, {2});
        spec.gammas = or_default<double>(spec.gammas, {0.9});
        spec.seeds = or_default<std::uint64_t>(spec.seeds, seed_range(50));
        spec.epsilons = or_default<double>(spec.epsilons, {0.1, 0.01});
        for (double e : spec.epsilons) {
            if (!(e > 0.0)) throw std::invalid_argument("stopping-rule: epsilon must be positive");
        }
        break;
    }
    require_gammas(spec.gammas);
    if (spec.kind == ExperimentKind::cross_check || spec.kind == ExperimentKind::stopping_rule) {
        for (std::size_t n : spec.n_values) {
            if (n == 0 || n > 12) throw std::invalid_argument("N must lie in [1,12] for oracle-backed runs");
        }
        for (std::size_t m : spec.m_values) {
            if (m == 0 || m > 8) throw std::invalid_argument("M must lie in [1,8] for oracle-backed runs");
        }
    }
    return spec;
}

ExperimentResult run_experiment(const ExperimentSpec& raw) {
    const ExperimentSpec spec = normalized(raw);
    switch (spec.kind) {
    case ExperimentKind::mc90_scaling: return run_mc90(spec);
    case ExperimentKind::vi_gamma_scaling: return run_vi_gamma(spec);
    case ExperimentKind::cross_check: return run_cross_check(spec);
    case ExperimentKind::stopping_rule: return run_stopping_rule(spec);
    }
    throw std::invalid_argument("unknown experiment kind");
}

} // namespace mdplab
