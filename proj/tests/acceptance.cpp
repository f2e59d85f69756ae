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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "mdplab/families.hpp"
#include "mdplab/lp.hpp"
#include "mdplab/mdp.hpp"
#include "mdplab/oracle.hpp"
#include "mdplab/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mdplab;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

double max_diff(const ValueVector& a, const ValueVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::string join(const std::vector<std::size_t>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
    return out.str();
}

// The seeded corpus shared by the agreement and duality checks.
Mdp corpus_mdp(std::uint64_t seed) {
    return random_mdp(2 + seed % 5, 1 + (seed / 5) % 3, 0.9, seed);
}

ValueVector random_values(std::mt19937_64& rng, std::size_t n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    ValueVector v(n);
    for (double& x : v) x = u(rng);
    return v;
}

Outcome mc90_law() {
    Outcome out;
    std::vector<std::size_t> switches;
    std::vector<std::size_t> visited;
    std::vector<std::size_t> predicted;
    for (double gamma : {0.95, 0.999}) {
        std::vector<std::size_t> counts;
        for (std::size_t n = 6; n <= 14; n += 2) {
            const auto inst = mc90_family(n, gamma);
            const auto spi = simple_policy_iteration(inst.mdp, inst.initial_policy);
            if (!spi.converged || spi.policy != inst.optimal_policy) out.passed = false;
            counts.push_back(spi.iterations);
            if (gamma == 0.95) {
                switches.push_back(spi.iterations);
                visited.push_back(spi.policy_trace.size());
                predicted.push_back(inst.predicted_switches);
            }
        }
        if (gamma != 0.95 && counts != switches) {
            out.passed = false;
            out.detail += "counts differ between discounts; ";
        }
    }
    // Counting convention: policies visited, i.e. switches plus the initial policy.
    bool doubling = true;
    bool within_one = true;
    for (std::size_t k = 0; k < visited.size(); ++k) {
        if (k > 0 && visited[k] != 2 * visited[k - 1]) doubling = false;
        const auto diff = static_cast<long long>(visited[k]) - static_cast<long long>(predicted[k]);
        if (diff < -1 || diff > 1) within_one = false;
    }
    out.passed = out.passed && doubling && within_one;
    out.detail += "switches " + join(switches) + ", policies visited " + join(visited) + " vs 2^(N/2-2) " +
                  join(predicted) + (doubling ? "; doubling exact" : "; doubling broken") +
                  (within_one ? "; within +-1" : "; not within +-1");
    return out;
}

Outcome pi_beats_spi() {
    const auto inst = mc90_family(14);
    const auto pi = policy_iteration(inst.mdp, inst.initial_policy);
    const auto spi = simple_policy_iteration(inst.mdp, inst.initial_policy);
    Outcome out;
    out.passed = pi.converged && spi.converged && pi.iterations < spi.iterations;
    out.detail = "N=14: policy iteration " + std::to_string(pi.iterations) + " phases, simple policy iteration " +
                 std::to_string(spi.iterations) + " switches";
    return out;
}

Outcome vi_gamma_dependence() {
    Outcome out;
    const std::vector<std::size_t> expected{2, 22, 459, 6905};
    std::vector<std::size_t> observed;
    const double gammas[] = {0.5, 0.9, 0.99, 0.999};
    for (std::size_t g = 0; g < 4; ++g) {
        const double gamma = gammas[g];
        const auto inst = vi_lower_bound_family(gamma);
        std::size_t first = 0;
        value_iteration(inst.mdp, ValueVector(inst.mdp.n_states(), 0.0), StoppingRule::iterations(100'000),
                        [&](std::size_t n, const ValueVector& v) {
                            if (first == 0 && greedy_policy(inst.mdp, v)[0] == 1) first = n;
                        });
        observed.push_back(first);
        std::size_t smallest = 1;
        while (!(std::pow(gamma, static_cast<double>(smallest)) < 1.0 - gamma)) ++smallest;
        if (first != smallest || first != expected[g] ||
            !(static_cast<double>(first) > inst.predicted_lower_bound)) {
            out.passed = false;
        }
    }
    out.detail = "first greedy switch at " + join(observed) + " (expected " + join(expected) + ")";
    return out;
}

Outcome five_way_agreement() {
    Outcome out;
    double worst = 0.0;
    std::size_t not_optimal = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Mdp mdp = corpus_mdp(seed);
        const std::size_t n = mdp.n_states();
        const auto truth = brute_force_optimal(mdp);
        const DeterministicPolicy zero(n, 0);

        std::vector<std::pair<ValueVector, DeterministicPolicy>> answers;
        const auto vi = value_iteration(mdp, ValueVector(n, 0.0), StoppingRule::epsilon(1e-6));
        answers.emplace_back(vi.values, vi.policy);
        const auto pi = policy_iteration(mdp, zero);
        answers.emplace_back(pi.values, pi.policy);
        const auto mpi = modified_policy_iteration(mdp, zero, 5);
        answers.emplace_back(mpi.values, mpi.policy);

        const auto primal = solve_lp(build_primal(mdp));
        const auto dual = solve_lp(build_dual(mdp));
        if (primal.status != LpStatus::optimal || dual.status != LpStatus::optimal) {
            out.passed = false;
            continue;
        }
        answers.emplace_back(primal.values, greedy_policy(mdp, primal.values));
        const auto stochastic = dual_to_stochastic_policy(mdp, dual.values);
        answers.emplace_back(evaluate_stochastic_policy(mdp, stochastic),
                             stochastic_to_deterministic(dual.values, mdp.n_actions()));

        for (const auto& [values, policy] : answers) {
            worst = std::max(worst, max_diff(values, truth.optimal_values));
            if (!is_epsilon_optimal(mdp, policy, 1e-5)) ++not_optimal;
        }
        if (!vi.converged || !pi.converged || !mpi.converged) out.passed = false;
    }
    out.passed = out.passed && worst <= 1e-5 && not_optimal == 0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "100 MDPs x 5 solvers: worst value error %.3g, non-optimal policies %zu",
                  worst, not_optimal);
    out.detail = buf;
    return out;
}

Outcome stopping_rule() {
    std::size_t failures = 0;
    std::size_t runs = 0;
    double worst = 0.0;
    for (double eps : {0.1, 0.01}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const Mdp mdp = random_mdp(2 + seed % 5, 2 + seed % 2, 0.9, 1000 + seed);
            const auto truth = brute_force_optimal(mdp);
            const auto vi = value_iteration(mdp, ValueVector(mdp.n_states(), 0.0), StoppingRule::epsilon(eps));
            const double gap = optimality_gap(mdp, vi.policy, truth.optimal_values);
            worst = std::max(worst, gap / eps);
            if (!vi.converged || gap > eps) ++failures;
            ++runs;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu runs, %zu failures, worst gap/eps %.3g", runs, failures, worst);
    return {failures == 0, buf};
}

Outcome iteration_bound() {
    Outcome out;
    const double eps = 1e-3;
    std::size_t worst_used = 0;
    std::size_t bound_at_worst = 0;
    for (double gamma : {0.5, 0.9}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const unsigned bits = 4 + seed % 5;
            const Mdp mdp = random_rational_mdp(2 + seed % 4, 2 + seed % 2, gamma, bits, 2000 + seed);
            const auto truth = brute_force_optimal(mdp);
            const std::size_t bound = iteration_upper_bound(*mdp.rational_bits(), eps, gamma);
            std::size_t needed = 0;
            if (optimality_gap(mdp, greedy_policy(mdp, ValueVector(mdp.n_states(), 0.0)), truth.optimal_values) <=
                eps) {
                needed = 0;
            } else {
                value_iteration(mdp, ValueVector(mdp.n_states(), 0.0), StoppingRule::iterations(bound + 1),
                                [&](std::size_t n, const ValueVector& v) {
                                    if (needed == 0 &&
                                        optimality_gap(mdp, greedy_policy(mdp, v), truth.optimal_values) <= eps) {
                                        needed = n;
                                    }
                                });
                if (needed == 0) needed = bound + 1;
            }
            if (needed > bound) out.passed = false;
            if (needed >= worst_used) {
                worst_used = needed;
                bound_at_worst = bound;
            }
        }
    }
    out.detail = "40 rational MDPs: most iterations needed " + std::to_string(worst_used) + " (bound " +
                 std::to_string(bound_at_worst) + ")";
    return out;
}

Outcome pi_dominates_vi() {
    Outcome out;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Mdp mdp = random_mdp(3 + seed % 4, 2 + seed % 3, 0.9, 3000 + seed);
        const DeterministicPolicy init(mdp.n_states(), 0);
        const auto pi = policy_iteration(mdp, init);
        const std::size_t horizon = pi.policy_trace.size() + 20;
        std::vector<ValueVector> pi_values;
        for (const auto& p : pi.policy_trace) pi_values.push_back(evaluate_policy(mdp, p));

        ValueVector v = evaluate_policy(mdp, init);
        for (std::size_t n = 0; n <= horizon; ++n) {
            const auto& e = pi_values[std::min(n, pi_values.size() - 1)];
            for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, e[i] - v[i]);
            v = bellman_backup(mdp, v).values;
        }
    }
    out.passed = worst <= 1e-9;
    char buf[128];
    std::snprintf(buf, sizeof buf, "20 MDPs: max of E_pi_n - v_n is %.3g", worst);
    out.detail = buf;
    return out;
}

Outcome lp_structure() {
    Outcome out;
    bool sizes = true;
    double worst_duality = 0.0;
    double worst_basis = 0.0;
    std::mt19937_64 rng(4000);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Mdp mdp = corpus_mdp(seed);
        const std::size_t n = mdp.n_states();
        const std::size_t m = mdp.n_actions();
        const auto primal_lp = build_primal(mdp);
        const auto dual_lp = build_dual(mdp);
        sizes = sizes && primal_lp.n_constraints() == n * m && primal_lp.n_variables() == n &&
                dual_lp.n_constraints() == n && dual_lp.n_variables() == n * m;
        const auto primal = solve_lp(primal_lp);
        const auto dual = solve_lp(dual_lp);
        if (primal.status != LpStatus::optimal || dual.status != LpStatus::optimal) {
            out.passed = false;
            continue;
        }
        worst_duality = std::max(worst_duality, std::abs(primal.objective_value - dual.objective_value) /
                                                    (1.0 + std::abs(primal.objective_value)));
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        for (int r = 0; r < 20; ++r) {
            DeterministicPolicy policy(n);
            for (auto& a : policy) a = pick(rng);
            worst_basis = std::max(worst_basis,
                                   max_diff(policy_basis_solution(mdp, policy), evaluate_policy(mdp, policy)));
        }
    }
    out.passed = out.passed && sizes && worst_duality <= 1e-6 && worst_basis <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf, "sizes %s, relative duality gap %.3g, basis vs evaluation %.3g",
                  sizes ? "match" : "mismatch", worst_duality, worst_basis);
    out.detail = buf;
    return out;
}

Outcome contraction_and_range() {
    std::mt19937_64 rng(5000);
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < 100; ++k) {
        const Mdp mdp = random_mdp(2 + k % 7, 1 + k % 4, 0.05 + 0.0094 * static_cast<double>(k), 5000 + k);
        const auto v = random_values(rng, mdp.n_states(), 100.0);
        const auto u = random_values(rng, mdp.n_states(), 100.0);
        const double lhs = max_diff(bellman_backup(mdp, v).values, bellman_backup(mdp, u).values);
        worst_excess = std::max(worst_excess, lhs - mdp.discount() * max_diff(v, u));
    }
    bool range_ok = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Mdp mdp = corpus_mdp(seed);
        const auto truth = brute_force_optimal(mdp);
        const double bound = max_abs_cost(mdp) / (1.0 - mdp.discount()) + 1e-9;
        for (double x : truth.optimal_values) range_ok = range_ok && std::abs(x) <= bound;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max contraction excess %.3g, range bound %s", worst_excess,
                  range_ok ? "holds" : "violated");
    return {worst_excess <= 1e-12 && range_ok, buf};
}

struct Criterion {
    int id;
    const char* name;
    double time_limit;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "simple policy iteration doubling law on the exponential family", 5.0, mc90_law},
        {2, "policy iteration needs fewer iterations than simple policy iteration", 1.0, pi_beats_spi},
        {3, "value iteration crossing point on the two-action family", 10.0, vi_gamma_dependence},
        {4, "five solvers agree with brute force", 60.0, five_way_agreement},
        {5, "epsilon stopping rule yields epsilon-optimal policies", 0.0, stopping_rule},
        {6, "value iteration within the iteration upper bound", 0.0, iteration_bound},
        {7, "policy iteration dominates value iteration", 0.0, pi_dominates_vi},
        {8, "LP sizes, strong duality, basis solutions", 0.0, lp_structure},
        {9, "contraction and value range", 0.0, contraction_and_range},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out = c.run();
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && seconds >= c.time_limit) {
            out.passed = false;
            out.detail += "; over time limit";
        }
        all = all && out.passed;
        std::printf("[%s] criterion %d: %s (%s; %.3fs)\n", out.passed ? "PASS" : "FAIL", c.id, c.name,
                    out.detail.c_str(), seconds);
    }
    return all ? 0 : 1;
}
