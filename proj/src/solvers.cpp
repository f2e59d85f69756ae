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

#include "mdplab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdplab {

namespace {

// Strict-improvement test with a relative guard so that rounding noise in the
// linear solve never counts as an improvement.
bool strictly_better(double candidate, double current) {
    return candidate < current - 1e-12 * std::max(1.0, std::abs(current));
}

void require_valid(const Mdp& mdp) {
    if (auto report = validate(mdp); !report.empty()) {
        throw std::invalid_argument("invalid MDP: " + report.front().describe());
    }
}

void require_valid(const Mdp& mdp, const DeterministicPolicy& policy) {
    require_valid(mdp);
    if (auto report = validate_policy(mdp, policy); !report.empty()) {
        throw std::invalid_argument("invalid policy: " + report.front().describe());
    }
}

std::size_t count_changes(const DeterministicPolicy& a, const DeterministicPolicy& b) {
    std::size_t changes = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++changes;
    }
    return changes;
}

} // namespace

StoppingRule StoppingRule::iterations(std::size_t max_iterations) {
    StoppingRule rule;
    rule.max_iterations_ = max_iterations;
    return rule;
}

StoppingRule StoppingRule::residual(double threshold, std::optional<std::size_t> max_iterations) {
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("residual threshold must be positive");
    }
    StoppingRule rule;
    rule.residual_threshold_ = threshold;
    rule.max_iterations_ = max_iterations;
    return rule;
}

StoppingRule StoppingRule::epsilon(double epsilon, std::optional<std::size_t> max_iterations) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    StoppingRule rule;
    rule.epsilon_target_ = epsilon;
    rule.max_iterations_ = max_iterations;
    return rule;
}

std::optional<double> StoppingRule::effective_threshold(double gamma) const {
    if (residual_threshold_) return residual_threshold_;
    if (epsilon_target_) return stopping_threshold(*epsilon_target_, gamma);
    return std::nullopt;
}

double stopping_threshold(double epsilon, double gamma) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
    return epsilon * (1.0 - gamma) / (2.0 * gamma);
}

std::size_t iteration_upper_bound(unsigned bits, double epsilon, double gamma) {
    if (bits == 0) throw std::invalid_argument("bits must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
    const double numerator =
        static_cast<double>(bits) + std::log2(1.0 / epsilon) + std::log2(1.0 / (1.0 - gamma)) + 1.0;
    const double bound = numerator / (1.0 - gamma);
    // Values such as 3/0.5 must not round up to 7 because of representation error.
    const double rounded = std::round(bound);
    if (std::abs(bound - rounded) <= 1e-9 * std::max(1.0, rounded)) {
        return static_cast<std::size_t>(rounded);
    }
    return static_cast<std::size_t>(std::ceil(bound));
}

SolveReport value_iteration(const Mdp& mdp, ValueVector init, const StoppingRule& stop,
                            const IterationObserver& observer) {
    require_valid(mdp);
    if (init.size() != mdp.n_states()) {
        throw std::invalid_argument("initial value vector length differs from n_states");
    }
    const auto threshold = stop.effective_threshold(mdp.discount());
    const auto max_iterations = stop.max_iterations();

    SolveReport report;
    report.algorithm_name = "value-iteration";
    ValueVector v = std::move(init);
    while (!max_iterations || report.iterations < *max_iterations) {
        auto next = bellman_backup(mdp, v).values;
        const double residual = bellman_residual(next, v);
        v = std::move(next);
        ++report.iterations;
        report.residual_history.push_back(residual);
        if (observer) observer(report.iterations, v);
        if (threshold && residual < *threshold) {
            report.converged = true;
            break;
        }
    }
    report.policy = greedy_policy(mdp, v);
    report.values = std::move(v);
    return report;
}

SolveReport policy_iteration(const Mdp& mdp, DeterministicPolicy init, std::size_t max_iterations) {
    require_valid(mdp, init);
    SolveReport report;
    report.algorithm_name = "policy-iteration";
    DeterministicPolicy policy = std::move(init);
    report.policy_trace.push_back(policy);

    while (report.iterations < max_iterations) {
        const ValueVector v = evaluate_policy(mdp, policy);
        const auto backup = bellman_backup(mdp, v);
        DeterministicPolicy next = policy;
        for (std::size_t i = 0; i < next.size(); ++i) {
            const auto row = backup.q.row(i);
            const std::size_t best = argmin_action(row);
            if (strictly_better(row[best], v[i])) next[i] = best;
        }
        ++report.iterations;
        const std::size_t changes = count_changes(policy, next);
        report.policy_change_history.push_back(changes);
        report.residual_history.push_back(bellman_residual(backup.values, v));
        report.values = v;
        if (changes == 0) {
            report.converged = true;
            break;
        }
        policy = std::move(next);
        report.policy_trace.push_back(policy);
    }
    if (!report.converged) report.values = evaluate_policy(mdp, policy);
    report.policy = std::move(policy);
    return report;
}

SolveReport simple_policy_iteration(const Mdp& mdp, DeterministicPolicy init,
                                    std::size_t max_switches) {
    require_valid(mdp, init);
    SolveReport report;
    report.algorithm_name = "simple-policy-iteration";
    DeterministicPolicy policy = std::move(init);
    report.policy_trace.push_back(policy);

    for (;;) {
        ValueVector v = evaluate_policy(mdp, policy);
        std::optional<std::pair<std::size_t, std::size_t>> change;
        for (std::size_t i = 0; i < policy.size() && !change; ++i) {
            for (std::size_t k = 0; k < mdp.n_actions(); ++k) {
                if (k != policy[i] && strictly_better(q_value(mdp, v, i, k), v[i])) {
                    change.emplace(i, k);
                    break;
                }
            }
        }
        if (!change) {
            report.policy_change_history.push_back(0);
            report.values = std::move(v);
            report.converged = true;
            break;
        }
        if (report.iterations == max_switches) {
            report.values = std::move(v);
            break;
        }
        policy[change->first] = change->second;
        ++report.iterations;
        report.policy_change_history.push_back(1);
        report.policy_trace.push_back(policy);
    }
    report.policy = std::move(policy);
    return report;
}

SolveReport modified_policy_iteration(const Mdp& mdp, DeterministicPolicy init,
                                      std::size_t sweeps, double residual_threshold,
                                      std::size_t max_iterations) {
    require_valid(mdp, init);
    if (sweeps == 0) throw std::invalid_argument("sweeps must be at least 1");
    if (!(residual_threshold > 0.0)) {
        throw std::invalid_argument("residual threshold must be positive");
    }
    SolveReport report;
    report.algorithm_name = "modified-policy-iteration";
    DeterministicPolicy policy = std::move(init);
    report.policy_trace.push_back(policy);
    ValueVector v(mdp.n_states(), 0.0);

    while (report.iterations < max_iterations) {
        for (std::size_t s = 0; s < sweeps; ++s) {
            v = policy_backup(mdp, policy, v);
        }
        const auto backup = bellman_backup(mdp, v);
        DeterministicPolicy next = policy;
        for (std::size_t i = 0; i < next.size(); ++i) {
            const auto row = backup.q.row(i);
            const std::size_t best = argmin_action(row);
            if (strictly_better(row[best], row[policy[i]])) next[i] = best;
        }
        ++report.iterations;
        const std::size_t changes = count_changes(policy, next);
        const double residual = bellman_residual(backup.values, v);
        report.policy_change_history.push_back(changes);
        report.residual_history.push_back(residual);
        if (changes == 0 && residual < residual_threshold) {
            report.converged = true;
            break;
        }
        if (changes != 0) {
            policy = std::move(next);
            report.policy_trace.push_back(policy);
        }
    }
    report.values = std::move(v);
    report.policy = std::move(policy);
    return report;
}

} // namespace mdplab
