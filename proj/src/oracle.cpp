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

#include "mdplab/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mdplab {

namespace {

std::size_t policy_count(const Mdp& mdp, std::size_t limit) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < mdp.n_states(); ++i) {
        if (count > limit / mdp.n_actions()) {
            throw OracleLimitError("M^N exceeds the oracle limit of " + std::to_string(limit));
        }
        count *= mdp.n_actions();
    }
    if (count > limit) {
        throw OracleLimitError("M^N exceeds the oracle limit of " + std::to_string(limit));
    }
    return count;
}

// Odometer increment with the last state varying fastest.
void next_policy(DeterministicPolicy& policy, std::size_t n_actions) {
    for (std::size_t i = policy.size(); i-- > 0;) {
        if (++policy[i] < n_actions) return;
        policy[i] = 0;
    }
}

} // namespace

OracleResult brute_force_optimal(const Mdp& mdp, std::size_t limit) {
    if (auto report = validate(mdp); !report.empty()) {
        throw std::invalid_argument("invalid MDP: " + report.front().describe());
    }
    const std::size_t total = policy_count(mdp, limit);
    const std::size_t n = mdp.n_states();

    OracleResult result;
    result.optimal_values.assign(n, std::numeric_limits<double>::infinity());
    DeterministicPolicy policy(n, 0);
    for (std::size_t p = 0; p < total; ++p) {
        const ValueVector v = evaluate_policy(mdp, policy);
        for (std::size_t i = 0; i < n; ++i) {
            result.optimal_values[i] = std::min(result.optimal_values[i], v[i]);
        }
        next_policy(policy, mdp.n_actions());
    }
    result.policies_examined = total;

    // Witness: first policy in enumeration order attaining the pointwise
    // minimum. Re-evaluating is cheaper than holding M^N value vectors.
    policy.assign(n, 0);
    for (std::size_t p = 0; p < total; ++p) {
        const ValueVector v = evaluate_policy(mdp, policy);
        bool attains = true;
        for (std::size_t i = 0; i < n && attains; ++i) {
            attains = v[i] <= result.optimal_values[i] + kValueTolerance;
        }
        if (attains) {
            result.optimal_policy = policy;
            return result;
        }
        next_policy(policy, mdp.n_actions());
    }
    throw DominanceError("no enumerated policy dominates all others");
}

bool verify_optimality_equations(const Mdp& mdp, std::span<const double> v, double tol) {
    const auto backup = bellman_backup(mdp, v);
    return bellman_residual(backup.values, v) <= tol;
}

double optimality_gap(const Mdp& mdp, const DeterministicPolicy& policy,
                      std::span<const double> optimal_values) {
    const ValueVector v = evaluate_policy(mdp, policy);
    double gap = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) gap = std::max(gap, v[i] - optimal_values[i]);
    return gap;
}

bool is_epsilon_optimal(const Mdp& mdp, const DeterministicPolicy& policy, double epsilon,
                        std::size_t limit) {
    const auto oracle = brute_force_optimal(mdp, limit);
    return optimality_gap(mdp, policy, oracle.optimal_values) <= epsilon;
}

} // namespace mdplab
