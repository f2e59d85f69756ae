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

#pragma once

#include "mdplab/mdp.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mdplab {

/// When to stop an iterative solver. At least one of the three fields must be
/// set; use the factory functions, which enforce that.
class StoppingRule {
public:
    static StoppingRule iterations(std::size_t max_iterations);
    static StoppingRule residual(double threshold, std::optional<std::size_t> max_iterations = {});
    /// Residual threshold derived from an epsilon-optimality target.
    static StoppingRule epsilon(double epsilon, std::optional<std::size_t> max_iterations = {});

    std::optional<std::size_t> max_iterations() const { return max_iterations_; }
    std::optional<double> residual_threshold() const { return residual_threshold_; }
    std::optional<double> epsilon_target() const { return epsilon_target_; }

    /// Threshold actually compared against the Bellman residual.
    std::optional<double> effective_threshold(double gamma) const;

private:
    StoppingRule() = default;

    std::optional<std::size_t> max_iterations_;
    std::optional<double> residual_threshold_;
    std::optional<double> epsilon_target_;
};

struct SolveReport {
    std::string algorithm_name;
    DeterministicPolicy policy;
    ValueVector values;
    std::size_t iterations = 0;
    std::vector<double> residual_history;
    std::vector<std::size_t> policy_change_history;
    /// Policies visited by the policy-style solvers, starting with the initial one.
    std::vector<DeterministicPolicy> policy_trace;
    bool converged = false;
};

/// Called after every value-iteration sweep with the 1-based sweep count and
/// the new iterate.
using IterationObserver = std::function<void(std::size_t, const ValueVector&)>;

/// Residual below which an epsilon-optimal greedy policy is guaranteed:
/// epsilon (1 - gamma) / (2 gamma).
double stopping_threshold(double epsilon, double gamma);

/// Ceiling of (B + log2(1/eps) + log2(1/(1-gamma)) + 1) / (1 - gamma).
std::size_t iteration_upper_bound(unsigned bits, double epsilon, double gamma);

/// Successive approximation v <- T v until the residual drops below the rule's
/// threshold or the iteration cap is hit. The returned policy is greedy with
/// respect to the final iterate.
SolveReport value_iteration(const Mdp& mdp, ValueVector init, const StoppingRule& stop,
                            const IterationObserver& observer = {});

/// Howard's policy iteration: exact evaluation, then improvement at every
/// state with a strictly better action. `iterations` counts improvement phases.
SolveReport policy_iteration(const Mdp& mdp, DeterministicPolicy init,
                             std::size_t max_iterations = 1'000'000);

/// Sequential improvement: only the smallest-index improvable state switches
/// per iteration, and the policy is re-evaluated exactly after every switch.
/// `iterations` counts single-state switches.
SolveReport simple_policy_iteration(const Mdp& mdp, DeterministicPolicy init,
                                    std::size_t max_switches = 10'000'000);

/// Policy iteration with the evaluation step replaced by `sweeps` fixed-policy
/// backups started from the previous estimate. Terminates once the policy is
/// stable and the optimality residual is below `residual_threshold`.
SolveReport modified_policy_iteration(const Mdp& mdp, DeterministicPolicy init,
                                      std::size_t sweeps, double residual_threshold = 1e-10,
                                      std::size_t max_iterations = 10'000'000);

} // namespace mdplab
