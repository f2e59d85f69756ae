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

#include "mdplab/linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mdplab {

/// Per-state total-cost estimate.
using ValueVector = std::vector<double>;

/// State -> action index map, one entry per state.
using DeterministicPolicy = std::vector<std::size_t>;

/// Q-values indexed (state, action).
using QTable = DenseMatrix;

/// Row-stochastic state -> action distribution, N x M.
using StochasticPolicy = DenseMatrix;

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kValueTolerance = 1e-9;

/// Tabular discounted-cost Markov decision process.
///
/// Transitions are stored densely as p[i][k][j]; costs as c[i][k]. Costs are
/// minimized. A state without a real choice is encoded by repeating the same
/// transition row and cost under every action.
class Mdp {
public:
    Mdp() = default;
    Mdp(std::size_t n_states, std::size_t n_actions, double discount);

    std::size_t n_states() const { return n_states_; }
    std::size_t n_actions() const { return n_actions_; }
    double discount() const { return discount_; }
    void set_discount(double discount) { discount_ = discount; }

    double& prob(std::size_t i, std::size_t k, std::size_t j) {
        return transitions_[(i * n_actions_ + k) * n_states_ + j];
    }
    double prob(std::size_t i, std::size_t k, std::size_t j) const {
        return transitions_[(i * n_actions_ + k) * n_states_ + j];
    }
    std::span<double> transition_row(std::size_t i, std::size_t k) {
        return {transitions_.data() + (i * n_actions_ + k) * n_states_, n_states_};
    }
    std::span<const double> transition_row(std::size_t i, std::size_t k) const {
        return {transitions_.data() + (i * n_actions_ + k) * n_states_, n_states_};
    }

    double& cost(std::size_t i, std::size_t k) { return costs_[i * n_actions_ + k]; }
    double cost(std::size_t i, std::size_t k) const { return costs_[i * n_actions_ + k]; }

    /// Bit count of the rational inputs, when they are known to be exact.
    std::optional<unsigned> rational_bits() const { return rational_bits_; }
    void set_rational_bits(std::optional<unsigned> bits) { rational_bits_ = bits; }

    bool operator==(const Mdp&) const = default;

private:
    std::size_t n_states_ = 0;
    std::size_t n_actions_ = 0;
    double discount_ = 0.0;
    std::vector<double> transitions_;
    std::vector<double> costs_;
    std::optional<unsigned> rational_bits_;
};

/// One violated invariant. `state`/`action` are set when the violation is
/// local to a transition row or a cost entry.
struct Violation {
    std::string field;
    std::optional<std::size_t> state;
    std::optional<std::size_t> action;
    std::string message;

    std::string describe() const;
};

using ValidationReport = std::vector<Violation>;

/// Checks every structural invariant. Empty result means the MDP is valid.
ValidationReport validate(const Mdp& mdp);

/// Checks a policy against an MDP's shape.
ValidationReport validate_policy(const Mdp& mdp, const DeterministicPolicy& policy);

/// Total discounted cost of a stationary deterministic policy, obtained by
/// solving (I - gamma P_pi) v = c_pi.
ValueVector evaluate_policy(const Mdp& mdp, const DeterministicPolicy& policy);

/// Total discounted cost of a stationary stochastic policy.
ValueVector evaluate_stochastic_policy(const Mdp& mdp, const StochasticPolicy& policy);

/// c_i^k + gamma * sum_j p_ij^k v_j for a single pair.
double q_value(const Mdp& mdp, std::span<const double> v, std::size_t state, std::size_t action);

struct BackupResult {
    ValueVector values;
    QTable q;
};

/// One application of the optimality operator: q-table and its row minima.
BackupResult bellman_backup(const Mdp& mdp, std::span<const double> v);

/// One application of the fixed-policy operator v <- c_pi + gamma P_pi v.
ValueVector policy_backup(const Mdp& mdp, const DeterministicPolicy& policy,
                          std::span<const double> v);

/// Smallest index attaining the row minimum of a q-table row.
std::size_t argmin_action(std::span<const double> q_row);

/// Policy that is greedy with respect to `v` (smallest index on ties).
DeterministicPolicy greedy_policy(const Mdp& mdp, std::span<const double> v);

/// Max-norm distance between successive iterates. Throws on length mismatch.
double bellman_residual(std::span<const double> v_new, std::span<const double> v_old);

/// C_max / (1 - gamma), where C_max is the largest absolute cost.
double value_range_bound(const Mdp& mdp);

/// Largest absolute instantaneous cost.
double max_abs_cost(const Mdp& mdp);

} // namespace mdplab
