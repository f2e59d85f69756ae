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

#include "mdplab/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mdplab {

Mdp::Mdp(std::size_t n_states, std::size_t n_actions, double discount)
    : n_states_(n_states), n_actions_(n_actions), discount_(discount),
      transitions_(n_states * n_actions * n_states, 0.0), costs_(n_states * n_actions, 0.0) {}

std::string Violation::describe() const {
    std::ostringstream out;
    out << field;
    if (state) {
        out << " (" << *state;
        if (action) out << "," << *action;
        out << ")";
    }
    out << ": " << message;
    return out.str();
}

ValidationReport validate(const Mdp& mdp) {
    ValidationReport report;
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    if (n == 0) report.push_back({"n_states", {}, {}, "must be at least 1"});
    if (m == 0) report.push_back({"n_actions", {}, {}, "must be at least 1"});
    const double gamma = mdp.discount();
    if (!(gamma > 0.0 && gamma < 1.0)) {
        report.push_back({"discount", {}, {}, "must lie strictly between 0 and 1"});
    }
    if (mdp.rational_bits() && *mdp.rational_bits() == 0) {
        report.push_back({"rational_bits", {}, {}, "must be positive"});
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            if (!std::isfinite(mdp.cost(i, k))) {
                report.push_back({"costs", i, k, "cost is not finite"});
            }
            double sum = 0.0;
            bool bad_entry = false;
            for (double p : mdp.transition_row(i, k)) {
                if (!std::isfinite(p) || p < 0.0 || p > 1.0) bad_entry = true;
                sum += p;
            }
            if (bad_entry) {
                report.push_back({"transitions", i, k, "probability outside [0,1]"});
            }
            if (std::abs(sum - 1.0) > kRowSumTolerance) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "row sums to " << sum;
                report.push_back({"transitions", i, k, msg.str()});
            }
        }
    }
    return report;
}

ValidationReport validate_policy(const Mdp& mdp, const DeterministicPolicy& policy) {
    ValidationReport report;
    if (policy.size() != mdp.n_states()) {
        report.push_back({"policy", {}, {}, "length differs from n_states"});
        return report;
    }
    for (std::size_t i = 0; i < policy.size(); ++i) {
        if (policy[i] >= mdp.n_actions()) {
            report.push_back({"policy", i, policy[i], "action index out of range"});
        }
    }
    return report;
}

namespace {

void require_policy(const Mdp& mdp, const DeterministicPolicy& policy) {
    if (auto report = validate_policy(mdp, policy); !report.empty()) {
        throw std::invalid_argument(report.front().describe());
    }
}

void require_length(const Mdp& mdp, std::span<const double> v) {
    if (v.size() != mdp.n_states()) {
        throw std::invalid_argument("value vector length differs from n_states");
    }
}

} // namespace

ValueVector evaluate_policy(const Mdp& mdp, const DeterministicPolicy& policy) {
    require_policy(mdp, policy);
    const std::size_t n = mdp.n_states();
    const double gamma = mdp.discount();
    DenseMatrix a(n, n);
    ValueVector c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = mdp.transition_row(i, policy[i]);
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = (i == j ? 1.0 : 0.0) - gamma * row[j];
        }
        c[i] = mdp.cost(i, policy[i]);
    }
    return solve_linear_system(std::move(a), std::move(c));
}

ValueVector evaluate_stochastic_policy(const Mdp& mdp, const StochasticPolicy& policy) {
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    if (policy.rows() != n || policy.cols() != m) {
        throw std::invalid_argument("stochastic policy shape differs from the MDP");
    }
    const double gamma = mdp.discount();
    DenseMatrix a(n, n);
    ValueVector c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double w = policy(i, k);
            if (w == 0.0) continue;
            c[i] += w * mdp.cost(i, k);
            const auto row = mdp.transition_row(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= gamma * w * row[j];
            }
        }
    }
    return solve_linear_system(std::move(a), std::move(c));
}

double q_value(const Mdp& mdp, std::span<const double> v, std::size_t state, std::size_t action) {
    const auto row = mdp.transition_row(state, action);
    double expected = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        expected += row[j] * v[j];
    }
    return mdp.cost(state, action) + mdp.discount() * expected;
}

BackupResult bellman_backup(const Mdp& mdp, std::span<const double> v) {
    require_length(mdp, v);
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    BackupResult out{ValueVector(n), QTable(n, m)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            out.q(i, k) = q_value(mdp, v, i, k);
        }
        const auto row = out.q.row(i);
        out.values[i] = *std::min_element(row.begin(), row.end());
    }
    return out;
}

ValueVector policy_backup(const Mdp& mdp, const DeterministicPolicy& policy,
                          std::span<const double> v) {
    require_policy(mdp, policy);
    require_length(mdp, v);
    ValueVector out(mdp.n_states());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = q_value(mdp, v, i, policy[i]);
    }
    return out;
}

std::size_t argmin_action(std::span<const double> q_row) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < q_row.size(); ++k) {
        if (q_row[k] < q_row[best]) best = k;
    }
    return best;
}

DeterministicPolicy greedy_policy(const Mdp& mdp, std::span<const double> v) {
    const auto backup = bellman_backup(mdp, v);
    DeterministicPolicy policy(mdp.n_states());
    for (std::size_t i = 0; i < policy.size(); ++i) {
        policy[i] = argmin_action(backup.q.row(i));
    }
    return policy;
}

double bellman_residual(std::span<const double> v_new, std::span<const double> v_old) {
    if (v_new.size() != v_old.size()) {
        throw std::invalid_argument("bellman_residual: length mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < v_new.size(); ++i) {
        worst = std::max(worst, std::abs(v_new[i] - v_old[i]));
    }
    return worst;
}

double max_abs_cost(const Mdp& mdp) {
    double c_max = 0.0;
    for (std::size_t i = 0; i < mdp.n_states(); ++i) {
        for (std::size_t k = 0; k < mdp.n_actions(); ++k) {
            c_max = std::max(c_max, std::abs(mdp.cost(i, k)));
        }
    }
    return c_max;
}

double value_range_bound(const Mdp& mdp) {
    return max_abs_cost(mdp) / (1.0 - mdp.discount());
}

} // namespace mdplab
