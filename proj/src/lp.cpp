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

#include "mdplab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdplab {

void LpProgram::check_well_formed() const {
    const std::size_t width = objective.size();
    if (variable_names.size() != width || bounds.size() != width) {
        throw std::invalid_argument("LP: names/bounds do not match the objective width");
    }
    for (double c : objective) {
        if (!std::isfinite(c)) throw std::invalid_argument("LP: non-finite objective coefficient");
    }
    for (const auto& row : constraints) {
        if (row.coefficients.size() != width) {
            throw std::invalid_argument("LP: constraint '" + row.label + "' has the wrong width");
        }
        for (double a : row.coefficients) {
            if (!std::isfinite(a)) {
                throw std::invalid_argument("LP: non-finite coefficient in '" + row.label + "'");
            }
        }
        if (!std::isfinite(row.rhs)) {
            throw std::invalid_argument("LP: non-finite right-hand side in '" + row.label + "'");
        }
    }
    for (const auto& b : bounds) {
        if (b.lower > b.upper) throw std::invalid_argument("LP: empty variable bound");
    }
}

std::string to_string(LpStatus status) {
    switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

LpProgram build_primal(const Mdp& mdp) {
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    const double gamma = mdp.discount();

    LpProgram lp;
    lp.sense = Sense::maximize;
    lp.objective.assign(n, 1.0);
    lp.bounds.assign(n, VariableBounds::free());
    for (std::size_t j = 0; j < n; ++j) {
        lp.variable_names.push_back("v" + std::to_string(j));
    }
    lp.constraints.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            LpConstraint row;
            row.label = "bellman_s" + std::to_string(i) + "_a" + std::to_string(k);
            row.coefficients.resize(n);
            const auto p = mdp.transition_row(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                row.coefficients[j] = (i == j ? 1.0 : 0.0) - gamma * p[j];
            }
            row.relation = Relation::less_equal;
            row.rhs = mdp.cost(i, k);
            lp.constraints.push_back(std::move(row));
        }
    }
    return lp;
}

LpProgram build_dual(const Mdp& mdp) {
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    const double gamma = mdp.discount();

    LpProgram lp;
    lp.sense = Sense::minimize;
    lp.objective.resize(n * m);
    lp.bounds.assign(n * m, VariableBounds::nonnegative());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            lp.objective[i * m + k] = mdp.cost(i, k);
            lp.variable_names.push_back("x" + std::to_string(i) + "_" + std::to_string(k));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        LpConstraint row;
        row.label = "flow_s" + std::to_string(j);
        row.coefficients.assign(n * m, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < m; ++k) {
                row.coefficients[i * m + k] = (i == j ? 1.0 : 0.0) - gamma * mdp.prob(i, k, j);
            }
        }
        row.relation = Relation::equal;
        row.rhs = 1.0;
        lp.constraints.push_back(std::move(row));
    }
    return lp;
}

StochasticPolicy dual_to_stochastic_policy(const Mdp& mdp, std::span<const double> dual_values) {
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    if (dual_values.size() != n * m) {
        throw std::invalid_argument("dual vector length differs from N*M");
    }
    StochasticPolicy policy(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double x = dual_values[i * m + k];
            if (x < -1e-9) {
                throw InfeasibleFlowError("negative flow at state " + std::to_string(i));
            }
            total += std::max(x, 0.0);
        }
        if (total <= 1e-12) {
            throw InfeasibleFlowError("no flow through state " + std::to_string(i));
        }
        for (std::size_t k = 0; k < m; ++k) {
            policy(i, k) = std::max(dual_values[i * m + k], 0.0) / total;
        }
    }
    return policy;
}

DeterministicPolicy stochastic_to_deterministic(std::span<const double> dual_values,
                                                std::size_t n_actions) {
    if (n_actions == 0 || dual_values.size() % n_actions != 0) {
        throw std::invalid_argument("dual vector length is not a multiple of n_actions");
    }
    const std::size_t n = dual_values.size() / n_actions;
    DeterministicPolicy policy(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = dual_values.subspan(i * n_actions, n_actions);
        std::size_t best = 0;
        for (std::size_t k = 1; k < n_actions; ++k) {
            if (row[k] > row[best]) best = k;
        }
        policy[i] = best;
    }
    return policy;
}

ValueVector policy_basis_solution(const Mdp& mdp, const DeterministicPolicy& policy) {
    if (auto report = validate_policy(mdp, policy); !report.empty()) {
        throw std::invalid_argument(report.front().describe());
    }
    const LpProgram primal = build_primal(mdp);
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    DenseMatrix a(n, n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = primal.constraints[i * m + policy[i]];
        std::copy(row.coefficients.begin(), row.coefficients.end(), a.row(i).begin());
        b[i] = row.rhs;
    }
    return solve_linear_system(std::move(a), std::move(b));
}

double max_constraint_violation(const LpProgram& lp, std::span<const double> x) {
    if (x.size() != lp.n_variables()) {
        throw std::invalid_argument("point dimension differs from the LP");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, lp.bounds[j].lower - x[j]);
        worst = std::max(worst, x[j] - lp.bounds[j].upper);
    }
    for (const auto& row : lp.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coefficients[j] * x[j];
        switch (row.relation) {
        case Relation::less_equal: worst = std::max(worst, lhs - row.rhs); break;
        case Relation::greater_equal: worst = std::max(worst, row.rhs - lhs); break;
        case Relation::equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

} // namespace mdplab
