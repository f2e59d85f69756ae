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
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdplab {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct VariableBounds {
    double lower = 0.0;
    double upper = kInfinity;

    static VariableBounds free() { return {-kInfinity, kInfinity}; }
    static VariableBounds nonnegative() { return {0.0, kInfinity}; }

    bool operator==(const VariableBounds&) const = default;
};

struct LpConstraint {
    std::string label;
    std::vector<double> coefficients;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;

    bool operator==(const LpConstraint&) const = default;
};

/// Dense linear program: objective, rows and per-variable bounds.
struct LpProgram {
    Sense sense = Sense::minimize;
    std::vector<double> objective;
    std::vector<std::string> variable_names;
    std::vector<VariableBounds> bounds;
    std::vector<LpConstraint> constraints;

    std::size_t n_variables() const { return objective.size(); }
    std::size_t n_constraints() const { return constraints.size(); }

    /// Throws std::invalid_argument when widths disagree or a coefficient is
    /// not finite.
    void check_well_formed() const;

    bool operator==(const LpProgram&) const = default;
};

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

std::string to_string(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::numerical_failure;
    std::vector<double> values;   // empty unless optimal
    double objective_value = 0.0; // meaningful only when optimal
    std::size_t pivots = 0;
};

enum class PivotRule { bland, dantzig };

struct SimplexOptions {
    PivotRule rule = PivotRule::bland;
    double pivot_tolerance = 1e-9;
    double feasibility_tolerance = 1e-7;
    std::size_t max_pivots = 1'000'000;
};

/// maximize sum_j v_j s.t. (e_i - gamma p_i^k) . v <= c_i^k for every (i,k).
/// Row order is state-major: row i*M + k. Variables are free.
LpProgram build_primal(const Mdp& mdp);

/// minimize sum x_i^k c_i^k s.t. sum_k x_j^k - gamma sum_{i,k} p_ij^k x_i^k = 1
/// for every j, x >= 0. Variable order is state-major: column i*M + k.
LpProgram build_dual(const Mdp& mdp);

/// Dense two-phase tableau simplex.
LpSolution solve_lp(const LpProgram& lp, const SimplexOptions& options = {});

/// Thrown when a state carries no dual flow.
class InfeasibleFlowError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Normalizes per-state occupancy flows x_i^k into action probabilities.
StochasticPolicy dual_to_stochastic_policy(const Mdp& mdp, std::span<const double> dual_values);

/// argmax_k x_i^k per state, smallest index on ties. `n_actions` fixes the
/// row width of the state-major flow vector.
DeterministicPolicy stochastic_to_deterministic(std::span<const double> dual_values,
                                                std::size_t n_actions);

/// Solves the primal rows indexed (i, policy(i)) as equalities: the basic
/// solution that corresponds to the policy.
ValueVector policy_basis_solution(const Mdp& mdp, const DeterministicPolicy& policy);

/// Maximum violation of any constraint or bound at `x`.
double max_constraint_violation(const LpProgram& lp, std::span<const double> x);

class LpParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CPLEX-style LP text: objective, Subject To, Bounds, End.
std::string export_lp(const LpProgram& lp);

/// Parses the subset of the LP text format written by export_lp.
LpProgram parse_lp(const std::string& text);

} // namespace mdplab
