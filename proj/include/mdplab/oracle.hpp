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
#include <stdexcept>

namespace mdplab {

inline constexpr std::size_t kDefaultOracleLimit = 1'000'000;

class OracleLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Thrown when no enumerated policy is pointwise minimal. Cannot happen for a
/// valid discounted MDP; it indicates a numerical problem.
class DominanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    ValueVector optimal_values;
    DeterministicPolicy optimal_policy;
    std::size_t policies_examined = 0;
};

/// Exhaustive search over all M^N deterministic stationary policies in
/// lexicographic order (state 0 most significant). Throws OracleLimitError
/// when M^N exceeds `limit`.
OracleResult brute_force_optimal(const Mdp& mdp, std::size_t limit = kDefaultOracleLimit);

/// True iff the optimality residual of `v` is at most `tol`.
bool verify_optimality_equations(const Mdp& mdp, std::span<const double> v, double tol);

/// Largest per-state excess of the policy's cost over the optimum.
double optimality_gap(const Mdp& mdp, const DeterministicPolicy& policy,
                      std::span<const double> optimal_values);

bool is_epsilon_optimal(const Mdp& mdp, const DeterministicPolicy& policy, double epsilon,
                        std::size_t limit = kDefaultOracleLimit);

} // namespace mdplab
