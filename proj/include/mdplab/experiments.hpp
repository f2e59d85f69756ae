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

#include "mdplab/lp.hpp"
#include "mdplab/mdp.hpp"
#include "mdplab/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mdplab {

enum class Algorithm { vi, pi, spi, mpi, lp_primal, lp_dual };

/// Parses "vi", "pi", "spi", "mpi", "lp-primal", "lp-dual".
std::optional<Algorithm> parse_algorithm(const std::string& name);
std::string to_string(Algorithm algorithm);

struct AlgorithmOptions {
    std::optional<double> epsilon;               // vi: epsilon target
    std::optional<std::size_t> max_iterations;   // vi/pi/spi/mpi cap
    std::size_t sweeps = 5;                      // mpi
    PivotRule pivot_rule = PivotRule::bland;     // lp-*
};

inline constexpr double kDefaultEpsilon = 1e-6;

/// Runs one algorithm from its default start (zero values or the all-zeros
/// policy). For the LP routes `iterations` holds the simplex pivot count, and
/// lp-dual values are the exact cost of the extracted stochastic policy.
SolveReport run_algorithm(const Mdp& mdp, Algorithm algorithm, const AlgorithmOptions& options = {});

enum class ExperimentKind { mc90_scaling, vi_gamma_scaling, cross_check, stopping_rule };

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);
std::string to_string(ExperimentKind kind);

/// Parameter grid. Empty lists fall back to per-kind defaults.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::mc90_scaling;
    std::vector<std::size_t> n_values;
    std::vector<std::size_t> m_values;
    std::vector<double> gammas;
    std::vector<std::uint64_t> seeds;
    std::vector<double> epsilons;
    std::string output_path;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    /// Fixed-width rendering for terminals.
    std::string to_table() const;
};

struct ExperimentResult {
    CsvTable table;
    std::string summary;
    bool all_passed = true;
};

/// Fills per-kind defaults and rejects out-of-range parameters with
/// std::invalid_argument.
ExperimentSpec normalized(ExperimentSpec spec);

/// Runs the grid in deterministic order.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Builds an MDP from an inline generator spec such as "mc90:N=10,gamma=0.95",
/// "vi-lower-bound:gamma=0.9", "random:N=4,M=2,gamma=0.9,seed=7" or
/// "rational:N=4,M=2,gamma=0.5,bits=8,seed=7". Unknown keys are rejected.
Mdp generate_from_spec(const std::string& spec);

/// 17-significant-digit decimal.
std::string format_double(double x);

/// First value-iteration sweep (zero start) after which the greedy action at
/// state 0 of the three-state family is index 1. Returns 0 if it never happens
/// within `max_sweeps`.
std::size_t observed_vi_crossing(const Mdp& mdp, std::size_t max_sweeps);

} // namespace mdplab
