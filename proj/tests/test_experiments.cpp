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

#include "mdplab/experiments.hpp"
#include "mdplab/families.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace mdplab;
using namespace mdplab::testing;

TEST_CASE("run_algorithm covers every route") {
    for (const char* name : {"vi", "pi", "spi", "mpi", "lp-primal", "lp-dual"}) {
        const auto algorithm = parse_algorithm(name);
        REQUIRE(algorithm);
        CHECK(to_string(*algorithm) == name);
        const auto r = run_algorithm(toy2(), *algorithm);
        CHECK(r.converged);
        CHECK(r.policy == DeterministicPolicy{1, 0});
        CHECK(max_abs_diff(r.values, {2, 4}) < 1e-5);
    }
    CHECK_FALSE(parse_algorithm("simplex"));
    AlgorithmOptions capped;
    capped.max_iterations = 0;
    CHECK_FALSE(run_algorithm(toy2(), Algorithm::vi, capped).converged);
}

TEST_CASE("generate_from_spec") {
    CHECK(generate_from_spec("mc90:N=10,gamma=0.95") == mc90_family(10, 0.95).mdp);
    CHECK(generate_from_spec("fig2:gamma=0.9") == vi_lower_bound_family(0.9).mdp);
    CHECK(generate_from_spec("random:N=3,M=2,gamma=0.8,seed=5") == random_mdp(3, 2, 0.8, 5));
    CHECK(generate_from_spec("rational:N=3,M=2,bits=4,seed=1").rational_bits() == 4u);
    CHECK_THROWS_AS(generate_from_spec("mc90:N=7"), std::invalid_argument);
    CHECK_THROWS_AS(generate_from_spec("mc90:Q=7"), std::invalid_argument);
    CHECK_THROWS_AS(generate_from_spec("cube:N=3"), std::invalid_argument);
    CHECK_THROWS_AS(generate_from_spec("random:N=x"), std::invalid_argument);
}

TEST_CASE("mc90-scaling experiment") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::mc90_scaling;
    spec.n_values = {6, 8, 10};
    const auto result = run_experiment(spec);
    CHECK(result.all_passed);
    CHECK(result.table.header ==
          std::vector<std::string>{"gamma", "n_states", "spi_switches", "policies_visited", "pi_iterations",
                                   "vi_iterations", "predicted_switches"});
    REQUIRE(result.table.rows.size() == 3);
    CHECK(result.table.rows[0][2] == "3");
    CHECK(result.table.rows[1][2] == "7");
    CHECK(result.table.rows[2][2] == "15");
    CHECK(result.table.rows[2][3] == "16");
    CHECK(result.table.rows[2][6] == "8");
}

TEST_CASE("vi-gamma-scaling experiment") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::vi_gamma_scaling;
    spec.gammas = {0.9};
    const auto result = run_experiment(spec);
    CHECK(result.all_passed);
    REQUIRE(result.table.rows.size() == 1);
    CHECK(result.table.rows[0][1] == "22");
    CHECK(result.table.rows[0][2] == "22");
}

TEST_CASE("cross-check experiment agrees with the oracle") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::cross_check;
    const auto result = run_experiment(spec);
    CHECK(result.all_passed);
    CHECK(result.table.rows.size() == 10);
    for (const auto& row : result.table.rows) CHECK(std::stod(row[9]) <= 1e-5);
}

TEST_CASE("stopping-rule experiment") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::stopping_rule;
    spec.seeds = {0, 1, 2};
    const auto result = run_experiment(spec);
    CHECK(result.all_passed);
    CHECK(result.table.rows.size() == 6);
}

TEST_CASE("experiment output is deterministic and grid errors are reported") {
    ExperimentSpec spec;
    spec.kind = ExperimentKind::cross_check;
    spec.seeds = {3, 4};
    CHECK(run_experiment(spec).table.to_csv() == run_experiment(spec).table.to_csv());

    ExperimentSpec bad;
    bad.kind = ExperimentKind::mc90_scaling;
    bad.n_values = {9};
    CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
    bad.kind = ExperimentKind::cross_check;
    bad.n_values = {4};
    bad.gammas = {1.5};
    CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
    CHECK_FALSE(parse_experiment_kind("mc91"));
}

TEST_CASE("csv formatting uses 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CsvTable t{{"a", "b"}, {{"1", "2"}}};
    CHECK(t.to_csv() == "a,b\n1,2\n");
}
