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

#include "mdplab/families.hpp"
#include "mdplab/mdp.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace mdplab;
using namespace mdplab::testing;

TEST_CASE("validate") {
    SUBCASE("well-formed MDP has an empty report") { CHECK(validate(toy2()).empty()); }

    SUBCASE("short row is named by its (state, action) pair") {
        Mdp mdp = toy2();
        mdp.prob(0, 0, 0) = 0.9;
        const auto report = validate(mdp);
        REQUIRE(report.size() == 1);
        CHECK(report[0].field == "transitions");
        CHECK(report[0].state == 0u);
        CHECK(report[0].action == 0u);
        CHECK(report[0].describe().find("(0,0)") != std::string::npos);
    }

    SUBCASE("discount of one is rejected") {
        Mdp mdp = toy2();
        mdp.set_discount(1.0);
        const auto report = validate(mdp);
        REQUIRE(report.size() == 1);
        CHECK(report[0].field == "discount");
    }

    SUBCASE("negative probability and non-finite cost") {
        Mdp mdp = toy2();
        mdp.prob(1, 1, 0) = -0.5;
        mdp.prob(1, 1, 1) = 1.5;
        mdp.cost(0, 1) = INFINITY;
        const auto report = validate(mdp);
        CHECK(report.size() == 2);
    }

    SUBCASE("empty shapes") {
        CHECK_FALSE(validate(Mdp(0, 1, 0.5)).empty());
        CHECK_FALSE(validate(Mdp(1, 0, 0.5)).empty());
    }
}

TEST_CASE("evaluate_policy") {
    SUBCASE("toy2 with the self-loop policy is a pair of geometric series") {
        const auto v = evaluate_policy(toy2(), {0, 0});
        CHECK(v[0] == doctest::Approx(1.5 / (1 - 0.5)).epsilon(1e-12));
        CHECK(v[1] == doctest::Approx(2.0 / (1 - 0.5)).epsilon(1e-12));
    }

    SUBCASE("vanishing discount leaves the immediate cost") {
        Mdp mdp = random_mdp(4, 3, 0.5, 9);
        mdp.set_discount(1e-12);
        const DeterministicPolicy pi = {2, 0, 1, 1};
        const auto v = evaluate_policy(mdp, pi);
        for (std::size_t i = 0; i < 4; ++i) CHECK(v[i] == doctest::Approx(mdp.cost(i, pi[i])).epsilon(1e-10));
    }

    SUBCASE("zero costs give the zero vector") {
        const auto v = evaluate_policy(zero_cost(3, 2, 0.9), {1, 0, 1});
        for (double x : v) CHECK(x == 0.0);
    }

    SUBCASE("out-of-range action is rejected") {
        CHECK_THROWS_AS(evaluate_policy(toy2(), {0, 2}), std::invalid_argument);
    }

    SUBCASE("result satisfies the policy equations and matches fixed-point iteration") {
        std::mt19937_64 rng(5);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const Mdp mdp = random_mdp(1 + seed % 6, 1 + seed % 3, 0.9, seed);
            const auto pi = random_policy(mdp, rng);
            const auto v = evaluate_policy(mdp, pi);
            const auto applied = policy_backup(mdp, pi, v);
            CHECK(max_abs_diff(applied, v) < 1e-9);
            CHECK(max_abs_diff(iterative_evaluation(mdp, pi), v) < 1e-9);
        }
    }
}

TEST_CASE("bellman_backup") {
    SUBCASE("toy2 from zero") {
        const auto b = bellman_backup(toy2(), ValueVector{0, 0});
        CHECK(b.values == ValueVector{0, 2});
        CHECK(b.q(0, 0) == 1.5);
        CHECK(b.q(0, 1) == 0.0);
        CHECK(b.q(1, 0) == 2.0);
        CHECK(b.q(1, 1) == 2.0);
    }

    SUBCASE("zero-cost MDP keeps the zero vector") {
        const auto b = bellman_backup(zero_cost(3, 2, 0.7), ValueVector(3, 0.0));
        for (double x : b.values) CHECK(x == 0.0);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 2; ++k) CHECK(b.q(i, k) == 0.0);
    }

    SUBCASE("toy2 optimum is a fixed point") {
        CHECK(bellman_backup(toy2(), ValueVector{2, 4}).values == ValueVector{2, 4});
    }

    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(bellman_backup(toy2(), ValueVector{0}), std::invalid_argument);
    }
}

TEST_CASE("backup is a gamma-contraction in the max norm") {
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const double gamma = 0.1 + 0.02 * static_cast<double>(seed);
        const Mdp mdp = random_mdp(1 + seed % 7, 1 + seed % 4, gamma, seed);
        for (int pair = 0; pair < 5; ++pair) {
            const auto u = random_vector(mdp.n_states(), 20.0, rng);
            const auto v = random_vector(mdp.n_states(), 20.0, rng);
            const auto tu = bellman_backup(mdp, u).values;
            const auto tv = bellman_backup(mdp, v).values;
            CHECK(bellman_residual(tv, tu) <= gamma * bellman_residual(v, u) + 1e-12);
        }
    }
}

TEST_CASE("greedy_policy") {
    SUBCASE("toy2 at the optimum breaks the state-1 tie toward action 0") {
        CHECK(greedy_policy(toy2(), ValueVector{2, 4}) == DeterministicPolicy{1, 0});
    }
    SUBCASE("zero values pick the cheapest action") {
        const Mdp mdp = random_mdp(5, 4, 0.8, 3);
        const auto pi = greedy_policy(mdp, ValueVector(5, 0.0));
        for (std::size_t i = 0; i < 5; ++i) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < 4; ++k)
                if (mdp.cost(i, k) < mdp.cost(i, best)) best = k;
            CHECK(pi[i] == best);
        }
    }
    SUBCASE("all-equal q-values select action 0") {
        CHECK(greedy_policy(zero_cost(3, 3, 0.5), ValueVector(3, 0.0)) == DeterministicPolicy{0, 0, 0});
    }
    SUBCASE("pure function") {
        const Mdp mdp = random_mdp(6, 3, 0.9, 21);
        std::mt19937_64 rng(2);
        const auto v = random_vector(6, 5.0, rng);
        CHECK(greedy_policy(mdp, v) == greedy_policy(mdp, v));
    }
}

TEST_CASE("bellman_residual") {
    CHECK(bellman_residual(ValueVector{0, 2}, ValueVector{0, 0}) == 2.0);
    CHECK(bellman_residual(ValueVector{1.25, -7}, ValueVector{1.25, -7}) == 0.0);
    CHECK(bellman_residual(ValueVector{1, -3}, ValueVector{2, 1}) == 4.0);
    CHECK_THROWS_AS(bellman_residual(ValueVector{1}, ValueVector{1, 2}), std::invalid_argument);
}

TEST_CASE("value_range_bound") {
    CHECK(value_range_bound(toy2()) == doctest::Approx(4.0));
    CHECK(value_range_bound(zero_cost(2, 2, 0.3)) == 0.0);
    Mdp unit = zero_cost(2, 1, 0.9);
    unit.cost(1, 0) = -1.0;
    CHECK(value_range_bound(unit) == doctest::Approx(10.0));

    SUBCASE("every policy's values lie within the bound") {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            const Mdp mdp = random_mdp(1 + trial % 6, 1 + trial % 3, 0.95, 100 + trial);
            const auto v = evaluate_policy(mdp, random_policy(mdp, rng));
            for (double x : v) CHECK(std::abs(x) <= value_range_bound(mdp) + 1e-9);
        }
    }
}

TEST_CASE("stochastic evaluation reduces to deterministic for point masses") {
    const Mdp mdp = random_mdp(4, 3, 0.9, 77);
    const DeterministicPolicy pi = {2, 1, 0, 2};
    StochasticPolicy sigma(4, 3);
    for (std::size_t i = 0; i < 4; ++i) sigma(i, pi[i]) = 1.0;
    CHECK(max_abs_diff(evaluate_stochastic_policy(mdp, sigma), evaluate_policy(mdp, pi)) < 1e-12);
}
