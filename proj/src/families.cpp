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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mdplab {

namespace {

void require_discount(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("discount must lie strictly between 0 and 1");
    }
}

// Portable uniform draw in [0,1); std::uniform_real_distribution is not
// specified bit-exactly across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void set_all_actions(Mdp& mdp, std::size_t state, std::size_t target, double cost) {
    for (std::size_t k = 0; k < mdp.n_actions(); ++k) {
        mdp.prob(state, k, target) = 1.0;
        mdp.cost(state, k) = cost;
    }
}

} // namespace

std::size_t mc90_decision_state(std::size_t /*n*/, std::size_t i) { return i; }

std::size_t mc90_random_state(std::size_t n, std::size_t i) { return n / 2 + i - 1; }

Mc90Instance mc90_family(std::size_t n, double gamma) {
    if (n < 6 || n % 2 != 0) {
        throw std::invalid_argument("mc90_family: n must be even and at least 6");
    }
    require_discount(gamma);
    const std::size_t half = n / 2;
    const std::size_t absorbing = n - 1;
    const auto decision = [&](std::size_t i) { return mc90_decision_state(n, i); };
    const auto random = [&](std::size_t i) { return mc90_random_state(n, i); };

    Mc90Instance inst;
    inst.mdp = Mdp(n, 2, gamma);
    Mdp& mdp = inst.mdp;

    for (std::size_t i = 0; i + 1 < half; ++i) {
        mdp.prob(decision(i), 0, decision(i + 1)) = 1.0;
        mdp.prob(decision(i), 1, random(i + 1)) = 1.0;
    }
    set_all_actions(mdp, decision(half - 1), absorbing, 1.0);
    for (std::size_t i = 1; i + 1 < half; ++i) {
        for (std::size_t k = 0; k < 2; ++k) {
            mdp.prob(random(i), k, random(i + 1)) = 0.5;
            mdp.prob(random(i), k, decision(i + 1)) = 0.5;
        }
    }
    set_all_actions(mdp, random(half - 1), absorbing, 0.0);
    set_all_actions(mdp, absorbing, absorbing, 0.0);

    inst.initial_policy.assign(n, 0);
    inst.optimal_policy.assign(n, 0);
    inst.optimal_policy[decision(half - 2)] = 1;
    inst.predicted_switches = std::size_t{1} << (half - 2);

    inst.state_labels.resize(n);
    for (std::size_t i = 0; i < half; ++i) inst.state_labels[decision(i)] = std::to_string(i);
    for (std::size_t i = 1; i < half; ++i) inst.state_labels[random(i)] = std::to_string(i) + "'";
    inst.state_labels[absorbing] = "absorbing";
    return inst;
}

std::size_t vi_crossing_iteration(double gamma) {
    require_discount(gamma);
    std::size_t n = 1;
    while (!(std::pow(gamma, static_cast<double>(n)) < 1.0 - gamma)) ++n;
    return n;
}

ViLowerBoundInstance vi_lower_bound_family(double gamma) {
    require_discount(gamma);
    ViLowerBoundInstance inst;
    inst.mdp = Mdp(3, 2, gamma);
    Mdp& mdp = inst.mdp;
    mdp.prob(0, 0, 1) = 1.0;
    mdp.cost(0, 0) = 0.0;
    mdp.prob(0, 1, 2) = 1.0;
    mdp.cost(0, 1) = gamma * gamma / (1.0 - gamma);
    set_all_actions(mdp, 1, 1, 1.0);
    set_all_actions(mdp, 2, 2, 0.0);

    inst.predicted_lower_bound = 0.5 * std::log(1.0 / (1.0 - gamma)) / (1.0 - gamma);
    inst.exact_crossing = vi_crossing_iteration(gamma);
    return inst;
}

Mdp random_mdp(std::size_t n, std::size_t m, double gamma, std::uint64_t seed) {
    if (n == 0 || m == 0) throw std::invalid_argument("random_mdp: n and m must be positive");
    require_discount(gamma);
    std::mt19937_64 rng(seed);
    Mdp mdp(n, m, gamma);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            auto row = mdp.transition_row(i, k);
            double total = 0.0;
            for (double& p : row) {
                // Keep weights away from zero so every row has positive mass.
                p = uniform01(rng) + 0x1.0p-53;
                total += p;
            }
            for (double& p : row) p /= total;
            mdp.cost(i, k) = uniform01(rng);
        }
    }
    return mdp;
}

Mdp random_rational_mdp(std::size_t n, std::size_t m, double gamma, unsigned bits,
                        std::uint64_t seed) {
    if (n == 0 || m == 0) throw std::invalid_argument("random_rational_mdp: n and m must be positive");
    if (bits == 0 || bits > 30) throw std::invalid_argument("random_rational_mdp: bits must be in [1,30]");
    require_discount(gamma);
    std::mt19937_64 rng(seed);
    const std::uint64_t scale = std::uint64_t{1} << bits;
    const double inv_scale = std::ldexp(1.0, -static_cast<int>(bits));
    Mdp mdp(n, m, gamma);
    std::vector<std::uint64_t> cuts(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            cuts.front() = 0;
            cuts.back() = scale;
            for (std::size_t c = 1; c < n; ++c) cuts[c] = rng() % (scale + 1);
            std::sort(cuts.begin(), cuts.end());
            auto row = mdp.transition_row(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                row[j] = static_cast<double>(cuts[j + 1] - cuts[j]) * inv_scale;
            }
            mdp.cost(i, k) = static_cast<double>(rng() % scale);
        }
    }
    mdp.set_rational_bits(bits);
    return mdp;
}

} // namespace mdplab
