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
#include <cstdint>
#include <string>
#include <vector>

namespace mdplab {

/// Melekopoglou-Condon counterexample for simple policy iteration.
///
/// State layout for N states (N even, N >= 6), with H = N/2:
///   0 .. H-1          decision states 0 .. H-1
///   H .. 2H-2         random states 1' .. (H-1)'
///   N-1               absorbing state
/// Action 0 at decision state i moves to decision state i+1, action 1 moves to
/// random state (i+1)'. Random state i' moves to (i+1)' or to decision state
/// i+1 with probability 1/2 each. Decision state H-1 and random state (H-1)'
/// move to the absorbing state; only the exit from decision state H-1 costs 1.
struct Mc90Instance {
    Mdp mdp;
    DeterministicPolicy initial_policy;
    DeterministicPolicy optimal_policy;
    /// 2^(N/2 - 2), the published number of policies simple policy iteration
    /// steps through.
    std::size_t predicted_switches = 0;
    std::vector<std::string> state_labels;
};

inline constexpr double kMc90DefaultDiscount = 0.95;

/// Throws std::invalid_argument for odd n, n < 6, or gamma outside (0,1).
Mc90Instance mc90_family(std::size_t n, double gamma = kMc90DefaultDiscount);

/// State index of decision state `i` and random state `i'` in the layout above.
std::size_t mc90_decision_state(std::size_t n, std::size_t i);
std::size_t mc90_random_state(std::size_t n, std::size_t i);

/// Three-state family where value iteration keeps the suboptimal action at
/// state 0 for about log(1-gamma)/log(gamma) sweeps.
///
/// Action index 0 ("action 1") moves state 0 to state 1 at no cost; index 1
/// ("action 2") moves it to state 2 at cost gamma^2/(1-gamma). State 1 loops
/// with cost 1, state 2 loops at no cost; both duplicate their only action.
struct ViLowerBoundInstance {
    Mdp mdp;
    /// 0.5 * ln(1/(1-gamma)) / (1-gamma).
    double predicted_lower_bound = 0.0;
    /// Smallest n with gamma^n < 1 - gamma.
    std::size_t exact_crossing = 0;
};

ViLowerBoundInstance vi_lower_bound_family(double gamma);

/// Smallest positive n with gamma^n < 1 - gamma.
std::size_t vi_crossing_iteration(double gamma);

/// Seeded random MDP. Uses std::mt19937_64 seeded with `seed`; each draw u in
/// [0,1) is (next() >> 11) * 2^-53. For every (i,k) the n transition weights
/// are drawn first and normalized, then the cost is drawn, so the stream is
/// fully determined by (n, m, seed).
Mdp random_mdp(std::size_t n, std::size_t m, double gamma, std::uint64_t seed);

/// Random MDP whose data are exact binary rationals: each transition
/// probability is a multiple of 2^-bits and each cost an integer in
/// [0, 2^bits). rational_bits() is set to `bits`.
Mdp random_rational_mdp(std::size_t n, std::size_t m, double gamma, unsigned bits,
                        std::uint64_t seed);

} // namespace mdplab
