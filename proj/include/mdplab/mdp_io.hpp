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

#include <filesystem>
#include <stdexcept>
#include <string>

namespace mdplab {

/// Malformed MDP document. `field()` names the offending JSON field.
class MdpParseError : public std::runtime_error {
public:
    MdpParseError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Well-formed document describing an invalid MDP.
class MdpValidationError : public std::runtime_error {
public:
    explicit MdpValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Reads the JSON document: n_states, n_actions, discount, costs (N x M),
/// transitions (dense N x M x N, or a list of [i, k, j, p] quadruples) and
/// optional rational_bits. Throws MdpParseError or MdpValidationError.
Mdp mdp_from_json(const std::string& text);

/// Dense JSON document. Doubles are written with round-trip precision.
std::string mdp_to_json(const Mdp& mdp);

Mdp load_mdp(const std::filesystem::path& path);
void save_mdp(const Mdp& mdp, const std::filesystem::path& path);

} // namespace mdplab
