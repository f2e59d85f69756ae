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

#include "mdplab/mdp_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mdplab {

using nlohmann::json;

namespace {

std::string join_report(const ValidationReport& report) {
    std::string out = "invalid MDP";
    for (const auto& v : report) out += "; " + v.describe();
    return out;
}

const json& require(const json& doc, const char* field) {
    auto it = doc.find(field);
    if (it == doc.end()) throw MdpParseError(field, "missing field");
    return *it;
}

std::size_t read_count(const json& doc, const char* field) {
    const json& value = require(doc, field);
    if (!value.is_number_integer() || value.get<long long>() <= 0) {
        throw MdpParseError(field, "must be a positive integer");
    }
    return value.get<std::size_t>();
}

double read_number(const json& value, const std::string& field) {
    if (!value.is_number()) throw MdpParseError(field, "expected a number");
    return value.get<double>();
}

} // namespace

MdpValidationError::MdpValidationError(ValidationReport report)
    : std::runtime_error(join_report(report)), report_(std::move(report)) {}

Mdp mdp_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MdpParseError("document", e.what());
    }
    if (!doc.is_object()) throw MdpParseError("document", "expected a JSON object");

    const std::size_t n = read_count(doc, "n_states");
    const std::size_t m = read_count(doc, "n_actions");
    const double gamma = read_number(require(doc, "discount"), "discount");
    Mdp mdp(n, m, gamma);

    const json& costs = require(doc, "costs");
    if (!costs.is_array() || costs.size() != n) {
        throw MdpParseError("costs", "expected an N x M array");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!costs[i].is_array() || costs[i].size() != m) {
            throw MdpParseError("costs", "row " + std::to_string(i) + " must have M entries");
        }
        for (std::size_t k = 0; k < m; ++k) mdp.cost(i, k) = read_number(costs[i][k], "costs");
    }

    const json& transitions = require(doc, "transitions");
    if (!transitions.is_array()) throw MdpParseError("transitions", "expected an array");
    const bool sparse = !transitions.empty() && transitions[0].is_array() &&
                        !transitions[0].empty() && transitions[0][0].is_number();
    if (sparse) {
        for (const auto& entry : transitions) {
            if (!entry.is_array() || entry.size() != 4) {
                throw MdpParseError("transitions", "sparse entries must be [i, k, j, p]");
            }
            for (std::size_t f = 0; f < 3; ++f) {
                if (!entry[f].is_number_integer() || entry[f].get<long long>() < 0) {
                    throw MdpParseError("transitions", "sparse indices must be nonnegative integers");
                }
            }
            const auto i = entry[0].get<std::size_t>();
            const auto k = entry[1].get<std::size_t>();
            const auto j = entry[2].get<std::size_t>();
            if (i >= n || k >= m || j >= n) {
                throw MdpParseError("transitions", "sparse index out of range");
            }
            mdp.prob(i, k, j) += read_number(entry[3], "transitions");
        }
    } else {
        if (transitions.size() != n) throw MdpParseError("transitions", "expected N x M x N array");
        for (std::size_t i = 0; i < n; ++i) {
            const json& per_state = transitions[i];
            if (!per_state.is_array() || per_state.size() != m) {
                throw MdpParseError("transitions", "state " + std::to_string(i) + " must have M rows");
            }
            for (std::size_t k = 0; k < m; ++k) {
                const json& row = per_state[k];
                if (!row.is_array() || row.size() != n) {
                    throw MdpParseError("transitions", "row (" + std::to_string(i) + "," +
                                                           std::to_string(k) + ") must have N entries");
                }
                for (std::size_t j = 0; j < n; ++j) {
                    mdp.prob(i, k, j) = read_number(row[j], "transitions");
                }
            }
        }
    }

    if (auto it = doc.find("rational_bits"); it != doc.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<long long>() <= 0) {
            throw MdpParseError("rational_bits", "must be a positive integer");
        }
        mdp.set_rational_bits(it->get<unsigned>());
    }

    if (auto report = validate(mdp); !report.empty()) throw MdpValidationError(std::move(report));
    return mdp;
}

std::string mdp_to_json(const Mdp& mdp) {
    const std::size_t n = mdp.n_states();
    const std::size_t m = mdp.n_actions();
    json doc;
    doc["n_states"] = n;
    doc["n_actions"] = m;
    doc["discount"] = mdp.discount();
    json costs = json::array();
    json transitions = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json cost_row = json::array();
        json per_state = json::array();
        for (std::size_t k = 0; k < m; ++k) {
            cost_row.push_back(mdp.cost(i, k));
            const auto row = mdp.transition_row(i, k);
            per_state.push_back(json(std::vector<double>(row.begin(), row.end())));
        }
        costs.push_back(std::move(cost_row));
        transitions.push_back(std::move(per_state));
    }
    doc["costs"] = std::move(costs);
    doc["transitions"] = std::move(transitions);
    if (mdp.rational_bits()) doc["rational_bits"] = *mdp.rational_bits();
    return doc.dump(1) + "\n";
}

Mdp load_mdp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return mdp_from_json(buffer.str());
}

void save_mdp(const Mdp& mdp, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << mdp_to_json(mdp);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace mdplab
