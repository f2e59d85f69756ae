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
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace mdplab {

namespace {

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_expression(std::ostream& out, std::span<const double> coefficients,
                      const std::vector<std::string>& names) {
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        const double c = coefficients[j];
        const bool negative = std::signbit(c);
        if (j == 0) {
            out << (negative ? "- " : "");
        } else {
            out << (negative ? " - " : " + ");
        }
        out << format_number(std::abs(c)) << ' ' << names[j];
    }
}

const char* relation_text(Relation r) {
    switch (r) {
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    case Relation::equal: return "=";
    }
    return "=";
}

} // namespace

std::string export_lp(const LpProgram& lp) {
    lp.check_well_formed();
    std::ostringstream out;
    out << "\\ exported by mdplab\n";
    out << (lp.sense == Sense::maximize ? "Maximize\n" : "Minimize\n");
    out << " obj: ";
    write_expression(out, lp.objective, lp.variable_names);
    out << "\nSubject To\n";
    for (const auto& row : lp.constraints) {
        out << ' ' << row.label << ": ";
        write_expression(out, row.coefficients, lp.variable_names);
        out << ' ' << relation_text(row.relation) << ' ' << format_number(row.rhs) << '\n';
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < lp.n_variables(); ++j) {
        const auto& b = lp.bounds[j];
        const auto& name = lp.variable_names[j];
        if (std::isinf(b.lower) && std::isinf(b.upper)) {
            out << ' ' << name << " free\n";
        } else if (std::isinf(b.upper)) {
            out << ' ' << name << " >= " << format_number(b.lower) << '\n';
        } else {
            out << ' ' << format_number(b.lower) << " <= " << name << " <= "
                << format_number(b.upper) << '\n';
        }
    }
    out << "End\n";
    return out.str();
}

namespace {

enum class Section { none, objective, constraints, bounds, end };

struct Token {
    enum Kind { number, name, plus, minus, relation, colon } kind;
    std::string text;
    double value = 0.0;
};

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' ||
           c == ']' || c == '#' || c == '$' || c == '%' || c == '&' || c == '{' || c == '}' ||
           c == '~' || c == '\'' || c == '!' || c == '"' || c == '?' || c == '@' || c == '^' ||
           c == ',' || c == ';' || c == '(' || c == ')' || c == '/';
}

std::optional<double> parse_infinity(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "inf" || lower == "infinity") return kInfinity;
    return std::nullopt;
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const char c = line[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else if (c == '+' || c == '-') {
            tokens.push_back({c == '+' ? Token::plus : Token::minus, std::string(1, c)});
            ++pos;
        } else if (c == ':') {
            tokens.push_back({Token::colon, ":"});
            ++pos;
        } else if (c == '<' || c == '>' || c == '=') {
            std::size_t end = pos + 1;
            while (end < line.size() && (line[end] == '<' || line[end] == '>' || line[end] == '=')) {
                ++end;
            }
            std::string rel(line.substr(pos, end - pos));
            if (rel == "=<" || rel == "<") rel = "<=";
            if (rel == "=>" || rel == ">") rel = ">=";
            if (rel != "<=" && rel != ">=" && rel != "=") {
                throw LpParseError("line " + std::to_string(line_no) + ": bad relation '" + rel + "'");
            }
            tokens.push_back({Token::relation, rel});
            pos = end;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
            if (ec != std::errc{}) {
                throw LpParseError("line " + std::to_string(line_no) + ": bad number");
            }
            const std::size_t end = static_cast<std::size_t>(ptr - line.data());
            tokens.push_back({Token::number, std::string(line.substr(pos, end - pos)), value});
            pos = end;
        } else if (is_name_char(c)) {
            std::size_t end = pos;
            while (end < line.size() && is_name_char(line[end])) ++end;
            std::string word(line.substr(pos, end - pos));
            if (auto inf = parse_infinity(word)) {
                tokens.push_back({Token::number, word, *inf});
            } else {
                tokens.push_back({Token::name, word});
            }
            pos = end;
        } else {
            throw LpParseError("line " + std::to_string(line_no) + ": unexpected character '" +
                               std::string(1, c) + "'");
        }
    }
    return tokens;
}

class Parser {
public:
    LpProgram parse(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        std::size_t line_no = 0;
        Section section = Section::none;
        bool saw_sense = false;
        while (std::getline(in, raw)) {
            ++line_no;
            if (auto cut = raw.find('\\'); cut != std::string::npos) raw.erase(cut);
            std::string_view line = trim(raw);
            if (line.empty()) continue;
            if (auto header = section_header(line)) {
                if (*header == Section::objective) saw_sense = true;
                section = *header;
                if (section == Section::end) break;
                continue;
            }
            switch (section) {
            case Section::none:
                throw LpParseError("line " + std::to_string(line_no) + ": content before objective sense");
            case Section::objective: parse_objective(tokenize(line, line_no), line_no); break;
            case Section::constraints: parse_constraint(tokenize(line, line_no), line_no); break;
            case Section::bounds: parse_bound(tokenize(line, line_no), line_no); break;
            case Section::end: break;
            }
        }
        if (!saw_sense) throw LpParseError("missing Maximize/Minimize section");

        const std::size_t n = names_.size();
        lp_.variable_names = names_;
        lp_.objective.resize(n, 0.0);
        lp_.bounds.resize(n, VariableBounds::nonnegative());
        for (std::size_t j = 0; j < n; ++j) {
            if (auto it = bounds_.find(j); it != bounds_.end()) lp_.bounds[j] = it->second;
        }
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            LpConstraint row;
            row.label = rows_[r].label;
            row.coefficients.assign(n, 0.0);
            for (const auto& [j, a] : rows_[r].terms) row.coefficients[j] += a;
            row.relation = rows_[r].relation;
            row.rhs = rows_[r].rhs;
            lp_.constraints.push_back(std::move(row));
        }
        return std::move(lp_);
    }

private:
    struct RawRow {
        std::string label;
        std::vector<std::pair<std::size_t, double>> terms;
        Relation relation = Relation::less_equal;
        double rhs = 0.0;
    };

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    std::optional<Section> section_header(std::string_view line) {
        std::string lower(line);
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (lower == "maximize" || lower == "maximise" || lower == "maximum" || lower == "max") {
            lp_.sense = Sense::maximize;
            return Section::objective;
        }
        if (lower == "minimize" || lower == "minimise" || lower == "minimum" || lower == "min") {
            lp_.sense = Sense::minimize;
            return Section::objective;
        }
        if (lower == "subject to" || lower == "such that" || lower == "st" || lower == "s.t.") {
            return Section::constraints;
        }
        if (lower == "bounds" || lower == "bound") return Section::bounds;
        if (lower == "end") return Section::end;
        if (lower == "general" || lower == "generals" || lower == "binary" || lower == "binaries") {
            throw LpParseError("integer sections are not supported");
        }
        return std::nullopt;
    }

    std::size_t variable(const std::string& name) {
        auto [it, inserted] = index_.try_emplace(name, names_.size());
        if (inserted) names_.push_back(name);
        return it->second;
    }

    // Reads `[label :]` and returns the remaining token offset.
    static std::size_t take_label(const std::vector<Token>& t, std::string& label) {
        if (t.size() >= 2 && t[0].kind == Token::name && t[1].kind == Token::colon) {
            label = t[0].text;
            return 2;
        }
        return 0;
    }

    // Linear expression up to a relation token or the end of the line.
    std::size_t parse_terms(const std::vector<Token>& t, std::size_t pos,
                            std::vector<std::pair<std::size_t, double>>& terms, std::size_t line_no) {
        while (pos < t.size() && t[pos].kind != Token::relation) {
            double sign = 1.0;
            while (pos < t.size() && (t[pos].kind == Token::plus || t[pos].kind == Token::minus)) {
                if (t[pos].kind == Token::minus) sign = -sign;
                ++pos;
            }
            double coefficient = 1.0;
            if (pos < t.size() && t[pos].kind == Token::number) {
                coefficient = t[pos].value;
                ++pos;
            }
            if (pos >= t.size() || t[pos].kind != Token::name) {
                throw LpParseError("line " + std::to_string(line_no) + ": expected a variable name");
            }
            terms.emplace_back(variable(t[pos].text), sign * coefficient);
            ++pos;
        }
        return pos;
    }

    static double signed_number(const std::vector<Token>& t, std::size_t& pos, std::size_t line_no) {
        double sign = 1.0;
        while (pos < t.size() && (t[pos].kind == Token::plus || t[pos].kind == Token::minus)) {
            if (t[pos].kind == Token::minus) sign = -sign;
            ++pos;
        }
        if (pos >= t.size() || t[pos].kind != Token::number) {
            throw LpParseError("line " + std::to_string(line_no) + ": expected a number");
        }
        return sign * t[pos++].value;
    }

    static Relation relation(const Token& token) {
        if (token.text == "<=") return Relation::less_equal;
        if (token.text == ">=") return Relation::greater_equal;
        return Relation::equal;
    }

    void parse_objective(const std::vector<Token>& t, std::size_t line_no) {
        std::string label;
        std::vector<std::pair<std::size_t, double>> terms;
        const std::size_t pos = parse_terms(t, take_label(t, label), terms, line_no);
        if (pos != t.size()) throw LpParseError("line " + std::to_string(line_no) + ": relation in objective");
        for (const auto& [j, c] : terms) {
            if (lp_.objective.size() <= j) lp_.objective.resize(j + 1, 0.0);
            lp_.objective[j] += c;
        }
    }

    void parse_constraint(const std::vector<Token>& t, std::size_t line_no) {
        RawRow row;
        std::size_t pos = parse_terms(t, take_label(t, row.label), row.terms, line_no);
        if (row.label.empty()) row.label = "r" + std::to_string(rows_.size());
        if (pos >= t.size()) throw LpParseError("line " + std::to_string(line_no) + ": missing relation");
        row.relation = relation(t[pos++]);
        row.rhs = signed_number(t, pos, line_no);
        if (pos != t.size()) throw LpParseError("line " + std::to_string(line_no) + ": trailing tokens");
        rows_.push_back(std::move(row));
    }

    void parse_bound(const std::vector<Token>& t, std::size_t line_no) {
        const auto fail = [&](const char* what) {
            throw LpParseError("line " + std::to_string(line_no) + ": " + what);
        };
        if (t.size() == 2 && t[0].kind == Token::name && t[1].kind == Token::name) {
            std::string word = t[1].text;
            std::transform(word.begin(), word.end(), word.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (word != "free") fail("unknown bound keyword");
            bounds_[variable(t[0].text)] = VariableBounds::free();
            return;
        }
        std::size_t pos = 0;
        if (!t.empty() && t[0].kind == Token::name) {
            // name rel number
            const std::size_t j = variable(t[0].text);
            pos = 1;
            if (pos >= t.size() || t[pos].kind != Token::relation) fail("expected a relation");
            const Relation rel = relation(t[pos++]);
            const double value = signed_number(t, pos, line_no);
            if (pos != t.size()) fail("trailing tokens");
            auto& b = bound(j);
            if (rel == Relation::less_equal) b.upper = value;
            else if (rel == Relation::greater_equal) b.lower = value;
            else b = {value, value};
            return;
        }
        // number rel name [rel number]
        const double left = signed_number(t, pos, line_no);
        if (pos >= t.size() || t[pos].kind != Token::relation) fail("expected a relation");
        const Relation first = relation(t[pos++]);
        if (pos >= t.size() || t[pos].kind != Token::name) fail("expected a variable name");
        const std::size_t j = variable(t[pos++].text);
        auto& b = bound(j);
        if (first == Relation::less_equal) b.lower = left;
        else if (first == Relation::greater_equal) b.upper = left;
        else b = {left, left};
        if (pos == t.size()) return;
        if (t[pos].kind != Token::relation) fail("expected a relation");
        const Relation second = relation(t[pos++]);
        const double right = signed_number(t, pos, line_no);
        if (pos != t.size()) fail("trailing tokens");
        if (second == Relation::less_equal) b.upper = right;
        else if (second == Relation::greater_equal) b.lower = right;
        else fail("equality in a two-sided bound");
    }

    VariableBounds& bound(std::size_t j) {
        return bounds_.try_emplace(j, VariableBounds::nonnegative()).first->second;
    }

    LpProgram lp_;
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::vector<RawRow> rows_;
    std::map<std::size_t, VariableBounds> bounds_;
};

} // namespace

LpProgram parse_lp(const std::string& text) {
    return Parser{}.parse(text);
}

} // namespace mdplab
