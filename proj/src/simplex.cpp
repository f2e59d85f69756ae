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
#include <cmath>
#include <optional>

namespace mdplab {

namespace {

// How an original variable is expressed through nonnegative tableau columns:
// x = offset + sign * column (+ for split free variables, minus `negative`).
struct ColumnMap {
    double offset = 0.0;
    double sign = 1.0;
    std::size_t column = 0;
    std::optional<std::size_t> negative;
};

enum class PhaseResult { optimal, unbounded, pivot_limit };

// Dense tableau in canonical form. Row `rows_` (the last) holds reduced costs
// and, in the rhs column, minus the current objective value.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows + 1, cols + 1), basis_(rows, 0) {}

    double& at(std::size_t r, std::size_t c) { return data_(r, c); }
    double& rhs(std::size_t r) { return data_(r, cols_); }
    std::size_t& basic(std::size_t r) { return basis_[r]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set_costs(std::span<const double> costs) {
        for (std::size_t c = 0; c <= cols_; ++c) data_(rows_, c) = c < cols_ ? costs[c] : 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cb = costs[basis_[r]];
            if (cb == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) data_(rows_, c) -= cb * data_(r, c);
        }
    }

    double objective() const { return -data_(rows_, cols_); }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = data_(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c) data_(pr, c) /= p;
        data_(pr, pc) = 1.0;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            const double f = data_(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) data_(r, c) -= f * data_(pr, c);
            data_(r, pc) = 0.0;
        }
        basis_[pr] = pc;
    }

    // Minimizes the loaded cost row over columns with `allowed[c]` set.
    PhaseResult optimize(const std::vector<bool>& allowed, const SimplexOptions& options,
                         std::size_t& pivots) {
        for (;;) {
            std::optional<std::size_t> entering;
            double most_negative = -options.pivot_tolerance;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (!allowed[c]) continue;
                const double d = data_(rows_, c);
                if (options.rule == PivotRule::bland) {
                    if (d < -options.pivot_tolerance) {
                        entering = c;
                        break;
                    }
                } else if (d < most_negative) {
                    most_negative = d;
                    entering = c;
                }
            }
            if (!entering) return PhaseResult::optimal;

            std::optional<std::size_t> leaving;
            double best_ratio = 0.0;
            for (std::size_t r = 0; r < rows_; ++r) {
                const double a = data_(r, *entering);
                if (a <= options.pivot_tolerance) continue;
                const double ratio = std::max(data_(r, cols_), 0.0) / a;
                if (!leaving || ratio < best_ratio - 1e-12) {
                    best_ratio = ratio;
                    leaving = r;
                } else if (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[*leaving]) {
                    leaving = r;
                }
            }
            if (!leaving) return PhaseResult::unbounded;
            if (pivots >= options.max_pivots) return PhaseResult::pivot_limit;
            pivot(*leaving, *entering);
            ++pivots;
        }
    }

    void drop_row(std::size_t r) {
        DenseMatrix smaller(rows_, cols_ + 1);
        std::size_t out = 0;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == r) continue;
            std::copy(data_.row(i).begin(), data_.row(i).end(), smaller.row(out).begin());
            ++out;
        }
        data_ = std::move(smaller);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    DenseMatrix data_;
    std::vector<std::size_t> basis_;
};

LpSolution solve_once(const LpProgram& lp, const SimplexOptions& options, double perturbation) {
    const std::size_t n = lp.n_variables();

    // Map every original variable onto nonnegative columns.
    std::vector<ColumnMap> maps(n);
    std::size_t structural = 0;
    struct UpperRow {
        std::size_t column;
        double bound;
    };
    std::vector<UpperRow> upper_rows;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& b = lp.bounds[j];
        auto& map = maps[j];
        if (std::isfinite(b.lower)) {
            map = {b.lower, 1.0, structural++, std::nullopt};
            if (std::isfinite(b.upper)) upper_rows.push_back({map.column, b.upper - b.lower});
        } else if (std::isfinite(b.upper)) {
            map = {b.upper, -1.0, structural++, std::nullopt};
        } else {
            map = {0.0, 1.0, structural, structural + 1};
            structural += 2;
        }
    }

    struct Row {
        std::vector<double> a;
        Relation relation;
        double rhs;
    };
    std::vector<Row> rows;
    rows.reserve(lp.n_constraints() + upper_rows.size());
    for (const auto& con : lp.constraints) {
        Row row{std::vector<double>(structural, 0.0), con.relation, con.rhs};
        for (std::size_t j = 0; j < n; ++j) {
            const double a = con.coefficients[j];
            if (a == 0.0) continue;
            const auto& map = maps[j];
            row.rhs -= a * map.offset;
            row.a[map.column] += a * map.sign;
            if (map.negative) row.a[*map.negative] -= a;
        }
        rows.push_back(std::move(row));
    }
    for (const auto& up : upper_rows) {
        Row row{std::vector<double>(structural, 0.0), Relation::less_equal, up.bound};
        row.a[up.column] = 1.0;
        rows.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto& row = rows[r];
        if (perturbation > 0.0) {
            row.rhs += perturbation * (1.0 + std::abs(row.rhs)) * static_cast<double>(r + 1) /
                       static_cast<double>(rows.size());
        }
        if (row.rhs < 0.0) {
            for (double& a : row.a) a = -a;
            row.rhs = -row.rhs;
            if (row.relation == Relation::less_equal) {
                row.relation = Relation::greater_equal;
            } else if (row.relation == Relation::greater_equal) {
                row.relation = Relation::less_equal;
            }
        }
    }

    std::size_t n_slack = 0;
    std::size_t n_artificial = 0;
    for (const auto& row : rows) {
        if (row.relation != Relation::equal) ++n_slack;
        if (row.relation != Relation::less_equal) ++n_artificial;
    }
    const std::size_t m = rows.size();
    const std::size_t first_slack = structural;
    const std::size_t first_artificial = structural + n_slack;
    const std::size_t total = first_artificial + n_artificial;

    Tableau tab(m, total);
    std::size_t next_slack = first_slack;
    std::size_t next_artificial = first_artificial;
    for (std::size_t r = 0; r < m; ++r) {
        const auto& row = rows[r];
        for (std::size_t c = 0; c < structural; ++c) tab.at(r, c) = row.a[c];
        tab.rhs(r) = row.rhs;
        switch (row.relation) {
        case Relation::less_equal:
            tab.at(r, next_slack) = 1.0;
            tab.basic(r) = next_slack++;
            break;
        case Relation::greater_equal:
            tab.at(r, next_slack++) = -1.0;
            tab.at(r, next_artificial) = 1.0;
            tab.basic(r) = next_artificial++;
            break;
        case Relation::equal:
            tab.at(r, next_artificial) = 1.0;
            tab.basic(r) = next_artificial++;
            break;
        }
    }

    LpSolution solution;
    std::vector<bool> allowed(total, true);

    if (n_artificial > 0) {
        std::vector<double> phase1(total, 0.0);
        for (std::size_t c = first_artificial; c < total; ++c) phase1[c] = 1.0;
        tab.set_costs(phase1);
        const auto result = tab.optimize(allowed, options, solution.pivots);
        if (result == PhaseResult::pivot_limit) {
            solution.status = LpStatus::numerical_failure;
            return solution;
        }
        if (tab.objective() > options.feasibility_tolerance) {
            solution.status = LpStatus::infeasible;
            return solution;
        }
        // Drive remaining artificials out of the basis; drop redundant rows.
        for (std::size_t r = 0; r < tab.rows();) {
            if (tab.basic(r) < first_artificial) {
                ++r;
                continue;
            }
            std::optional<std::size_t> column;
            for (std::size_t c = 0; c < first_artificial; ++c) {
                if (std::abs(tab.at(r, c)) > options.pivot_tolerance) {
                    column = c;
                    break;
                }
            }
            if (column) {
                tab.pivot(r, *column);
                ++solution.pivots;
                ++r;
            } else {
                tab.drop_row(r);
            }
        }
        for (std::size_t c = first_artificial; c < total; ++c) allowed[c] = false;
    }

    // Phase 2 minimizes; maximization negates the objective.
    const double sense = lp.sense == Sense::maximize ? -1.0 : 1.0;
    std::vector<double> costs(total, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double c = sense * lp.objective[j];
        const auto& map = maps[j];
        costs[map.column] += c * map.sign;
        if (map.negative) costs[*map.negative] -= c;
    }
    tab.set_costs(costs);
    const auto result = tab.optimize(allowed, options, solution.pivots);
    if (result == PhaseResult::unbounded) {
        solution.status = LpStatus::unbounded;
        return solution;
    }
    if (result == PhaseResult::pivot_limit) {
        solution.status = LpStatus::numerical_failure;
        return solution;
    }

    std::vector<double> column_values(total, 0.0);
    for (std::size_t r = 0; r < tab.rows(); ++r) column_values[tab.basic(r)] = tab.rhs(r);
    solution.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& map = maps[j];
        double x = map.offset + map.sign * column_values[map.column];
        if (map.negative) x -= column_values[*map.negative];
        solution.values[j] = x;
    }
    solution.objective_value = 0.0;
    for (std::size_t j = 0; j < n; ++j) solution.objective_value += lp.objective[j] * solution.values[j];
    solution.status = LpStatus::optimal;
    return solution;
}

} // namespace

LpSolution solve_lp(const LpProgram& lp, const SimplexOptions& options) {
    lp.check_well_formed();
    auto solution = solve_once(lp, options, 0.0);
    const auto acceptable = [&](const LpSolution& s) {
        return s.status != LpStatus::optimal ||
               max_constraint_violation(lp, s.values) <= options.feasibility_tolerance;
    };
    if (solution.status != LpStatus::numerical_failure && acceptable(solution)) {
        return solution;
    }
    // Retry on a slightly perturbed right-hand side to escape degenerate stalls.
    const std::size_t spent = solution.pivots;
    solution = solve_once(lp, options, 1e-10);
    solution.pivots += spent;
    if (solution.status == LpStatus::numerical_failure || !acceptable(solution)) {
        solution.status = LpStatus::numerical_failure;
        solution.values.clear();
        solution.objective_value = 0.0;
    }
    return solution;
}

} // namespace mdplab
