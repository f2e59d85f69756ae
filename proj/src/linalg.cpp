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

#include "mdplab/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace mdplab {

std::vector<double> solve_linear_system(DenseMatrix a, std::vector<double> b,
                                        double pivot_tolerance) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) {
        throw std::invalid_argument("solve_linear_system: dimension mismatch");
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot_row = r;
            }
        }
        if (best < pivot_tolerance) {
            throw SingularSystemError("singular system at column " + std::to_string(col));
        }
        if (pivot_row != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot_row, c));
            }
            std::swap(b[col], b[pivot_row]);
        }
        const double pivot = a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / pivot;
            if (factor == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
            }
            b[r] -= factor * b[col];
        }
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double sum = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            sum -= a(i, c) * x[c];
        }
        x[i] = sum / a(i, i);
    }
    return x;
}

} // namespace mdplab
