// Copyright 2026 The corefkit Authors.
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

#include "corefkit/assignment.h"

#include <cstddef>
#include <limits>

namespace corefkit {
namespace {

// Minimum-cost assignment of n rows into m >= n columns, potentials form.
// cost is 1-based: cost[i][j] for i in 1..n, j in 1..m.
std::vector<int> SolveMinCost(const std::vector<std::vector<long double>>& cost,
                              std::size_t n, std::size_t m) {
  constexpr long double kInf = std::numeric_limits<long double>::infinity();
  std::vector<long double> u(n + 1, 0), v(m + 1, 0);
  std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<long double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = owner[j0];
      long double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const long double reduced = cost[i0][j] - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (owner[j] != 0) row_to_col[owner[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

}  // namespace

std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<double>>& weights) {
  const std::size_t rows = weights.size();
  const std::size_t cols = rows == 0 ? 0 : weights.front().size();
  if (rows == 0 || cols == 0) return std::vector<int>(rows, -1);

  const bool transpose = rows > cols;
  const std::size_t n = transpose ? cols : rows;
  const std::size_t m = transpose ? rows : cols;
  std::vector<std::vector<long double>> cost(
      n + 1, std::vector<long double>(m + 1, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const long double w = weights[i][j];
      if (transpose) {
        cost[j + 1][i + 1] = -w;
      } else {
        cost[i + 1][j + 1] = -w;
      }
    }
  }
  const std::vector<int> solved = SolveMinCost(cost, n, m);
  if (!transpose) return solved;
  std::vector<int> row_to_col(rows, -1);
  for (std::size_t c = 0; c < n; ++c) {
    if (solved[c] >= 0) row_to_col[solved[c]] = static_cast<int>(c);
  }
  return row_to_col;
}

}  // namespace corefkit
