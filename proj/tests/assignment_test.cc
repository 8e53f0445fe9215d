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

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"

namespace corefkit {
namespace {

double Total(const std::vector<std::vector<double>>& w, const std::vector<int>& a) {
  double total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= 0) total += w[i][a[i]];
  }
  return total;
}

double BruteForce(const std::vector<std::vector<double>>& w) {
  const std::size_t rows = w.size();
  const std::size_t cols = rows ? w[0].size() : 0;
  std::vector<std::size_t> perm(std::max(rows, cols));
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0;
  do {
    double total = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (perm[i] < cols) total += w[i][perm[i]];
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST_CASE("small assignments") {
  CHECK(MaxWeightAssignment({}).empty());
  CHECK(MaxWeightAssignment({{0.5}}) == std::vector<int>{0});
  CHECK(MaxWeightAssignment({{1, 2}, {3, 1}}) == std::vector<int>{1, 0});
  const auto tall = MaxWeightAssignment({{1}, {5}, {2}});
  CHECK(tall == std::vector<int>{-1, 0, -1});
  CHECK(MaxWeightAssignment({{1, 9, 2}}) == std::vector<int>{1});
}

TEST_CASE("random grids match permutation search") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  for (std::size_t rows = 1; rows <= 7; ++rows) {
    for (std::size_t cols = 1; cols <= 7; ++cols) {
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::vector<double>> w(rows, std::vector<double>(cols));
        for (auto& row : w) {
          for (double& v : row) v = trial == 0 ? 0.0 : value(rng);
        }
        const auto a = MaxWeightAssignment(w);
        REQUIRE(a.size() == rows);
        std::vector<int> used;
        for (int c : a) {
          if (c >= 0) used.push_back(c);
        }
        std::sort(used.begin(), used.end());
        CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
        CHECK(used.size() == std::min(rows, cols));
        CHECK(Total(w, a) == doctest::Approx(BruteForce(w)).epsilon(1e-12));
      }
    }
  }
}

}  // namespace
}  // namespace corefkit
