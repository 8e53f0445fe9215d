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

#ifndef COREFKIT_ASSIGNMENT_H_
#define COREFKIT_ASSIGNMENT_H_

#include <vector>

namespace corefkit {

// Maximum-total-weight one-to-one assignment (Hungarian method, O(n^2 m)).
// `weights` is a rows x cols matrix; rectangular inputs are allowed.
// Returns, for each row, its assigned column or -1 when the row is left
// unmatched because there are fewer columns than rows.
std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<double>>& weights);

}  // namespace corefkit

#endif  // COREFKIT_ASSIGNMENT_H_
