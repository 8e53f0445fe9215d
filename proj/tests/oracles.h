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

// Brute-force reference scorers. They share no code with the library's
// metric kernels and are only meant for small instances.

#ifndef COREFKIT_TESTS_ORACLES_H_
#define COREFKIT_TESTS_ORACLES_H_

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "corefkit/core_model.h"
#include "corefkit/rational.h"

namespace corefkit::oracle {

using Entities = std::vector<std::vector<Span>>;

inline Entities FromDocument(const Document& doc) {
  Entities out;
  for (const Entity& e : doc.entities) {
    std::vector<Span> spans = e.mentions;
    std::sort(spans.begin(), spans.end());
    spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
    out.push_back(spans);
  }
  return out;
}

inline bool Contains(const std::vector<Span>& entity, const Span& span) {
  return std::find(entity.begin(), entity.end(), span) != entity.end();
}

// The entity containing `span` (non-overlapping input), or empty.
inline std::vector<Span> EntityOf(const Entities& side, const Span& span) {
  for (const auto& e : side) {
    if (Contains(e, span)) return e;
  }
  return {};
}

inline std::size_t Intersection(const std::vector<Span>& a,
                                const std::vector<Span>& b) {
  std::size_t n = 0;
  for (const Span& s : a) n += Contains(b, s) ? 1 : 0;
  return n;
}

struct Ratio {
  Rational num;
  Rational den;
};

// Per-mention B-cubed recall: average over key mentions m of
// |K_m ∩ R_m| / |K_m|.
inline Ratio BCubedRecall(const Entities& key, const Entities& response) {
  Ratio r{0, 0};
  for (const auto& k : key) {
    for (const Span& m : k) {
      const auto resp = EntityOf(response, m);
      r.num += Rational(Intersection(k, resp), k.size());
      r.den += 1;
    }
  }
  return r;
}

// MUC recall by counting the links needed to reconnect each key entity
// after cutting it along response boundaries: components are found by
// joining mention pairs that share a response entity.
inline Ratio MucRecall(const Entities& key, const Entities& response) {
  Ratio r{0, 0};
  for (const auto& k : key) {
    if (k.size() < 2) continue;
    std::vector<std::size_t> parent(k.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    for (std::size_t i = 0; i < k.size(); ++i) {
      for (std::size_t j = i + 1; j < k.size(); ++j) {
        for (const auto& resp : response) {
          if (Contains(resp, k[i]) && Contains(resp, k[j])) {
            parent[find(i)] = find(j);
          }
        }
      }
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < k.size(); ++i) roots.insert(find(i));
    r.num += Rational(k.size() - roots.size());
    r.den += Rational(k.size() - 1);
  }
  return r;
}

// LEA recall by enumerating every mention pair of each key entity and
// counting response entities holding both ends.
inline Ratio LeaRecall(const Entities& key, const Entities& response) {
  Ratio r{0, 0};
  for (const auto& k : key) {
    r.den += Rational(k.size());
    if (k.size() == 1) {
      for (const auto& resp : response) {
        if (resp.size() == 1 && resp.front() == k.front()) {
          r.num += 1;
          break;
        }
      }
      continue;
    }
    std::size_t links = 0;
    std::size_t resolved = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      for (std::size_t j = i + 1; j < k.size(); ++j) {
        ++links;
        for (const auto& resp : response) {
          if (Contains(resp, k[i]) && Contains(resp, k[j])) ++resolved;
        }
      }
    }
    r.num += Rational(k.size()) * Rational(resolved, links);
  }
  return r;
}

// Best total phi4 similarity over every one-to-one entity alignment, by
// enumerating permutations of the padded larger side.
inline Rational CeafBestSimilarity(const Entities& key,
                                   const Entities& response) {
  const std::size_t n = std::max(key.size(), response.size());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational best = 0;
  do {
    Rational total = 0;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (perm[i] >= response.size()) continue;
      const auto& r = response[perm[i]];
      total += Rational(2 * Intersection(key[i], r), key[i].size() + r.size());
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace corefkit::oracle

#endif  // COREFKIT_TESTS_ORACLES_H_
