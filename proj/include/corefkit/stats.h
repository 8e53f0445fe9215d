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

#ifndef COREFKIT_STATS_H_
#define COREFKIT_STATS_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "corefkit/core_model.h"
#include "corefkit/rational.h"

namespace corefkit {

struct CorpusStats {
  std::size_t n_sents = 0;
  // Unique mention spans.
  std::size_t n_mentions = 0;
  // Entities with two or more mentions.
  std::size_t n_clusters_multi = 0;
  std::size_t n_singletons = 0;
  // Every entity, singletons included: n_clusters_multi + n_singletons.
  std::size_t n_clusters_total = 0;
  // One per plural link anaphor.
  std::size_t n_split_antecedents = 0;
  std::size_t n_docs = 0;

  CorpusStats& operator+=(const CorpusStats& other);
  bool operator==(const CorpusStats&) const = default;
};

CorpusStats DocumentStats(const Document& doc);

struct StatsTable {
  std::map<std::string, CorpusStats> groups;
  CorpusStats total;

  bool operator==(const StatsTable&) const = default;
};

using GroupKey = std::function<std::string(const Document&)>;

// Counts per group and in total, folding per-document counts computed on
// `threads` OpenMP threads.
StatsTable ComputeCorpusStats(std::span<const Document> docs,
                              const GroupKey& group_key, int threads = 1);

// Single-threaded reference for ComputeCorpusStats.
StatsTable ComputeCorpusStatsSerial(std::span<const Document> docs,
                                    const GroupKey& group_key);

// 100 * n_split_antecedents / n_mentions. Throws Error when there are no
// mentions.
Rational SplitAntecedentRatio(const CorpusStats& stats);
// One decimal, rounded half up: "2.4%".
std::string RenderPercent(const Rational& percent);

// A stats table per named partition (train/dev/test, or a single one).
struct PartitionedStats {
  std::string name;
  StatsTable table;
};

// TSV with one row per group plus a Total row. With several partitions each
// cell is a "(a, b, c)" tuple in partition order; the ratio column pools
// all partitions.
std::string RenderStatsTsv(std::span<const PartitionedStats> partitions);
// One JSON object per line: per group, per partition, every count.
std::string RenderStatsRecords(std::span<const PartitionedStats> partitions);

}  // namespace corefkit

#endif  // COREFKIT_STATS_H_
