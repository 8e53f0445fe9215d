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

#include "corefkit/stats.h"

#include <set>

#include "corefkit/error.h"
#include "json.hpp"

namespace corefkit {

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  n_sents += other.n_sents;
  n_mentions += other.n_mentions;
  n_clusters_multi += other.n_clusters_multi;
  n_singletons += other.n_singletons;
  n_clusters_total += other.n_clusters_total;
  n_split_antecedents += other.n_split_antecedents;
  n_docs += other.n_docs;
  return *this;
}

CorpusStats DocumentStats(const Document& doc) {
  CorpusStats stats;
  stats.n_docs = 1;
  stats.n_sents = doc.sentences.size();
  stats.n_mentions = UniqueMentions(doc).size();
  for (const Entity& entity : doc.entities) {
    const std::set<Span> distinct(entity.mentions.begin(), entity.mentions.end());
    if (distinct.size() >= 2) {
      ++stats.n_clusters_multi;
    } else if (distinct.size() == 1) {
      ++stats.n_singletons;
    }
  }
  stats.n_clusters_total = stats.n_clusters_multi + stats.n_singletons;
  stats.n_split_antecedents = doc.plural_links.size();
  return stats;
}

StatsTable ComputeCorpusStatsSerial(std::span<const Document> docs,
                                    const GroupKey& group_key) {
  StatsTable table;
  for (const Document& doc : docs) {
    const CorpusStats stats = DocumentStats(doc);
    table.groups[group_key(doc)] += stats;
    table.total += stats;
  }
  return table;
}

StatsTable ComputeCorpusStats(std::span<const Document> docs,
                              const GroupKey& group_key, int threads) {
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  std::vector<CorpusStats> per_doc(docs.size());
  std::vector<std::string> keys(docs.size());
#pragma omp parallel for num_threads(threads > 0 ? threads : 1) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    per_doc[i] = DocumentStats(docs[i]);
  }
  // group_key may not be thread-safe.
  for (std::size_t i = 0; i < docs.size(); ++i) keys[i] = group_key(docs[i]);
  StatsTable table;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    table.groups[keys[i]] += per_doc[i];
    table.total += per_doc[i];
  }
  return table;
}

Rational SplitAntecedentRatio(const CorpusStats& stats) {
  if (stats.n_mentions == 0) {
    throw Error("split-antecedent ratio undefined: corpus has no mentions");
  }
  return Rational(100 * stats.n_split_antecedents) / Rational(stats.n_mentions);
}

std::string RenderPercent(const Rational& percent) {
  return RenderRounded(percent, 1) + "%";
}

namespace {

struct Column {
  const char* header;
  std::size_t CorpusStats::*field;
};

constexpr Column kColumns[] = {
    {"#sents", &CorpusStats::n_sents},
    {"#mentions", &CorpusStats::n_mentions},
    {"#coreference clusters", &CorpusStats::n_clusters_total},
    {"#clusters (>=2 mentions)", &CorpusStats::n_clusters_multi},
    {"#split-antecedents", &CorpusStats::n_split_antecedents},
    {"#singletons", &CorpusStats::n_singletons},
    {"#docs", &CorpusStats::n_docs},
};

std::string Cell(const std::vector<CorpusStats>& parts,
                 std::size_t CorpusStats::*field) {
  if (parts.size() == 1) return std::to_string(parts.front().*field);
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(parts[i].*field);
  }
  return out + ")";
}

std::string Row(const std::string& label, const std::vector<CorpusStats>& parts) {
  std::string out = label;
  CorpusStats pooled;
  for (const CorpusStats& part : parts) pooled += part;
  for (const Column& column : kColumns) out += "\t" + Cell(parts, column.field);
  out += "\t";
  out += pooled.n_mentions == 0 ? "-" : RenderPercent(SplitAntecedentRatio(pooled));
  return out + "\n";
}

std::set<std::string> AllGroups(std::span<const PartitionedStats> partitions) {
  std::set<std::string> groups;
  for (const PartitionedStats& p : partitions) {
    for (const auto& [group, stats] : p.table.groups) groups.insert(group);
  }
  return groups;
}

CorpusStats Lookup(const StatsTable& table, const std::string& group) {
  auto it = table.groups.find(group);
  return it == table.groups.end() ? CorpusStats{} : it->second;
}

}  // namespace

std::string RenderStatsTsv(std::span<const PartitionedStats> partitions) {
  std::string out = "group";
  for (const Column& column : kColumns) out += std::string("\t") + column.header;
  out += "\tsplit-antecedent ratio\n";
  if (partitions.size() > 1) {
    out += "# partitions:";
    for (const PartitionedStats& p : partitions) out += " " + p.name;
    out += "\n";
  }
  for (const std::string& group : AllGroups(partitions)) {
    std::vector<CorpusStats> parts;
    for (const PartitionedStats& p : partitions) parts.push_back(Lookup(p.table, group));
    out += Row(group, parts);
  }
  std::vector<CorpusStats> totals;
  for (const PartitionedStats& p : partitions) totals.push_back(p.table.total);
  if (!totals.empty()) out += Row("Total", totals);
  return out;
}

std::string RenderStatsRecords(std::span<const PartitionedStats> partitions) {
  using Json = nlohmann::ordered_json;
  auto to_json = [](const CorpusStats& s) {
    Json j = Json::object();
    j["sents"] = s.n_sents;
    j["mentions"] = s.n_mentions;
    j["clusters_total"] = s.n_clusters_total;
    j["clusters_multi"] = s.n_clusters_multi;
    j["split_antecedents"] = s.n_split_antecedents;
    j["singletons"] = s.n_singletons;
    j["docs"] = s.n_docs;
    j["split_antecedent_ratio"] =
        s.n_mentions == 0 ? Json(nullptr)
                          : Json(RenderPercent(SplitAntecedentRatio(s)));
    return j;
  };
  std::string out;
  auto emit = [&](const std::string& group, auto&& get) {
    Json record = Json::object();
    record["group"] = group;
    Json parts = Json::object();
    for (const PartitionedStats& p : partitions) parts[p.name] = to_json(get(p));
    record["partitions"] = std::move(parts);
    out += record.dump() + "\n";
  };
  for (const std::string& group : AllGroups(partitions)) {
    emit(group, [&](const PartitionedStats& p) { return Lookup(p.table, group); });
  }
  if (!partitions.empty()) {
    emit("Total", [](const PartitionedStats& p) { return p.table.total; });
  }
  return out;
}

}  // namespace corefkit
