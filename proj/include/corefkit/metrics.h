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

#ifndef COREFKIT_METRICS_H_
#define COREFKIT_METRICS_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/core_model.h"
#include "corefkit/rational.h"

namespace corefkit {

// An entity reduced to its sorted, de-duplicated mention spans.
using Cluster = std::vector<Span>;
using Clustering = std::vector<Cluster>;

Clustering ToClustering(const Document& doc);

// Pooled numerators and denominators of one metric. Corpus scores add
// these across documents before dividing.
struct MetricCounts {
  Rational recall_num;
  Rational recall_den;
  Rational precision_num;
  Rational precision_den;

  MetricCounts& operator+=(const MetricCounts& other);
  bool operator==(const MetricCounts&) const = default;
};

struct Prf {
  Rational precision;
  Rational recall;
  Rational f1;

  bool operator==(const Prf&) const = default;
};

enum class Metric { kMentions, kMuc, kBCubed, kCeafE, kLea };
inline constexpr std::array<Metric, 5> kAllMetrics = {
    Metric::kMentions, Metric::kMuc, Metric::kBCubed, Metric::kCeafE,
    Metric::kLea};

const char* MetricName(Metric metric);

// Exact-span mention detection over unique spans.
MetricCounts MentionCounts(const Clustering& key, const Clustering& response);
// Link-based MUC. Singleton entities add nothing to either side.
MetricCounts MucCounts(const Clustering& key, const Clustering& response);
// Entity-pair B-cubed: sum over key/response pairs of |k∩r|^2/|k|.
// Overlapping entities are scored as sets, so values can exceed 1.
MetricCounts BCubedCounts(const Clustering& key, const Clustering& response);
// Entity-based CEAF with phi4 = 2|k∩r|/(|k|+|r|) under an optimal
// one-to-one entity alignment.
MetricCounts CeafECounts(const Clustering& key, const Clustering& response);
// Link-based entity-aware metric. A singleton entity has importance 1 and
// counts as resolved iff the other side holds exactly that singleton.
MetricCounts LeaCounts(const Clustering& key, const Clustering& response);

MetricCounts ComputeCounts(Metric metric, const Clustering& key,
                           const Clustering& response);

// Divides pooled counts. A 0/0 ratio becomes 0 and, when `warnings` is
// given, appends a note naming `label`.
Prf Finalize(const MetricCounts& counts, std::string_view label = {},
             std::vector<std::string>* warnings = nullptr);

// Harmonic mean; 0 when both inputs are 0.
Rational F1(const Rational& precision, const Rational& recall);

// Document-level scorers. Throw Error when the doc_keys differ.
Prf MentionDetection(const Document& key, const Document& response,
                     std::vector<std::string>* warnings = nullptr);
Prf Muc(const Document& key, const Document& response,
        std::vector<std::string>* warnings = nullptr);
Prf BCubed(const Document& key, const Document& response,
           std::vector<std::string>* warnings = nullptr);
Prf CeafE(const Document& key, const Document& response,
          std::vector<std::string>* warnings = nullptr);
Prf Lea(const Document& key, const Document& response,
        std::vector<std::string>* warnings = nullptr);

// Arithmetic mean of the MUC, B-cubed and CEAF_e F1 values.
Rational ConllF1(const Rational& muc_f1, const Rational& bcubed_f1,
                 const Rational& ceafe_f1);

enum class SingletonMode { kInclude, kExclude };
enum class SplitMode { kPlain, kExpanded };

struct ScoreMode {
  SingletonMode singletons = SingletonMode::kInclude;
  SplitMode split = SplitMode::kPlain;
};

const char* SingletonModeName(SingletonMode mode);
const char* SplitModeName(SplitMode mode);

// Counts for every metric of one key/response document pair, after the
// mode transforms have been applied.
struct DocumentCounts {
  std::array<MetricCounts, kAllMetrics.size()> counts;

  DocumentCounts& operator+=(const DocumentCounts& other);
  bool operator==(const DocumentCounts&) const = default;
};

DocumentCounts ScoreDocument(const Document& key, const Document& response,
                             const ScoreMode& mode);

struct MetricScore {
  Metric metric;
  Prf prf;
};

struct ScoreReport {
  ScoreMode mode;
  std::size_t documents = 0;
  std::vector<MetricScore> metrics;
  Rational conll_f1;
  std::vector<std::string> warnings;

  const Prf& Get(Metric metric) const;
};

// Micro-averaged corpus scores. Responses pair with keys by doc_key; a key
// document without a response is scored against an empty response. Throws
// Error listing response doc_keys that have no key document.
//
// Per-document counts are computed on `threads` OpenMP threads and merged
// exactly, so the report does not depend on the thread count.
ScoreReport ScoreCorpus(std::span<const Document> key,
                        std::span<const Document> response,
                        const ScoreMode& mode, int threads = 1);

// Single-threaded reference for ScoreCorpus.
ScoreReport ScoreCorpusSerial(std::span<const Document> key,
                              std::span<const Document> response,
                              const ScoreMode& mode);

enum class ScoreStyle {
  kFraction,  // two decimals, truncated: 7/6 -> 1.16
  kPercent,   // integer percentages, rounded half up
};

// One row per metric in the order mentions, muc, bcub, ceafe, lea, conll.
std::string RenderReportTsv(const ScoreReport& report,
                            ScoreStyle style = ScoreStyle::kFraction);
// One JSON object with exact and decimal values, mode flags and warnings.
std::string RenderReportRecord(const ScoreReport& report);

}  // namespace corefkit

#endif  // COREFKIT_METRICS_H_
