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

#include "corefkit/metrics.h"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

#include "corefkit/assignment.h"
#include "corefkit/error.h"
#include "json.hpp"

namespace corefkit {
namespace {

// For each span, the indices of the clusters that contain it.
using SpanIndex = std::map<Span, std::vector<std::size_t>>;

SpanIndex IndexClusters(const Clustering& clusters) {
  SpanIndex index;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (const Span& span : clusters[c]) index[span].push_back(c);
  }
  return index;
}

// |k ∩ r| for every r that intersects k.
std::map<std::size_t, std::size_t> Overlaps(const Cluster& k,
                                            const SpanIndex& index) {
  std::map<std::size_t, std::size_t> overlaps;
  for (const Span& span : k) {
    auto it = index.find(span);
    if (it == index.end()) continue;
    for (std::size_t r : it->second) ++overlaps[r];
  }
  return overlaps;
}

Rational Links(std::size_t size) {
  return Rational(size * (size - 1) / 2);
}

// One direction of MUC: numerator and denominator of recall of `key`
// against `response`.
std::pair<Rational, Rational> MucSide(const Clustering& key,
                                      const Clustering& response) {
  const SpanIndex index = IndexClusters(response);
  std::size_t num = 0;
  std::size_t den = 0;
  for (const Cluster& k : key) {
    if (k.size() < 2) continue;
    std::size_t partitions = Overlaps(k, index).size();
    for (const Span& span : k) {
      if (!index.contains(span)) ++partitions;
    }
    num += k.size() - std::min(partitions, k.size());
    den += k.size() - 1;
  }
  return {Rational(num), Rational(den)};
}

std::pair<Rational, Rational> BCubedSide(const Clustering& key,
                                         const Clustering& response) {
  const SpanIndex index = IndexClusters(response);
  Rational num = 0;
  std::size_t den = 0;
  for (const Cluster& k : key) {
    if (k.empty()) continue;
    std::size_t squares = 0;
    for (const auto& [r, overlap] : Overlaps(k, index)) {
      squares += overlap * overlap;
    }
    num += Rational(squares, k.size());
    den += k.size();
  }
  return {num, Rational(den)};
}

std::pair<Rational, Rational> LeaSide(const Clustering& key,
                                      const Clustering& response) {
  const SpanIndex index = IndexClusters(response);
  Rational num = 0;
  std::size_t den = 0;
  for (const Cluster& k : key) {
    if (k.empty()) continue;
    den += k.size();
    if (k.size() == 1) {
      auto it = index.find(k.front());
      if (it == index.end()) continue;
      for (std::size_t r : it->second) {
        if (response[r].size() == 1) {
          num += 1;
          break;
        }
      }
      continue;
    }
    std::size_t resolved = 0;
    for (const auto& [r, overlap] : Overlaps(k, index)) {
      resolved += overlap * (overlap - 1) / 2;
    }
    num += Rational(k.size()) * Rational(resolved) / Links(k.size());
  }
  return {num, Rational(den)};
}

void CheckSameDocument(const Document& key, const Document& response) {
  if (key.doc_key != response.doc_key) {
    throw Error("doc_key mismatch: key '" + key.doc_key + "' vs response '" +
                response.doc_key + "'");
  }
}

Prf ScorePair(Metric metric, const Document& key, const Document& response,
              std::vector<std::string>* warnings) {
  CheckSameDocument(key, response);
  return Finalize(
      ComputeCounts(metric, ToClustering(key), ToClustering(response)),
      MetricName(metric), warnings);
}

}  // namespace

Clustering ToClustering(const Document& doc) {
  Clustering clusters;
  clusters.reserve(doc.entities.size());
  for (const Entity& entity : doc.entities) {
    Cluster cluster = entity.mentions;
    std::sort(cluster.begin(), cluster.end());
    cluster.erase(std::unique(cluster.begin(), cluster.end()), cluster.end());
    if (!cluster.empty()) clusters.push_back(std::move(cluster));
  }
  return clusters;
}

MetricCounts& MetricCounts::operator+=(const MetricCounts& other) {
  recall_num += other.recall_num;
  recall_den += other.recall_den;
  precision_num += other.precision_num;
  precision_den += other.precision_den;
  return *this;
}

const char* MetricName(Metric metric) {
  switch (metric) {
    case Metric::kMentions: return "mentions";
    case Metric::kMuc: return "muc";
    case Metric::kBCubed: return "bcub";
    case Metric::kCeafE: return "ceafe";
    case Metric::kLea: return "lea";
  }
  return "unknown";
}

MetricCounts MentionCounts(const Clustering& key, const Clustering& response) {
  std::set<Span> key_spans, response_spans;
  for (const Cluster& c : key) key_spans.insert(c.begin(), c.end());
  for (const Cluster& c : response) response_spans.insert(c.begin(), c.end());
  std::size_t matched = 0;
  for (const Span& span : response_spans) matched += key_spans.count(span);
  return {Rational(matched), Rational(key_spans.size()), Rational(matched),
          Rational(response_spans.size())};
}

MetricCounts MucCounts(const Clustering& key, const Clustering& response) {
  auto [r_num, r_den] = MucSide(key, response);
  auto [p_num, p_den] = MucSide(response, key);
  return {r_num, r_den, p_num, p_den};
}

MetricCounts BCubedCounts(const Clustering& key, const Clustering& response) {
  auto [r_num, r_den] = BCubedSide(key, response);
  auto [p_num, p_den] = BCubedSide(response, key);
  return {r_num, r_den, p_num, p_den};
}

MetricCounts CeafECounts(const Clustering& key, const Clustering& response) {
  MetricCounts counts{0, Rational(key.size()), 0, Rational(response.size())};
  if (key.empty() || response.empty()) return counts;

  const SpanIndex index = IndexClusters(response);
  std::vector<std::vector<double>> weights(
      key.size(), std::vector<double>(response.size(), 0.0));
  std::vector<std::map<std::size_t, std::size_t>> overlaps(key.size());
  for (std::size_t k = 0; k < key.size(); ++k) {
    overlaps[k] = Overlaps(key[k], index);
    for (const auto& [r, overlap] : overlaps[k]) {
      weights[k][r] = 2.0 * static_cast<double>(overlap) /
                      static_cast<double>(key[k].size() + response[r].size());
    }
  }
  const std::vector<int> match = MaxWeightAssignment(weights);
  Rational similarity = 0;
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (match[k] < 0) continue;
    const auto r = static_cast<std::size_t>(match[k]);
    auto it = overlaps[k].find(r);
    if (it == overlaps[k].end()) continue;
    similarity += Rational(2 * it->second, key[k].size() + response[r].size());
  }
  counts.recall_num = similarity;
  counts.precision_num = similarity;
  return counts;
}

MetricCounts LeaCounts(const Clustering& key, const Clustering& response) {
  auto [r_num, r_den] = LeaSide(key, response);
  auto [p_num, p_den] = LeaSide(response, key);
  return {r_num, r_den, p_num, p_den};
}

MetricCounts ComputeCounts(Metric metric, const Clustering& key,
                           const Clustering& response) {
  switch (metric) {
    case Metric::kMentions: return MentionCounts(key, response);
    case Metric::kMuc: return MucCounts(key, response);
    case Metric::kBCubed: return BCubedCounts(key, response);
    case Metric::kCeafE: return CeafECounts(key, response);
    case Metric::kLea: return LeaCounts(key, response);
  }
  return {};
}

Rational F1(const Rational& precision, const Rational& recall) {
  if (precision == 0 && recall == 0) return 0;
  return 2 * precision * recall / (precision + recall);
}

Prf Finalize(const MetricCounts& counts, std::string_view label,
             std::vector<std::string>* warnings) {
  auto divide = [&](const Rational& num, const Rational& den,
                    const char* what) -> Rational {
    if (den != 0) return num / den;
    if (warnings) {
      warnings->push_back(std::string(label) + " " + what +
                          " undefined (0/0), reported as 0");
    }
    return 0;
  };
  Prf prf;
  prf.precision = divide(counts.precision_num, counts.precision_den, "precision");
  prf.recall = divide(counts.recall_num, counts.recall_den, "recall");
  prf.f1 = F1(prf.precision, prf.recall);
  return prf;
}

Prf MentionDetection(const Document& key, const Document& response,
                     std::vector<std::string>* warnings) {
  return ScorePair(Metric::kMentions, key, response, warnings);
}

Prf Muc(const Document& key, const Document& response,
        std::vector<std::string>* warnings) {
  return ScorePair(Metric::kMuc, key, response, warnings);
}

Prf BCubed(const Document& key, const Document& response,
           std::vector<std::string>* warnings) {
  return ScorePair(Metric::kBCubed, key, response, warnings);
}

Prf CeafE(const Document& key, const Document& response,
          std::vector<std::string>* warnings) {
  return ScorePair(Metric::kCeafE, key, response, warnings);
}

Prf Lea(const Document& key, const Document& response,
        std::vector<std::string>* warnings) {
  return ScorePair(Metric::kLea, key, response, warnings);
}

Rational ConllF1(const Rational& muc_f1, const Rational& bcubed_f1,
                 const Rational& ceafe_f1) {
  return (muc_f1 + bcubed_f1 + ceafe_f1) / 3;
}

const char* SingletonModeName(SingletonMode mode) {
  return mode == SingletonMode::kInclude ? "include" : "exclude";
}

const char* SplitModeName(SplitMode mode) {
  return mode == SplitMode::kPlain ? "plain" : "expanded";
}

DocumentCounts& DocumentCounts::operator+=(const DocumentCounts& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

namespace {

Document ApplyMode(const Document& doc, const ScoreMode& mode) {
  Document out = mode.singletons == SingletonMode::kExclude
                     ? StripSingletons(doc)
                     : doc;
  if (mode.split == SplitMode::kExpanded && !out.expanded) {
    out = ExpandSplitAntecedents(out);
  }
  return out;
}

}  // namespace

DocumentCounts ScoreDocument(const Document& key, const Document& response,
                             const ScoreMode& mode) {
  CheckSameDocument(key, response);
  const Clustering k = ToClustering(ApplyMode(key, mode));
  const Clustering r = ToClustering(ApplyMode(response, mode));
  DocumentCounts out;
  for (std::size_t i = 0; i < kAllMetrics.size(); ++i) {
    out.counts[i] = ComputeCounts(kAllMetrics[i], k, r);
  }
  return out;
}

const Prf& ScoreReport::Get(Metric metric) const {
  for (const MetricScore& score : metrics) {
    if (score.metric == metric) return score.prf;
  }
  throw Error(std::string("metric missing from report: ") + MetricName(metric));
}

namespace {

struct PairedCorpus {
  std::vector<const Document*> keys;
  std::vector<Document> responses;
  std::vector<std::string> warnings;
};

PairedCorpus PairDocuments(std::span<const Document> key,
                           std::span<const Document> response) {
  std::map<std::string, const Document*> by_key;
  for (const Document& doc : key) {
    if (!by_key.emplace(doc.doc_key, &doc).second) {
      throw Error("duplicate key doc_key: " + doc.doc_key);
    }
  }
  std::map<std::string, const Document*> by_response;
  std::vector<std::string> unmatched;
  for (const Document& doc : response) {
    if (!by_response.emplace(doc.doc_key, &doc).second) {
      throw Error("duplicate response doc_key: " + doc.doc_key);
    }
    if (!by_key.contains(doc.doc_key)) unmatched.push_back(doc.doc_key);
  }
  if (!unmatched.empty()) {
    std::string list;
    for (const std::string& k : unmatched) list += (list.empty() ? "" : ", ") + k;
    throw Error("response documents without a key document: " + list);
  }
  PairedCorpus paired;
  for (const Document& doc : key) {
    paired.keys.push_back(&doc);
    auto it = by_response.find(doc.doc_key);
    if (it != by_response.end()) {
      paired.responses.push_back(*it->second);
    } else {
      Document empty;
      empty.doc_key = doc.doc_key;
      empty.language = doc.language;
      empty.sentences = doc.sentences;
      paired.responses.push_back(std::move(empty));
      paired.warnings.push_back("document " + doc.doc_key +
                                ": no response, scored as empty");
    }
  }
  return paired;
}

ScoreReport BuildReport(const DocumentCounts& total, const ScoreMode& mode,
                        std::size_t documents,
                        std::vector<std::string> warnings) {
  ScoreReport report;
  report.mode = mode;
  report.documents = documents;
  report.warnings = std::move(warnings);
  for (std::size_t i = 0; i < kAllMetrics.size(); ++i) {
    report.metrics.push_back(
        {kAllMetrics[i], Finalize(total.counts[i], MetricName(kAllMetrics[i]),
                                  &report.warnings)});
  }
  report.conll_f1 = ConllF1(report.Get(Metric::kMuc).f1,
                            report.Get(Metric::kBCubed).f1,
                            report.Get(Metric::kCeafE).f1);
  for (const MetricScore& score : report.metrics) {
    const std::pair<const char*, const Rational*> fields[] = {
        {"precision", &score.prf.precision},
        {"recall", &score.prf.recall},
        {"f1", &score.prf.f1}};
    for (const auto& [name, value] : fields) {
      if (*value > 1) {
        report.warnings.push_back(
            std::string(MetricName(score.metric)) + " " + name + " " +
            RenderExact(*value) + " exceeds 1 under " +
            SplitModeName(mode.split) + " mode");
      }
    }
  }
  return report;
}

}  // namespace

ScoreReport ScoreCorpusSerial(std::span<const Document> key,
                              std::span<const Document> response,
                              const ScoreMode& mode) {
  PairedCorpus paired = PairDocuments(key, response);
  DocumentCounts total;
  for (std::size_t i = 0; i < paired.keys.size(); ++i) {
    total += ScoreDocument(*paired.keys[i], paired.responses[i], mode);
  }
  return BuildReport(total, mode, paired.keys.size(), std::move(paired.warnings));
}

ScoreReport ScoreCorpus(std::span<const Document> key,
                        std::span<const Document> response,
                        const ScoreMode& mode, int threads) {
  PairedCorpus paired = PairDocuments(key, response);
  const auto n = static_cast<std::ptrdiff_t>(paired.keys.size());
  std::vector<DocumentCounts> per_doc(paired.keys.size());
  std::vector<std::exception_ptr> errors(paired.keys.size());
#pragma omp parallel for num_threads(threads > 0 ? threads : 1) schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      per_doc[i] = ScoreDocument(*paired.keys[i], paired.responses[i], mode);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  DocumentCounts total;
  for (const DocumentCounts& counts : per_doc) total += counts;
  return BuildReport(total, mode, paired.keys.size(), std::move(paired.warnings));
}

namespace {

std::string Render(const Rational& value, ScoreStyle style) {
  if (style == ScoreStyle::kPercent) return RenderRounded(value * 100, 0);
  return RenderTruncated(value, 2);
}

}  // namespace

std::string RenderReportTsv(const ScoreReport& report, ScoreStyle style) {
  std::string out = "# singletons=" +
                    std::string(SingletonModeName(report.mode.singletons)) +
                    " split=" + SplitModeName(report.mode.split) +
                    " documents=" + std::to_string(report.documents) + "\n";
  out += "metric\tprecision\trecall\tf1\n";
  for (const MetricScore& score : report.metrics) {
    out += std::string(MetricName(score.metric)) + "\t" +
           Render(score.prf.precision, style) + "\t" +
           Render(score.prf.recall, style) + "\t" + Render(score.prf.f1, style) +
           "\n";
  }
  out += "conll\t\t\t" + Render(report.conll_f1, style) + "\n";
  for (const std::string& warning : report.warnings) {
    out += "# warning: " + warning + "\n";
  }
  return out;
}

std::string RenderReportRecord(const ScoreReport& report) {
  using Json = nlohmann::ordered_json;
  auto value = [](const Rational& v) {
    Json j = Json::object();
    j["exact"] = RenderExact(v);
    j["decimal"] = RenderTruncated(v, 2);
    return j;
  };
  Json record = Json::object();
  record["mode"] = {{"singletons", SingletonModeName(report.mode.singletons)},
                    {"split", SplitModeName(report.mode.split)}};
  record["documents"] = report.documents;
  Json metrics = Json::object();
  for (const MetricScore& score : report.metrics) {
    Json m = Json::object();
    m["precision"] = value(score.prf.precision);
    m["recall"] = value(score.prf.recall);
    m["f1"] = value(score.prf.f1);
    metrics[MetricName(score.metric)] = std::move(m);
  }
  record["metrics"] = std::move(metrics);
  record["conll_f1"] = value(report.conll_f1);
  record["warnings"] = report.warnings;
  return record.dump() + "\n";
}

}  // namespace corefkit
