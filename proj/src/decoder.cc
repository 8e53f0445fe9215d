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

#include "corefkit/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "corefkit/error.h"
#include "json.hpp"

namespace corefkit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root survives so that roots are first mentions.
  void Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

PairwiseScores::PairwiseScores(std::vector<Span> mentions,
                               std::vector<double> mention_scores)
    : mentions_(std::move(mentions)), mention_scores_(std::move(mention_scores)) {
  if (mentions_.size() != mention_scores_.size()) {
    throw Error(std::to_string(mentions_.size()) + " mentions but " +
                std::to_string(mention_scores_.size()) + " mention scores");
  }
  for (std::size_t i = 1; i < mentions_.size(); ++i) {
    if (!(mentions_[i - 1] < mentions_[i])) {
      throw Error("mention " + std::to_string(i) + " " + ToString(mentions_[i]) +
                  " is not after " + ToString(mentions_[i - 1]));
    }
  }
  for (std::size_t i = 0; i < mention_scores_.size(); ++i) {
    if (!std::isfinite(mention_scores_[i])) {
      throw Error("mention score " + std::to_string(i) + " is not finite");
    }
  }
  antecedent_scores_.resize(mentions_.size());
  for (std::size_t i = 0; i < mentions_.size(); ++i) {
    antecedent_scores_[i].assign(i, kNegInf);
  }
}

void PairwiseScores::set_antecedent_score(std::size_t i, std::size_t j,
                                          double score) {
  if (i >= size() || j >= i) {
    throw Error("antecedent score (" + std::to_string(i) + ", " +
                std::to_string(j) + ") needs j < i < " + std::to_string(size()));
  }
  if (std::isnan(score) || score == std::numeric_limits<double>::infinity()) {
    throw Error("antecedent score (" + std::to_string(i) + ", " +
                std::to_string(j) + ") must be finite or -inf");
  }
  antecedent_scores_[i][j] = score;
}

double PairwiseScores::antecedent_score(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= i) {
    throw Error("antecedent score (" + std::to_string(i) + ", " +
                std::to_string(j) + ") needs j < i < " + std::to_string(size()));
  }
  return antecedent_scores_[i][j];
}

double PairScore(const PairwiseScores& scores, std::size_t i,
                 std::optional<std::size_t> j) {
  if (i >= scores.size()) {
    throw Error("mention " + std::to_string(i) + " out of range");
  }
  if (!j) return 0.0;
  return scores.mention_score(i) + scores.mention_score(*j) +
         scores.antecedent_score(i, *j);
}

std::vector<double> AntecedentDistribution(const PairwiseScores& scores,
                                           std::size_t i) {
  std::vector<double> logits(i + 1);
  logits[0] = 0.0;
  for (std::size_t j = 0; j < i; ++j) logits[j + 1] = PairScore(scores, i, j);
  const double peak = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& value : logits) {
    value = value == kNegInf ? 0.0 : std::exp(value - peak);
    total += value;
  }
  for (double& value : logits) value /= total;
  return logits;
}

std::vector<std::optional<std::size_t>> SelectAntecedents(
    const PairwiseScores& scores) {
  std::vector<std::optional<std::size_t>> chosen(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    double best = 0.0;
    for (std::size_t j = i; j-- > 0;) {
      const double score = PairScore(scores, i, j);
      if (score > best) {
        best = score;
        chosen[i] = j;
      }
    }
  }
  return chosen;
}

std::vector<Entity> Decode(const PairwiseScores& scores) {
  const auto chosen = SelectAntecedents(scores);
  DisjointSets sets(scores.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) sets.Union(i, *chosen[i]);
  }
  std::vector<Entity> entities;
  std::vector<std::size_t> slot(scores.size(), 0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const std::size_t root = sets.Find(i);
    if (root == i) {
      slot[i] = entities.size();
      entities.push_back({std::to_string(entities.size()), {}});
    }
    entities[slot[root]].mentions.push_back(scores.mentions()[i]);
  }
  return entities;
}

namespace {

using Json = nlohmann::json;

[[noreturn]] void FieldError(std::size_t line_no, const std::string& path,
                             const std::string& what) {
  throw ParseError(line_no, "field '" + path + "': " + what);
}

std::size_t ReadIndex(const Json& value, std::size_t line_no,
                      const std::string& path) {
  if (!value.is_number_unsigned()) {
    FieldError(line_no, path, "expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

}  // namespace

ScoreRecord ParseScoreRecord(std::string_view line, std::size_t line_no) {
  Json record;
  try {
    record = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) FieldError(line_no, "", "expected an object");
  auto require = [&](const char* field) -> const Json& {
    auto it = record.find(field);
    if (it == record.end()) FieldError(line_no, field, "missing");
    return *it;
  };

  ScoreRecord out;
  const Json& key = require("doc_key");
  if (!key.is_string()) FieldError(line_no, "doc_key", "expected a string");
  out.doc_key = key.get<std::string>();
  if (auto it = record.find("language"); it != record.end()) {
    if (!it->is_string()) FieldError(line_no, "language", "expected a string");
    out.language = it->get<std::string>();
  }
  const Json& sentences = require("sentences");
  if (!sentences.is_array()) FieldError(line_no, "sentences", "expected an array");
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const std::string path = "sentences[" + std::to_string(s) + "]";
    if (!sentences[s].is_array()) FieldError(line_no, path, "expected an array");
    Sentence sentence;
    for (const Json& token : sentences[s]) {
      if (!token.is_string()) FieldError(line_no, path, "expected strings");
      sentence.push_back(token.get<std::string>());
    }
    out.sentences.push_back(std::move(sentence));
  }

  const Json& mentions = require("mentions");
  if (!mentions.is_array()) FieldError(line_no, "mentions", "expected an array");
  std::vector<Span> spans;
  for (std::size_t m = 0; m < mentions.size(); ++m) {
    const std::string path = "mentions[" + std::to_string(m) + "]";
    if (!mentions[m].is_array() || mentions[m].size() != 3) {
      FieldError(line_no, path, "expected [sentence, start, end]");
    }
    spans.push_back({ReadIndex(mentions[m][0], line_no, path + "[0]"),
                     ReadIndex(mentions[m][1], line_no, path + "[1]"),
                     ReadIndex(mentions[m][2], line_no, path + "[2]")});
  }
  const Json& s_m = require("s_m");
  if (!s_m.is_array()) FieldError(line_no, "s_m", "expected an array");
  std::vector<double> mention_scores;
  for (std::size_t i = 0; i < s_m.size(); ++i) {
    if (!s_m[i].is_number()) {
      FieldError(line_no, "s_m[" + std::to_string(i) + "]", "expected a number");
    }
    mention_scores.push_back(s_m[i].get<double>());
  }
  try {
    out.scores = PairwiseScores(std::move(spans), std::move(mention_scores));
  } catch (const Error& e) {
    throw ParseError(line_no, e.what());
  }

  if (auto it = record.find("s_a"); it != record.end()) {
    if (!it->is_array()) FieldError(line_no, "s_a", "expected an array");
    for (std::size_t t = 0; t < it->size(); ++t) {
      const std::string path = "s_a[" + std::to_string(t) + "]";
      const Json& triple = (*it)[t];
      if (!triple.is_array() || triple.size() != 3) {
        FieldError(line_no, path, "expected [i, j, value]");
      }
      const std::size_t i = ReadIndex(triple[0], line_no, path + "[0]");
      const std::size_t j = ReadIndex(triple[1], line_no, path + "[1]");
      double value = kNegInf;
      if (triple[2].is_number()) {
        value = triple[2].get<double>();
      } else if (!(triple[2].is_null() ||
                   (triple[2].is_string() && triple[2] == "-inf"))) {
        FieldError(line_no, path + "[2]", "expected a number, null or \"-inf\"");
      }
      try {
        out.scores.set_antecedent_score(i, j, value);
      } catch (const Error& e) {
        throw ParseError(line_no, path + ": " + e.what());
      }
    }
  }
  return out;
}

Document DecodeRecord(const ScoreRecord& record) {
  Document doc;
  doc.doc_key = record.doc_key;
  doc.language = record.language;
  doc.sentences = record.sentences;
  doc.entities = Decode(record.scores);
  return doc;
}

}  // namespace corefkit
