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

#ifndef COREFKIT_DECODER_H_
#define COREFKIT_DECODER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/core_model.h"

namespace corefkit {

// Mention-ranking scores for one document. Mentions are 0-based and in
// discourse order; an antecedent of mention i is any j < i, or the dummy
// antecedent (std::nullopt) whose pair score is fixed at 0.
class PairwiseScores {
 public:
  PairwiseScores() = default;
  // Every antecedent score starts at -infinity. Throws Error when the
  // mentions are not strictly increasing or a mention score is not finite.
  PairwiseScores(std::vector<Span> mentions, std::vector<double> mention_scores);

  std::size_t size() const { return mentions_.size(); }
  const std::vector<Span>& mentions() const { return mentions_; }
  double mention_score(std::size_t i) const { return mention_scores_.at(i); }

  // Throws Error unless j < i < size(); NaN is rejected.
  void set_antecedent_score(std::size_t i, std::size_t j, double score);
  double antecedent_score(std::size_t i, std::size_t j) const;

 private:
  std::vector<Span> mentions_;
  std::vector<double> mention_scores_;
  // Row i holds the scores of antecedents 0..i-1.
  std::vector<std::vector<double>> antecedent_scores_;
};

// s_m(i) + s_m(j) + s_a(i, j), or exactly 0 for the dummy antecedent.
// Throws Error when j >= i.
double PairScore(const PairwiseScores& scores, std::size_t i,
                 std::optional<std::size_t> j);

// Softmax of the pair scores of mention i over {dummy, 0, ..., i-1};
// entry 0 is the dummy. -infinity scores get probability exactly 0.
std::vector<double> AntecedentDistribution(const PairwiseScores& scores,
                                           std::size_t i);

// Greedy antecedent per mention: the highest pair score wins, ties go to
// the dummy and then to the closest candidate.
std::vector<std::optional<std::size_t>> SelectAntecedents(
    const PairwiseScores& scores);

// Clusters the selected links. Entities are ordered by their first mention
// and named "0", "1", ...; every mention lands in exactly one entity.
std::vector<Entity> Decode(const PairwiseScores& scores);

// Score file record, one document per line:
//   {"doc_key":..,"language":..,"sentences":[[..],..],
//    "mentions":[[sent,start,end],..],"s_m":[..],"s_a":[[i,j,v],..]}
// Omitted s_a triples, and v given as null or "-inf", mean -infinity.
struct ScoreRecord {
  std::string doc_key;
  std::string language;
  std::vector<Sentence> sentences;
  PairwiseScores scores;
};

ScoreRecord ParseScoreRecord(std::string_view line, std::size_t line_no = 0);

// Canonical document holding the decoded entities.
Document DecodeRecord(const ScoreRecord& record);

}  // namespace corefkit

#endif  // COREFKIT_DECODER_H_
