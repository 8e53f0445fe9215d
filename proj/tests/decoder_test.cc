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

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "corefkit/error.h"
#include "doctest.h"

namespace corefkit {
namespace {

std::vector<Span> Spans(std::size_t n) {
  std::vector<Span> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({0, i, i + 1});
  return out;
}

PairwiseScores Zeros(std::size_t n) {
  return PairwiseScores(Spans(n), std::vector<double>(n, 0.0));
}

std::vector<std::vector<Span>> Clusters(const std::vector<Entity>& entities) {
  std::vector<std::vector<Span>> out;
  for (const Entity& e : entities) out.push_back(e.mentions);
  return out;
}

TEST_CASE("pair score") {
  PairwiseScores scores(Spans(2), {1.0, 1.0});
  scores.set_antecedent_score(1, 0, -1.0);
  CHECK(PairScore(scores, 1, 0) == 1.0);
  CHECK(PairScore(scores, 1, std::nullopt) == 0.0);
  CHECK(PairScore(scores, 0, std::nullopt) == 0.0);
  CHECK_THROWS_AS(PairScore(scores, 1, 1), Error);
  CHECK_THROWS_AS(PairScore(scores, 0, 1), Error);
  CHECK(std::isinf(Zeros(3).antecedent_score(2, 0)));
}

TEST_CASE("scores validation") {
  CHECK_THROWS_AS(PairwiseScores(Spans(2), {0.0}), Error);
  CHECK_THROWS_AS(PairwiseScores({{0, 1, 2}, {0, 0, 1}}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(PairwiseScores(Spans(1), {std::nan("")}), Error);
  PairwiseScores scores = Zeros(2);
  CHECK_THROWS_AS(scores.set_antecedent_score(0, 1, 0.0), Error);
  CHECK_THROWS_AS(scores.set_antecedent_score(1, 0, std::nan("")), Error);
}

TEST_CASE("antecedent distribution") {
  PairwiseScores scores = Zeros(3);
  CHECK(AntecedentDistribution(scores, 0) == std::vector<double>{1.0});
  scores.set_antecedent_score(1, 0, 0.0);
  CHECK(AntecedentDistribution(scores, 1) == std::vector<double>{0.5, 0.5});
  scores.set_antecedent_score(2, 0, std::log(2.0));
  scores.set_antecedent_score(2, 1, std::log(3.0));
  const auto p = AntecedentDistribution(scores, 2);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(2.0 / 6).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(3.0 / 6).epsilon(1e-12));
  // Unscored candidates get exactly zero.
  const auto q = AntecedentDistribution(Zeros(4), 3);
  CHECK(q == std::vector<double>{1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("random distributions sum to one") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> value(-50.0, 50.0);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::bernoulli_distribution missing(0.2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = size(rng);
    std::vector<double> s_m(n);
    for (double& v : s_m) v = value(rng);
    PairwiseScores scores(Spans(n), s_m);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (!missing(rng)) scores.set_antecedent_score(i, j, value(rng));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = AntecedentDistribution(scores, i);
      CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("decode") {
  SUBCASE("dominated antecedents give singletons") {
    PairwiseScores scores = Zeros(4);
    for (std::size_t i = 1; i < 4; ++i) {
      for (std::size_t j = 0; j < i; ++j) scores.set_antecedent_score(i, j, -1e6);
    }
    const auto entities = Decode(scores);
    REQUIRE(entities.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(entities[i].id == std::to_string(i));
      CHECK(entities[i].mentions == std::vector<Span>{{0, i, i + 1}});
    }
  }
  SUBCASE("positive link joins two mentions") {
    PairwiseScores scores = Zeros(2);
    scores.set_antecedent_score(1, 0, 1.0);
    CHECK(Clusters(Decode(scores)) ==
          std::vector<std::vector<Span>>{{{0, 0, 1}, {0, 1, 2}}});
  }
  SUBCASE("chain of three") {
    PairwiseScores scores = Zeros(3);
    scores.set_antecedent_score(1, 0, 1.0);
    scores.set_antecedent_score(2, 1, 1.0);
    scores.set_antecedent_score(2, 0, -1.0);
    const auto entities = Decode(scores);
    REQUIRE(entities.size() == 1);
    CHECK(entities[0].mentions.size() == 3);
  }
  SUBCASE("zero score ties go to the dummy") {
    PairwiseScores scores = Zeros(2);
    scores.set_antecedent_score(1, 0, 0.0);
    CHECK(SelectAntecedents(scores)[1] == std::nullopt);
    CHECK(Decode(scores).size() == 2);
  }
  SUBCASE("candidate ties go to the closest") {
    PairwiseScores scores = Zeros(3);
    scores.set_antecedent_score(2, 0, 2.0);
    scores.set_antecedent_score(2, 1, 2.0);
    CHECK(SelectAntecedents(scores)[2] == std::optional<std::size_t>(1));
  }
  SUBCASE("empty input") { CHECK(Decode(PairwiseScores()).empty()); }
}

PairwiseScores RandomScores(std::mt19937& rng, std::size_t n, double scale,
                            double shift) {
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  std::vector<double> s_m(n);
  for (double& v : s_m) v = value(rng) * scale + shift;
  PairwiseScores scores(Spans(n), s_m);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      scores.set_antecedent_score(i, j, value(rng) * scale + shift);
    }
  }
  return scores;
}

TEST_CASE("decode properties") {
  for (unsigned seed = 0; seed < 200; ++seed) {
    std::mt19937 rng(seed);
    const std::size_t n = 1 + seed % 10;
    const PairwiseScores scores = RandomScores(rng, n, 1.0, 0.0);
    const auto entities = Decode(scores);
    std::vector<Span> seen;
    for (const Entity& e : entities) {
      CHECK_FALSE(e.mentions.empty());
      seen.insert(seen.end(), e.mentions.begin(), e.mentions.end());
    }
    std::sort(seen.begin(), seen.end());
    CHECK(seen == scores.mentions());

    // Scaling by a positive constant keeps every argmax.
    std::mt19937 again(seed);
    const PairwiseScores scaled = RandomScores(again, n, 3.5, 0.0);
    CHECK(SelectAntecedents(scaled) == SelectAntecedents(scores));

    // Unscored pairs stay singletons whatever the mention scores.
    std::mt19937 other(seed);
    std::uniform_real_distribution<double> big(-1e3, 1e3);
    std::vector<double> s_m(n);
    for (double& v : s_m) v = big(other);
    CHECK(Decode(PairwiseScores(Spans(n), s_m)).size() == n);
  }
}

TEST_CASE("score record") {
  const std::string line =
      R"({"doc_key":"d","language":"hin_Deva","sentences":[["a","b","c"]],)"
      R"("mentions":[[0,0,1],[0,1,2],[0,2,3]],"s_m":[0,0,0],)"
      R"("s_a":[[1,0,1.5],[2,1,null],[2,0,"-inf"]]})";
  const ScoreRecord record = ParseScoreRecord(line, 4);
  CHECK(record.scores.antecedent_score(1, 0) == 1.5);
  CHECK(std::isinf(record.scores.antecedent_score(2, 1)));
  const Document doc = DecodeRecord(record);
  CHECK(doc.doc_key == "d");
  CHECK(doc.language == "hin_Deva");
  REQUIRE(doc.entities.size() == 2);
  CHECK(doc.entities[0].mentions == std::vector<Span>{{0, 0, 1}, {0, 1, 2}});
  CHECK(ValidateDocument(doc).empty());

  CHECK_THROWS_AS(ParseScoreRecord(R"({"doc_key":"d"})", 2), ParseError);
  try {
    ParseScoreRecord(R"({"doc_key":"d","sentences":[["a"]],"mentions":[[0,0,1]],)"
                     R"("s_m":[0],"s_a":[[0,0,1]]})",
                     7);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
  }
}

}  // namespace
}  // namespace corefkit
