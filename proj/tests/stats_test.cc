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

#include <random>

#include "corefkit/error.h"
#include "doctest.h"
#include "test_util.h"

namespace corefkit {
namespace {

TEST_CASE("document stats") {
  Document doc = testing::LetterDoc({"ab", "c"});
  doc.plural_links = {{testing::Word('c'), {"0", "0"}}};
  const CorpusStats stats = DocumentStats(doc);
  CHECK(stats == CorpusStats{1, 3, 1, 1, 2, 1, 1});
  CHECK(ComputeCorpusStats({}, [](const Document&) { return "x"; }).total ==
        CorpusStats{});
}

TEST_CASE("split antecedent ratio") {
  CorpusStats projected;
  projected.n_mentions = 3821540 + 472083 + 558093;
  projected.n_split_antecedents = 93668 + 10505 + 12944;
  CHECK(SplitAntecedentRatio(projected) == Rational(11711700, 4851716));
  CHECK(RenderPercent(SplitAntecedentRatio(projected)) == "2.4%");

  CorpusStats annotated;
  annotated.n_mentions = 10512 + 1306 + 1255;
  annotated.n_split_antecedents = 287 + 31 + 36;
  CHECK(RenderPercent(SplitAntecedentRatio(annotated)) == "2.7%");

  CorpusStats none;
  none.n_mentions = 5;
  CHECK(RenderPercent(SplitAntecedentRatio(none)) == "0.0%");
  CHECK_THROWS_AS(SplitAntecedentRatio(CorpusStats{}), Error);
}

std::vector<Document> RandomCorpus(unsigned seed, int n) {
  std::mt19937 rng(seed);
  std::vector<Document> docs;
  for (int i = 0; i < n; ++i) {
    Document doc = testing::RandomDocument(rng, 8, 4, "d" + std::to_string(i));
    doc.language = i % 3 ? "hin_Deva" : "tam_Taml";
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::string Language(const Document& doc) { return doc.language; }

TEST_CASE("corpus stats") {
  const std::vector<Document> docs = RandomCorpus(7, 90);
  const StatsTable serial = ComputeCorpusStatsSerial(docs, Language);
  CHECK(ComputeCorpusStats(docs, Language, 1) == serial);
  CHECK(ComputeCorpusStats(docs, Language, 4) == serial);
  REQUIRE(serial.groups.size() == 2);
  CorpusStats sum;
  for (const auto& [name, stats] : serial.groups) {
    sum += stats;
    CHECK(stats.n_clusters_total == stats.n_clusters_multi + stats.n_singletons);
  }
  CHECK(sum == serial.total);
  CHECK(serial.total.n_docs == 90);

  // Additivity over an arbitrary split of the corpus.
  const std::span<const Document> all(docs);
  CorpusStats halves = ComputeCorpusStatsSerial(all.first(33), Language).total;
  halves += ComputeCorpusStatsSerial(all.subspan(33), Language).total;
  CHECK(halves == serial.total);
}

TEST_CASE("stats rendering") {
  std::vector<Document> docs = {testing::LetterDoc({"ab", "c"}, "x")};
  docs[0].language = "hin_Deva";
  docs[0].plural_links = {{testing::Word('c'), {"0", "0"}}};
  const StatsTable table = ComputeCorpusStatsSerial(docs, Language);
  const std::vector<PartitionedStats> one = {{"all", table}};
  const std::string tsv = RenderStatsTsv(one);
  CHECK(tsv.find("hin_Deva\t1\t3\t2\t1\t1\t1\t1\t33.3%\n") != std::string::npos);
  CHECK(tsv.find("Total\t1\t3\t2\t1\t1\t1\t1\t33.3%\n") != std::string::npos);
  const std::vector<PartitionedStats> two = {{"train", table}, {"dev", table}};
  CHECK(RenderStatsTsv(two).find("Total\t(1, 1)\t(3, 3)") != std::string::npos);
  CHECK_FALSE(RenderStatsRecords(one).empty());
}

}  // namespace
}  // namespace corefkit
