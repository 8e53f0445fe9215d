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

#include "corefkit/core_model.h"

#include <random>

#include "corefkit/error.h"
#include "doctest.h"
#include "test_util.h"

namespace corefkit {
namespace {

using testing::IronLadies;
using testing::LetterDoc;
using testing::Word;

std::vector<ViolationKind> Kinds(const Document& doc) {
  std::vector<ViolationKind> kinds;
  for (const Violation& v : ValidateDocument(doc)) kinds.push_back(v.kind);
  return kinds;
}

std::set<std::set<Span>> EntitySets(const Document& doc) {
  std::set<std::set<Span>> out;
  for (const Entity& e : doc.entities) {
    out.insert(std::set<Span>(e.mentions.begin(), e.mentions.end()));
  }
  return out;
}

TEST_CASE("well-formed two-sentence document has no violations") {
  Document doc;
  doc.doc_key = "ok";
  doc.sentences = {{"John", "left", "."}, {"He", "smiled", "."}};
  doc.entities = {{"0", {{0, 0, 1}, {1, 0, 1}}}};
  CHECK(ValidateDocument(doc).empty());
}

TEST_CASE("span past the sentence end is reported once") {
  Document doc;
  doc.sentences = {{"a", "b"}};
  doc.entities = {{"0", {{0, 1, 3}}}};
  CHECK(Kinds(doc) == std::vector{ViolationKind::kSpanOutOfBounds});
}

TEST_CASE("plural link naming a missing entity is dangling") {
  Document doc = LetterDoc({"ab", "cd", "e"});
  doc.plural_links = {{Word('e'), {"0", "9"}}};
  CHECK(Kinds(doc) == std::vector{ViolationKind::kDanglingReference});
}

TEST_CASE("structural violations") {
  SUBCASE("empty span") {
    Document doc = LetterDoc({});
    doc.entities = {{"0", {{0, 2, 2}}}};
    CHECK(Kinds(doc) == std::vector{ViolationKind::kEmptySpan});
  }
  SUBCASE("sentence index") {
    Document doc = LetterDoc({});
    doc.entities = {{"0", {{4, 0, 1}}}};
    CHECK(Kinds(doc) == std::vector{ViolationKind::kSentenceOutOfRange});
  }
  SUBCASE("duplicate id and empty entity") {
    Document doc = LetterDoc({"a", "b"});
    doc.entities[1].id = "0";
    doc.entities.push_back({"7", {}});
    CHECK(Kinds(doc) == std::vector{ViolationKind::kDuplicateEntityId,
                                    ViolationKind::kEmptyEntity});
  }
  SUBCASE("repeated mention inside one entity") {
    Document doc = LetterDoc({"aa"});
    CHECK(Kinds(doc) == std::vector{ViolationKind::kDuplicateMention});
  }
  SUBCASE("mention shared by two entities") {
    Document doc = LetterDoc({"ab", "bc"});
    CHECK(Kinds(doc) == std::vector{ViolationKind::kOverlappingEntities});
    doc.expanded = true;
    CHECK(ValidateDocument(doc).empty());
  }
  SUBCASE("link with one antecedent and an orphan anaphor") {
    Document doc = LetterDoc({"ab", "cd"});
    doc.plural_links = {{Word('z'), {"0", "0"}}};
    CHECK(Kinds(doc) == std::vector{ViolationKind::kOrphanAnaphor,
                                    ViolationKind::kTooFewAntecedents});
  }
}

TEST_CASE("expansion folds the plural entity into each antecedent") {
  const Document doc = IronLadies();
  REQUIRE(ValidateDocument(doc).empty());
  const Document expanded = ExpandSplitAntecedents(doc);
  CHECK(expanded.expanded);
  CHECK(expanded.plural_links.empty());
  const Span a{0, 0, 1}, b{0, 6, 7}, c{1, 0, 1}, d{2, 0, 1}, e{3, 4, 9},
      f{3, 11, 16};
  CHECK(EntitySets(expanded) ==
        std::set<std::set<Span>>{{a, f, c, d}, {b, e, c, d}});
  // 6 memberships + 2 plural mentions x 2 antecedents - 2 dissolved = 8.
  CHECK(doc.MentionCount() == 6);
  CHECK(expanded.MentionCount() == 8);
  CHECK(ValidateDocument(expanded).empty());
}

TEST_CASE("expansion of an anaphor-only plural entity") {
  Document doc = LetterDoc({"x", "y", "p"});
  doc.plural_links = {{Word('p'), {"0", "1"}}};
  const Document expanded = ExpandSplitAntecedents(doc);
  CHECK(EntitySets(expanded) == std::set<std::set<Span>>{
                                    {Word('x'), Word('p')}, {Word('y'), Word('p')}});
}

TEST_CASE("expansion without plural links is the identity") {
  const Document doc = LetterDoc({"ab", "c"});
  CHECK(ExpandSplitAntecedents(doc) == doc);
}

TEST_CASE("expansion errors") {
  Document expanded = ExpandSplitAntecedents(IronLadies());
  CHECK_THROWS_AS(ExpandSplitAntecedents(expanded), Error);
  Document dangling = IronLadies();
  dangling.plural_links[0].antecedents = {"1", "missing"};
  CHECK_THROWS_AS(ExpandSplitAntecedents(dangling), Error);
}

TEST_CASE("chained plural links are expanded in one pass") {
  // Entity 2 ("p") is plural over 0 and 1; entity 3 ("q") is plural over
  // 1 and 2. Additions use the original mention sets, and both plural
  // entities are dissolved.
  Document doc = LetterDoc({"a", "b", "p", "q"});
  doc.plural_links = {{Word('p'), {"0", "1"}}, {Word('q'), {"1", "2"}}};
  const Document expanded = ExpandSplitAntecedents(doc);
  CHECK(EntitySets(expanded) ==
        std::set<std::set<Span>>{{Word('a'), Word('p')},
                                 {Word('b'), Word('p'), Word('q')}});
}

TEST_CASE("strip singletons") {
  CHECK(EntitySets(StripSingletons(LetterDoc({"ab", "c"}))) ==
        std::set<std::set<Span>>{{Word('a'), Word('b')}});
  CHECK(StripSingletons(LetterDoc({"a", "b", "c"})).entities.empty());

  Document linked = LetterDoc({"ab", "c"});
  linked.plural_links = {{Word('c'), {"0", "1"}}};
  REQUIRE(ValidateDocument(linked).empty());
  const Document stripped = StripSingletons(linked);
  CHECK(EntitySets(stripped) == std::set<std::set<Span>>{{Word('a'), Word('b')}});
  CHECK(stripped.plural_links.empty());
}

TEST_CASE("strip singletons keeps links whose antecedents survive") {
  Document doc = LetterDoc({"ab", "cd", "ef", "g"});
  doc.plural_links = {{Word('e'), {"0", "1", "3"}}};
  const Document stripped = StripSingletons(doc);
  REQUIRE(stripped.plural_links.size() == 1);
  CHECK(stripped.plural_links[0].antecedents == std::vector<std::string>{"0", "1"});
}

TEST_CASE("properties over random documents") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Document doc = testing::RandomDocument(rng, 8, 4);
    if (doc.entities.size() >= 3 && trial % 2 == 0) {
      doc.plural_links = {{doc.entities[2].mentions.front(), {"0", "1"}}};
    }
    REQUIRE(ValidateDocument(doc).empty());
    const Document once = StripSingletons(doc);
    CHECK(StripSingletons(once) == once);
    CHECK(ValidateDocument(once).empty());
    const Document expanded = ExpandSplitAntecedents(doc);
    CHECK(ValidateDocument(expanded).empty());
  }
}

}  // namespace
}  // namespace corefkit
