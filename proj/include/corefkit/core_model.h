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

#ifndef COREFKIT_CORE_MODEL_H_
#define COREFKIT_CORE_MODEL_H_

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace corefkit {

// Half-open word range [start, end) inside one sentence.
struct Span {
  std::size_t sentence = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end > start ? end - start : 0; }

  auto operator<=>(const Span&) const = default;
};

std::string ToString(const Span& span);

struct Entity {
  std::string id;
  std::vector<Span> mentions;

  bool operator==(const Entity&) const = default;
};

// A plural anaphor whose referent is the union of two or more entities.
struct PluralLink {
  Span anaphor;
  std::vector<std::string> antecedents;

  bool operator==(const PluralLink&) const = default;
};

using Sentence = std::vector<std::string>;

struct Document {
  std::string doc_key;
  std::string language;
  std::vector<Sentence> sentences;
  std::vector<Entity> entities;
  std::vector<PluralLink> plural_links;
  // Set by ExpandSplitAntecedents; entities may overlap once set.
  bool expanded = false;
  // Optional passthrough of CoNLL columns (all but the coreference
  // column), one list per token. Empty when the document did not come
  // from CoNLL.
  std::vector<std::vector<std::vector<std::string>>> columns;

  bool operator==(const Document&) const = default;

  // Index of the entity with the given id, or -1.
  int FindEntity(const std::string& id) const;
  std::size_t MentionCount() const;
};

enum class ViolationKind {
  kSentenceOutOfRange,
  kEmptySpan,
  kSpanOutOfBounds,
  kEmptyEntity,
  kDuplicateMention,
  kDuplicateEntityId,
  kOverlappingEntities,
  kDanglingReference,
  kTooFewAntecedents,
  kOrphanAnaphor,
  kColumnShape,
};

const char* ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

// Every invariant violation in `doc`; empty iff the document is valid.
std::vector<Violation> ValidateDocument(const Document& doc);

// Folds each plural anaphor's entity into every antecedent entity and
// dissolves the plural entity. Links are consumed: the result carries no
// plural links and is flagged expanded. Throws Error on an already
// expanded document or a dangling entity reference.
Document ExpandSplitAntecedents(const Document& doc);

// Drops single-mention entities together with the link references that
// pointed at them.
Document StripSingletons(const Document& doc);

// Sorted, de-duplicated copy of the union of all entity mentions.
std::vector<Span> UniqueMentions(const Document& doc);

}  // namespace corefkit

#endif  // COREFKIT_CORE_MODEL_H_
