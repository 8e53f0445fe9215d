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

#ifndef COREFKIT_XLING_TRANSFER_H_
#define COREFKIT_XLING_TRANSFER_H_

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corefkit/core_model.h"
#include "corefkit/corpus_io.h"
#include "corefkit/rational.h"

namespace corefkit {

// Translation sanity check.

struct SanityConfig {
  // Share of non-whitespace characters a single punctuation run must cover.
  double repeat_fraction = 0.9;
  // Minimum length of that run.
  std::size_t min_run = 5;
};

struct SanityVerdict {
  bool passed = true;
  std::optional<std::string> reason;
};

// Fails a translation that is empty, entirely punctuation, or dominated by
// one repeated punctuation character.
SanityVerdict CheckTranslationSanity(std::string_view text,
                                     const SanityConfig& config = {});
SanityVerdict CheckTranslationSanity(const Sentence& tokens,
                                     const SanityConfig& config = {});

// Mention projection.

enum class ProjectionKind { kAligned, kMisaligned, kNonAligned };

const char* ProjectionKindName(ProjectionKind kind);

struct ProjectionOutcome {
  ProjectionKind kind = ProjectionKind::kNonAligned;
  // Target word range; meaningful only for kAligned.
  std::size_t start = 0;
  std::size_t end = 0;
  // Sorted target indices; filled for kAligned and kMisaligned.
  std::vector<std::size_t> targets;

  bool operator==(const ProjectionOutcome&) const = default;
};

// Projects the source words of `mention` through its sentence's
// `alignment`. Aligned requires every source word to be aligned and the
// union of their targets to be a contiguous run. Throws Error when an
// alignment points at or past `target_len`.
ProjectionOutcome ProjectMention(const Span& mention,
                                 const AlignmentMap& alignment,
                                 std::size_t target_len);

struct ProjectionSummary {
  std::size_t aligned = 0;
  std::size_t misaligned = 0;
  std::size_t non_aligned = 0;
  // Mentions inside sentences whose translation failed the sanity check.
  // They are already counted in non_aligned.
  std::size_t in_failed_sentences = 0;
  std::size_t failed_sentences = 0;

  std::size_t total() const { return aligned + misaligned + non_aligned; }
  ProjectionSummary& operator+=(const ProjectionSummary& other);
  bool operator==(const ProjectionSummary&) const = default;
};

struct ProjectionOptions {
  std::string target_language;
  // When set, target sentences failing the check are treated as holes.
  std::optional<SanityConfig> sanity;
};

struct ProjectionResult {
  Document target;
  ProjectionSummary summary;
};

// Builds the target-language document from the Aligned projections of
// every source mention. Throws Error on sentence count mismatches or
// out-of-range alignments.
ProjectionResult ProjectDocument(const Document& source,
                                 std::span<const AlignmentMap> alignments,
                                 std::span<const Sentence> target_sentences,
                                 const ProjectionOptions& options = {});

struct RateRow {
  std::string group;
  std::size_t mentions = 0;
  Rational aligned;
  Rational misaligned;
  Rational non_aligned;
};

struct RateTable {
  // Sorted by group name.
  std::vector<RateRow> rows;
  // Absent for empty input.
  std::optional<RateRow> total;
};

// Percentages of aligned/misaligned/non-aligned mentions per group.
RateTable AggregateProjectionStats(
    std::span<const std::pair<std::string, ProjectionSummary>> summaries);

// TSV with one-decimal percentages.
std::string RenderRateTable(const RateTable& table);

// Subword to word mapping.

inline constexpr std::size_t kUnmapped = std::numeric_limits<std::size_t>::max();

// Maps each subword to the lowest word index it is aligned to, or
// kUnmapped. `alignment` holds (word, subword) pairs.
std::vector<std::size_t> SubwordToWordMap(const Sentence& words,
                                          const Sentence& subwords,
                                          const AlignmentMap& alignment);

}  // namespace corefkit

#endif  // COREFKIT_XLING_TRANSFER_H_
