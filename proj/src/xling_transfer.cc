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

#include "corefkit/xling_transfer.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "corefkit/error.h"
#include "corefkit/unicode.h"

namespace corefkit {

SanityVerdict CheckTranslationSanity(std::string_view text,
                                     const SanityConfig& config) {
  std::u32string chars;
  for (char32_t cp : DecodeUtf8(text)) {
    if (!IsWhitespace(cp)) chars.push_back(cp);
  }
  if (chars.empty()) return {false, "empty"};
  if (std::all_of(chars.begin(), chars.end(), IsPunctuation)) {
    return {false, "all punctuation"};
  }

  std::size_t best_run = 0;
  char32_t best_char = 0;
  for (std::size_t i = 0; i < chars.size();) {
    std::size_t j = i;
    while (j < chars.size() && chars[j] == chars[i]) ++j;
    if (IsPunctuation(chars[i]) && j - i > best_run) {
      best_run = j - i;
      best_char = chars[i];
    }
    i = j;
  }
  const double needed = config.repeat_fraction * static_cast<double>(chars.size());
  if (best_run >= config.min_run &&
      static_cast<double>(best_run) + 1e-9 >= needed) {
    char code[16];
    std::snprintf(code, sizeof(code), "U+%04X", static_cast<unsigned>(best_char));
    return {false, "punctuation run of " + std::string(code) + " covers " +
                       std::to_string(best_run) + " of " +
                       std::to_string(chars.size()) + " characters"};
  }
  return {true, std::nullopt};
}

SanityVerdict CheckTranslationSanity(const Sentence& tokens,
                                     const SanityConfig& config) {
  std::string joined;
  for (const std::string& token : tokens) {
    if (!joined.empty()) joined += ' ';
    joined += token;
  }
  return CheckTranslationSanity(joined, config);
}

const char* ProjectionKindName(ProjectionKind kind) {
  switch (kind) {
    case ProjectionKind::kAligned: return "aligned";
    case ProjectionKind::kMisaligned: return "misaligned";
    case ProjectionKind::kNonAligned: return "non-aligned";
  }
  return "unknown";
}

ProjectionOutcome ProjectMention(const Span& mention,
                                 const AlignmentMap& alignment,
                                 std::size_t target_len) {
  std::set<std::size_t> targets;
  std::set<std::size_t> covered;
  for (const auto& [source, target] : alignment.pairs) {
    if (target >= target_len) {
      throw Error("alignment " + std::to_string(source) + "-" +
                  std::to_string(target) + " exceeds target length " +
                  std::to_string(target_len));
    }
    if (source >= mention.start && source < mention.end) {
      targets.insert(target);
      covered.insert(source);
    }
  }
  ProjectionOutcome out;
  if (targets.empty()) return out;
  out.targets.assign(targets.begin(), targets.end());
  const bool contiguous =
      out.targets.back() - out.targets.front() + 1 == out.targets.size();
  if (contiguous && covered.size() == mention.length()) {
    out.kind = ProjectionKind::kAligned;
    out.start = out.targets.front();
    out.end = out.targets.back() + 1;
  } else {
    out.kind = ProjectionKind::kMisaligned;
  }
  return out;
}

ProjectionSummary& ProjectionSummary::operator+=(const ProjectionSummary& other) {
  aligned += other.aligned;
  misaligned += other.misaligned;
  non_aligned += other.non_aligned;
  in_failed_sentences += other.in_failed_sentences;
  failed_sentences += other.failed_sentences;
  return *this;
}

ProjectionResult ProjectDocument(const Document& source,
                                 std::span<const AlignmentMap> alignments,
                                 std::span<const Sentence> target_sentences,
                                 const ProjectionOptions& options) {
  const std::size_t n = source.sentences.size();
  if (alignments.size() != n) {
    throw Error("document " + source.doc_key + ": " + std::to_string(n) +
                " sentences but " + std::to_string(alignments.size()) +
                " alignment lines");
  }
  if (target_sentences.size() != n) {
    throw Error("document " + source.doc_key + ": " + std::to_string(n) +
                " sentences but " + std::to_string(target_sentences.size()) +
                " target sentences");
  }

  ProjectionResult result;
  std::vector<bool> failed(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& [src, tgt] : alignments[s].pairs) {
      if (src >= source.sentences[s].size() ||
          tgt >= target_sentences[s].size()) {
        throw Error("document " + source.doc_key + ", sentence " +
                    std::to_string(s) + ": alignment " + std::to_string(src) +
                    "-" + std::to_string(tgt) + " out of range (" +
                    std::to_string(source.sentences[s].size()) + " source, " +
                    std::to_string(target_sentences[s].size()) +
                    " target words)");
      }
    }
    if (options.sanity &&
        !CheckTranslationSanity(target_sentences[s], *options.sanity).passed) {
      failed[s] = true;
      ++result.summary.failed_sentences;
    }
  }

  auto project = [&](const Span& span) -> std::optional<Span> {
    if (span.sentence >= n) {
      throw Error("document " + source.doc_key + ": mention " + ToString(span) +
                  " outside the document");
    }
    if (failed[span.sentence]) return std::nullopt;
    const ProjectionOutcome outcome = ProjectMention(
        span, alignments[span.sentence], target_sentences[span.sentence].size());
    if (outcome.kind != ProjectionKind::kAligned) return std::nullopt;
    return Span{span.sentence, outcome.start, outcome.end};
  };

  Document& target = result.target;
  target.doc_key = source.doc_key;
  target.language = options.target_language;
  target.sentences.assign(target_sentences.begin(), target_sentences.end());
  target.expanded = source.expanded;

  std::set<std::string> surviving;
  for (const Entity& entity : source.entities) {
    Entity projected{entity.id, {}};
    for (const Span& span : entity.mentions) {
      if (span.sentence >= n) {
        throw Error("document " + source.doc_key + ": mention " +
                    ToString(span) + " outside the document");
      }
      if (failed[span.sentence]) {
        ++result.summary.non_aligned;
        ++result.summary.in_failed_sentences;
        continue;
      }
      const ProjectionOutcome outcome =
          ProjectMention(span, alignments[span.sentence],
                         target_sentences[span.sentence].size());
      switch (outcome.kind) {
        case ProjectionKind::kAligned: {
          ++result.summary.aligned;
          const Span image{span.sentence, outcome.start, outcome.end};
          if (std::find(projected.mentions.begin(), projected.mentions.end(),
                        image) == projected.mentions.end()) {
            projected.mentions.push_back(image);
          }
          break;
        }
        case ProjectionKind::kMisaligned:
          ++result.summary.misaligned;
          break;
        case ProjectionKind::kNonAligned:
          ++result.summary.non_aligned;
          break;
      }
    }
    if (!projected.mentions.empty()) {
      surviving.insert(projected.id);
      target.entities.push_back(std::move(projected));
    }
  }

  for (const PluralLink& link : source.plural_links) {
    const std::optional<Span> anaphor = project(link.anaphor);
    if (!anaphor) continue;
    PluralLink projected{*anaphor, {}};
    for (const std::string& id : link.antecedents) {
      if (surviving.contains(id)) projected.antecedents.push_back(id);
    }
    if (projected.antecedents.size() >= 2) {
      target.plural_links.push_back(std::move(projected));
    }
  }
  return result;
}

namespace {

RateRow MakeRow(std::string group, const ProjectionSummary& summary) {
  RateRow row;
  row.group = std::move(group);
  row.mentions = summary.total();
  if (row.mentions > 0) {
    const Rational total(row.mentions);
    row.aligned = Rational(100 * summary.aligned) / total;
    row.misaligned = Rational(100 * summary.misaligned) / total;
    row.non_aligned = Rational(100 * summary.non_aligned) / total;
  }
  return row;
}

}  // namespace

RateTable AggregateProjectionStats(
    std::span<const std::pair<std::string, ProjectionSummary>> summaries) {
  RateTable table;
  if (summaries.empty()) return table;
  std::map<std::string, ProjectionSummary> groups;
  ProjectionSummary total;
  for (const auto& [group, summary] : summaries) {
    groups[group] += summary;
    total += summary;
  }
  for (const auto& [group, summary] : groups) {
    table.rows.push_back(MakeRow(group, summary));
  }
  table.total = MakeRow("Total", total);
  return table;
}

std::string RenderRateTable(const RateTable& table) {
  std::string out = "language\tmentions\taligned\tmisaligned\tnon-aligned\n";
  auto render = [&out](const RateRow& row) {
    out += row.group + "\t" + std::to_string(row.mentions) + "\t" +
           RenderRounded(row.aligned, 1) + "%\t" +
           RenderRounded(row.misaligned, 1) + "%\t" +
           RenderRounded(row.non_aligned, 1) + "%\n";
  };
  for (const RateRow& row : table.rows) render(row);
  if (table.total) render(*table.total);
  return out;
}

std::vector<std::size_t> SubwordToWordMap(const Sentence& words,
                                          const Sentence& subwords,
                                          const AlignmentMap& alignment) {
  std::vector<std::size_t> map(subwords.size(), kUnmapped);
  // Pairs are ordered by word index, so the first hit is the lowest word.
  for (const auto& [word, subword] : alignment.pairs) {
    if (word >= words.size() || subword >= subwords.size()) continue;
    if (map[subword] == kUnmapped) map[subword] = word;
  }
  return map;
}

}  // namespace corefkit
