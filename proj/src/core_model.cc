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

#include <algorithm>
#include <map>
#include <set>

#include "corefkit/error.h"

namespace corefkit {

std::string ToString(const Span& span) {
  return "[" + std::to_string(span.sentence) + ":" +
         std::to_string(span.start) + "," + std::to_string(span.end) + ")";
}

int Document::FindEntity(const std::string& id) const {
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (entities[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

std::size_t Document::MentionCount() const {
  std::size_t count = 0;
  for (const Entity& entity : entities) count += entity.mentions.size();
  return count;
}

const char* ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSentenceOutOfRange: return "sentence-out-of-range";
    case ViolationKind::kEmptySpan: return "empty-span";
    case ViolationKind::kSpanOutOfBounds: return "span-out-of-bounds";
    case ViolationKind::kEmptyEntity: return "empty-entity";
    case ViolationKind::kDuplicateMention: return "duplicate-mention";
    case ViolationKind::kDuplicateEntityId: return "duplicate-entity-id";
    case ViolationKind::kOverlappingEntities: return "overlapping-entities";
    case ViolationKind::kDanglingReference: return "dangling-reference";
    case ViolationKind::kTooFewAntecedents: return "too-few-antecedents";
    case ViolationKind::kOrphanAnaphor: return "orphan-anaphor";
    case ViolationKind::kColumnShape: return "column-shape";
  }
  return "unknown";
}

namespace {

void CheckSpan(const Document& doc, const Span& span, const std::string& where,
               std::vector<Violation>& out) {
  if (span.sentence >= doc.sentences.size()) {
    out.push_back({ViolationKind::kSentenceOutOfRange,
                   where + " " + ToString(span) + ": document has " +
                       std::to_string(doc.sentences.size()) + " sentences"});
    return;
  }
  if (span.start >= span.end) {
    out.push_back({ViolationKind::kEmptySpan, where + " " + ToString(span) +
                                                  ": start must precede end"});
    return;
  }
  const std::size_t len = doc.sentences[span.sentence].size();
  if (span.end > len) {
    out.push_back({ViolationKind::kSpanOutOfBounds,
                   where + " " + ToString(span) + ": sentence " +
                       std::to_string(span.sentence) + " has " +
                       std::to_string(len) + " tokens"});
  }
}

}  // namespace

std::vector<Violation> ValidateDocument(const Document& doc) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  std::map<Span, std::string> owner;
  for (const Entity& entity : doc.entities) {
    const std::string where = "entity " + entity.id;
    if (!ids.insert(entity.id).second) {
      out.push_back({ViolationKind::kDuplicateEntityId,
                     where + ": id used by more than one entity"});
    }
    if (entity.mentions.empty()) {
      out.push_back({ViolationKind::kEmptyEntity, where + ": no mentions"});
    }
    std::set<Span> seen;
    for (const Span& span : entity.mentions) {
      CheckSpan(doc, span, where, out);
      if (!seen.insert(span).second) {
        out.push_back({ViolationKind::kDuplicateMention,
                       where + ": mention " + ToString(span) + " repeated"});
        continue;
      }
      auto [it, inserted] = owner.emplace(span, entity.id);
      if (!inserted && !doc.expanded) {
        out.push_back({ViolationKind::kOverlappingEntities,
                       "mention " + ToString(span) + " belongs to entities " +
                           it->second + " and " + entity.id});
      }
    }
  }
  for (std::size_t i = 0; i < doc.plural_links.size(); ++i) {
    const PluralLink& link = doc.plural_links[i];
    const std::string where = "plural link " + std::to_string(i);
    CheckSpan(doc, link.anaphor, where + " anaphor", out);
    if (!owner.contains(link.anaphor)) {
      out.push_back({ViolationKind::kOrphanAnaphor,
                     where + ": anaphor " + ToString(link.anaphor) +
                         " belongs to no entity"});
    }
    std::set<std::string> distinct;
    for (const std::string& id : link.antecedents) {
      if (!ids.contains(id)) {
        out.push_back({ViolationKind::kDanglingReference,
                       where + ": unknown antecedent entity " + id});
      }
      distinct.insert(id);
    }
    if (distinct.size() < 2) {
      out.push_back({ViolationKind::kTooFewAntecedents,
                     where + ": needs at least 2 distinct antecedents, has " +
                         std::to_string(distinct.size())});
    }
  }
  if (!doc.columns.empty()) {
    bool ok = doc.columns.size() == doc.sentences.size();
    for (std::size_t s = 0; ok && s < doc.sentences.size(); ++s) {
      ok = doc.columns[s].size() == doc.sentences[s].size();
    }
    if (!ok) {
      out.push_back({ViolationKind::kColumnShape,
                     "column passthrough does not match sentence shape"});
    }
  }
  return out;
}

Document ExpandSplitAntecedents(const Document& doc) {
  if (doc.expanded) {
    throw Error("document " + doc.doc_key + " is already expanded");
  }
  if (doc.plural_links.empty()) return doc;

  std::set<std::size_t> dissolved;
  std::vector<std::vector<Span>> additions(doc.entities.size());
  for (const PluralLink& link : doc.plural_links) {
    int plural = -1;
    for (std::size_t e = 0; e < doc.entities.size() && plural < 0; ++e) {
      const auto& mentions = doc.entities[e].mentions;
      if (std::find(mentions.begin(), mentions.end(), link.anaphor) !=
          mentions.end()) {
        plural = static_cast<int>(e);
      }
    }
    if (plural < 0) {
      throw Error("document " + doc.doc_key + ": plural anaphor " +
                  ToString(link.anaphor) + " belongs to no entity");
    }
    dissolved.insert(static_cast<std::size_t>(plural));
    for (const std::string& id : link.antecedents) {
      const int target = doc.FindEntity(id);
      if (target < 0) {
        throw Error("document " + doc.doc_key +
                    ": plural link names unknown entity " + id);
      }
      // Original mention sets only: chained links are not followed.
      const auto& source = doc.entities[plural].mentions;
      auto& extra = additions[target];
      extra.insert(extra.end(), source.begin(), source.end());
    }
  }

  Document out = doc;
  out.entities.clear();
  out.plural_links.clear();
  out.expanded = true;
  for (std::size_t e = 0; e < doc.entities.size(); ++e) {
    if (dissolved.contains(e)) continue;
    Entity entity = doc.entities[e];
    for (const Span& span : additions[e]) {
      if (std::find(entity.mentions.begin(), entity.mentions.end(), span) ==
          entity.mentions.end()) {
        entity.mentions.push_back(span);
      }
    }
    out.entities.push_back(std::move(entity));
  }
  return out;
}

Document StripSingletons(const Document& doc) {
  Document out = doc;
  out.entities.clear();
  out.plural_links.clear();
  std::set<std::string> kept;
  std::set<Span> kept_mentions;
  for (const Entity& entity : doc.entities) {
    if (entity.mentions.size() == 1) continue;
    kept.insert(entity.id);
    kept_mentions.insert(entity.mentions.begin(), entity.mentions.end());
    out.entities.push_back(entity);
  }
  for (const PluralLink& link : doc.plural_links) {
    if (!kept_mentions.contains(link.anaphor)) continue;
    PluralLink trimmed{link.anaphor, {}};
    for (const std::string& id : link.antecedents) {
      if (kept.contains(id)) trimmed.antecedents.push_back(id);
    }
    if (trimmed.antecedents.size() >= 2) {
      out.plural_links.push_back(std::move(trimmed));
    }
  }
  return out;
}

std::vector<Span> UniqueMentions(const Document& doc) {
  std::vector<Span> spans;
  for (const Entity& entity : doc.entities) {
    spans.insert(spans.end(), entity.mentions.begin(), entity.mentions.end());
  }
  std::sort(spans.begin(), spans.end());
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
  return spans;
}

}  // namespace corefkit
