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

#ifndef COREFKIT_CORPUS_IO_H_
#define COREFKIT_CORPUS_IO_H_

#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corefkit/core_model.h"

namespace corefkit {

// CoNLL-2012 coreference column format.
//
// Documents are delimited by "#begin document <key>" and "#end document";
// a blank line ends a sentence. The coreference annotation is the last
// whitespace-separated column: "-" or "|"-joined atoms "(N", "N)", "(N)".
// When the first column is an integer the row is read as
// "index token ... coref", otherwise as the CoNLL-2012 layout
// "doc part index token ... coref". Every column except the last is kept
// in Document::columns so that writing reproduces the row.
//
// Throws ParseError carrying the offending line.
std::vector<Document> ParseConll(std::istream& in);
std::vector<Document> ParseConll(std::string_view text);

// Serializes documents as CoNLL. Plural links cannot be represented and
// are dropped with a message appended to `warnings`. Throws Error for
// expanded documents and for nested mentions of one entity.
std::string WriteConll(std::span<const Document> docs,
                       std::vector<std::string>* warnings = nullptr);

// Line-delimited JSON, one document per line:
//   {"doc_key":..,"language":..,"sentences":[[tok,..],..],
//    "entities":[{"id":..,"mentions":[[sent,start,end],..]},..],
//    "plural_links":[{"anaphor":[sent,start,end],"antecedents":[id,..]},..],
//    "expanded":false}
// plus an optional "columns" field carrying CoNLL passthrough columns.
// Blank lines are skipped. Schema violations throw ParseError naming the
// line and field path; document invariants are not checked here.
std::vector<Document> ParseCanonical(std::istream& in);
std::vector<Document> ParseCanonical(std::string_view text);
Document ParseCanonicalRecord(std::string_view line, std::size_t line_no = 0);

std::string WriteCanonicalRecord(const Document& doc);
std::string WriteCanonical(std::span<const Document> docs);

// Word alignments for one sentence pair, 0-based (source, target) indices.
struct AlignmentMap {
  std::set<std::pair<std::size_t, std::size_t>> pairs;

  bool operator==(const AlignmentMap&) const = default;
};

// One line of space-separated "i-j" tokens.
AlignmentMap ParseAlignmentLine(std::string_view line, std::size_t line_no = 0);
// One map per input line.
std::vector<AlignmentMap> ParseAlignments(std::istream& in);
std::vector<AlignmentMap> ParseAlignments(std::string_view text);
std::string WriteAlignments(std::span<const AlignmentMap> maps);

// One sentence per line, tokens separated by spaces.
std::vector<Sentence> ParseTokenLines(std::istream& in);
std::vector<Sentence> ParseTokenLines(std::string_view text);

}  // namespace corefkit

#endif  // COREFKIT_CORPUS_IO_H_
