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

#include "corefkit/corpus_io.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "corefkit/error.h"
#include "json.hpp"

namespace corefkit {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kBeginDocument = "#begin document ";
constexpr std::string_view kEndDocument = "#end document";

void StripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::vector<std::string> SplitWhitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> ParseIndex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Reads a document body, tracking open mentions per entity id.
class ConllDocumentReader {
 public:
  ConllDocumentReader(std::string key, std::size_t begin_line)
      : begin_line_(begin_line) {
    doc_.doc_key = std::move(key);
  }

  void AddRow(const std::string& line, std::size_t line_no) {
    std::vector<std::string> cols = SplitWhitespace(line);
    if (cols.size() < 3) {
      throw ParseError(line_no, "expected at least 3 columns, found " +
                                    std::to_string(cols.size()));
    }
    if (column_count_ == 0) column_count_ = cols.size();
    if (cols.size() != column_count_) {
      throw ParseError(line_no, "expected " + std::to_string(column_count_) +
                                    " columns, found " +
                                    std::to_string(cols.size()));
    }
    std::size_t token_col = 1;
    if (!ParseIndex(cols[0])) {
      if (cols.size() < 5) {
        throw ParseError(line_no,
                         "CoNLL-2012 rows need at least 5 columns, found " +
                             std::to_string(cols.size()));
      }
      token_col = 3;
    }
    if (sentence_.empty()) {
      doc_.sentences.emplace_back();
      doc_.columns.emplace_back();
    }
    const std::size_t sentence = doc_.sentences.size() - 1;
    const std::size_t token = doc_.sentences.back().size();
    doc_.sentences.back().push_back(cols[token_col]);
    ReadCoref(cols.back(), sentence, token, line_no);
    cols.pop_back();
    doc_.columns.back().push_back(std::move(cols));
    sentence_.push_back(token);
  }

  void EndSentence(std::size_t line_no) {
    if (sentence_.empty()) return;
    if (!open_.empty()) {
      const auto& [id, open] = *open_.begin();
      throw ParseError(open.line, "mention of entity " + std::to_string(id) +
                                      " crosses the sentence boundary at line " +
                                      std::to_string(line_no));
    }
    sentence_.clear();
  }

  Document Finish(std::size_t line_no) {
    EndSentence(line_no);
    for (auto& [id, spans] : mentions_) {
      std::sort(spans.begin(), spans.end());
      doc_.entities.push_back({std::to_string(id), std::move(spans)});
    }
    const auto violations = ValidateDocument(doc_);
    if (!violations.empty()) {
      throw ParseError(begin_line_, "document " + doc_.doc_key + ": " +
                                        violations.front().message);
    }
    return std::move(doc_);
  }

 private:
  struct Open {
    std::size_t token;
    std::size_t line;
  };

  std::size_t ParseId(std::string_view text, std::size_t line_no) const {
    auto id = ParseIndex(text);
    if (!id) {
      throw ParseError(line_no, "malformed entity id '" + std::string(text) + "'");
    }
    return *id;
  }

  void ReadCoref(const std::string& column, std::size_t sentence,
                 std::size_t token, std::size_t line_no) {
    if (column == "-") return;
    std::size_t pos = 0;
    while (pos <= column.size()) {
      std::size_t bar = column.find('|', pos);
      if (bar == std::string::npos) bar = column.size();
      std::string_view atom(column.data() + pos, bar - pos);
      pos = bar + 1;
      if (atom.size() < 2) {
        throw ParseError(line_no, "malformed coreference atom '" +
                                      std::string(atom) + "'");
      }
      const bool opens = atom.front() == '(';
      const bool closes = atom.back() == ')';
      if (!opens && !closes) {
        throw ParseError(line_no, "malformed coreference atom '" +
                                      std::string(atom) + "'");
      }
      std::string_view digits = atom.substr(opens ? 1 : 0);
      if (closes) digits.remove_suffix(1);
      const std::size_t id = ParseId(digits, line_no);
      if (opens && closes) {
        mentions_[id].push_back({sentence, token, token + 1});
      } else if (opens) {
        if (open_.contains(id)) {
          throw ParseError(line_no, "entity " + std::to_string(id) +
                                        " opened again before its mention "
                                        "from line " +
                                        std::to_string(open_[id].line) +
                                        " closed");
        }
        open_[id] = {token, line_no};
      } else {
        auto it = open_.find(id);
        if (it == open_.end()) {
          throw ParseError(line_no, "close of entity " + std::to_string(id) +
                                        " without a matching open");
        }
        mentions_[id].push_back({sentence, it->second.token, token + 1});
        open_.erase(it);
      }
    }
  }

  Document doc_;
  std::size_t begin_line_;
  std::size_t column_count_ = 0;
  std::vector<std::size_t> sentence_;
  std::map<std::size_t, Open> open_;
  std::map<std::size_t, std::vector<Span>> mentions_;
};

}  // namespace

std::vector<Document> ParseConll(std::istream& in) {
  std::vector<Document> docs;
  std::optional<ConllDocumentReader> reader;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (line.starts_with(kBeginDocument)) {
      if (reader) {
        throw ParseError(line_no, "document begins before previous one ended");
      }
      reader.emplace(line.substr(kBeginDocument.size()), line_no);
    } else if (line.starts_with(kEndDocument)) {
      if (!reader) throw ParseError(line_no, "#end document without #begin");
      docs.push_back(reader->Finish(line_no));
      reader.reset();
    } else if (IsBlank(line)) {
      if (reader) reader->EndSentence(line_no);
    } else if (!reader) {
      throw ParseError(line_no, "content outside of a document");
    } else {
      reader->AddRow(line, line_no);
    }
  }
  if (reader) throw ParseError(line_no, "document not terminated");
  return docs;
}

std::vector<Document> ParseConll(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConll(in);
}

namespace {

bool IsNumericId(const std::string& id) {
  return ParseIndex(id).has_value();
}

std::string ConllCorefColumn(
    const std::vector<std::tuple<Span, std::string>>& starting,
    const std::vector<std::tuple<Span, std::string>>& single,
    const std::vector<std::tuple<Span, std::string>>& ending) {
  std::string out;
  auto append = [&out](const std::string& atom) {
    if (!out.empty()) out += '|';
    out += atom;
  };
  for (const auto& [span, id] : starting) append("(" + id);
  for (const auto& [span, id] : single) append("(" + id + ")");
  for (const auto& [span, id] : ending) append(id + ")");
  return out.empty() ? "-" : out;
}

}  // namespace

std::string WriteConll(std::span<const Document> docs,
                       std::vector<std::string>* warnings) {
  std::string out;
  for (const Document& doc : docs) {
    if (doc.expanded) {
      throw Error("document " + doc.doc_key +
                  " is expanded; overlapping entities are not representable "
                  "in CoNLL");
    }
    if (!doc.plural_links.empty() && warnings) {
      std::string dropped;
      for (const PluralLink& link : doc.plural_links) {
        if (!dropped.empty()) dropped += ", ";
        dropped += ToString(link.anaphor) + "->{";
        for (std::size_t i = 0; i < link.antecedents.size(); ++i) {
          if (i) dropped += ",";
          dropped += link.antecedents[i];
        }
        dropped += "}";
      }
      warnings->push_back("document " + doc.doc_key + ": dropped " +
                          std::to_string(doc.plural_links.size()) +
                          " plural link(s) not representable in CoNLL: " +
                          dropped);
    }
    const bool numeric = std::all_of(
        doc.entities.begin(), doc.entities.end(),
        [](const Entity& e) { return IsNumericId(e.id); });
    if (!numeric && warnings) {
      warnings->push_back("document " + doc.doc_key +
                          ": non-numeric entity ids renumbered by position");
    }
    const auto violations = ValidateDocument(doc);
    if (!violations.empty()) {
      throw Error("document " + doc.doc_key + ": " + violations.front().message);
    }

    // Per sentence, per token: mentions opening, single-token, closing.
    using Marks = std::vector<std::tuple<Span, std::string>>;
    std::vector<std::vector<Marks>> starting(doc.sentences.size());
    std::vector<std::vector<Marks>> single(doc.sentences.size());
    std::vector<std::vector<Marks>> ending(doc.sentences.size());
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      starting[s].resize(doc.sentences[s].size());
      single[s].resize(doc.sentences[s].size());
      ending[s].resize(doc.sentences[s].size());
    }
    for (std::size_t e = 0; e < doc.entities.size(); ++e) {
      const Entity& entity = doc.entities[e];
      const std::string id = numeric ? std::to_string(*ParseIndex(entity.id))
                                     : std::to_string(e);
      std::vector<Span> multi;
      for (const Span& span : entity.mentions) {
        if (span.length() == 1) {
          single[span.sentence][span.start].emplace_back(span, id);
          continue;
        }
        for (const Span& other : multi) {
          if (other.sentence == span.sentence && other.start < span.end &&
              span.start < other.end) {
            throw Error("document " + doc.doc_key + ": entity " + entity.id +
                        " has overlapping mentions " + ToString(other) +
                        " and " + ToString(span) +
                        ", not representable in CoNLL");
          }
        }
        multi.push_back(span);
        starting[span.sentence][span.start].emplace_back(span, id);
        ending[span.sentence][span.end - 1].emplace_back(span, id);
      }
    }

    out += kBeginDocument;
    out += doc.doc_key;
    out += '\n';
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      if (doc.sentences[s].empty()) {
        throw Error("document " + doc.doc_key + ": sentence " +
                    std::to_string(s) + " is empty, not representable in CoNLL");
      }
      for (std::size_t t = 0; t < doc.sentences[s].size(); ++t) {
        auto& opens = starting[s][t];
        std::sort(opens.begin(), opens.end(), [](const auto& a, const auto& b) {
          const Span& x = std::get<0>(a);
          const Span& y = std::get<0>(b);
          return std::tie(y.end, std::get<1>(a)) < std::tie(x.end, std::get<1>(b));
        });
        auto& closes = ending[s][t];
        std::sort(closes.begin(), closes.end(), [](const auto& a, const auto& b) {
          const Span& x = std::get<0>(a);
          const Span& y = std::get<0>(b);
          return std::tie(y.start, std::get<1>(a)) <
                 std::tie(x.start, std::get<1>(b));
        });
        auto& singles = single[s][t];
        std::sort(singles.begin(), singles.end(),
                  [](const auto& a, const auto& b) {
                    return std::get<1>(a) < std::get<1>(b);
                  });
        if (!doc.columns.empty()) {
          for (const std::string& col : doc.columns[s][t]) {
            out += col;
            out += '\t';
          }
        } else {
          out += std::to_string(t);
          out += '\t';
          out += doc.sentences[s][t];
          out += '\t';
        }
        out += ConllCorefColumn(opens, singles, closes);
        out += '\n';
      }
      out += '\n';
    }
    out += kEndDocument;
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void SchemaError(std::size_t line_no, const std::string& path,
                              const std::string& what) {
  throw ParseError(line_no, "field '" + path + "': " + what);
}

const Json& Require(const Json& obj, const char* field, std::size_t line_no,
                    const std::string& path) {
  auto it = obj.find(field);
  if (it == obj.end()) SchemaError(line_no, path + field, "missing");
  return *it;
}

std::size_t ReadIndex(const Json& value, std::size_t line_no,
                      const std::string& path) {
  if (!value.is_number_unsigned()) {
    SchemaError(line_no, path, "expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::string ReadString(const Json& value, std::size_t line_no,
                       const std::string& path) {
  if (!value.is_string()) SchemaError(line_no, path, "expected a string");
  return value.get<std::string>();
}

const Json& ReadArray(const Json& value, std::size_t line_no,
                      const std::string& path) {
  if (!value.is_array()) SchemaError(line_no, path, "expected an array");
  return value;
}

Span ReadSpan(const Json& value, std::size_t line_no, const std::string& path) {
  ReadArray(value, line_no, path);
  if (value.size() != 3) {
    SchemaError(line_no, path, "expected [sentence, start, end]");
  }
  return {ReadIndex(value[0], line_no, path + "[0]"),
          ReadIndex(value[1], line_no, path + "[1]"),
          ReadIndex(value[2], line_no, path + "[2]")};
}

std::vector<std::string> ReadStrings(const Json& value, std::size_t line_no,
                                     const std::string& path) {
  ReadArray(value, line_no, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(ReadString(value[i], line_no,
                             path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json SpanToJson(const Span& span) {
  return Json::array({span.sentence, span.start, span.end});
}

}  // namespace

Document ParseCanonicalRecord(std::string_view line, std::size_t line_no) {
  Json record;
  try {
    record = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) SchemaError(line_no, "", "expected an object");

  Document doc;
  doc.doc_key = ReadString(Require(record, "doc_key", line_no, ""), line_no,
                           "doc_key");
  if (auto it = record.find("language"); it != record.end()) {
    doc.language = ReadString(*it, line_no, "language");
  }
  const Json& sentences =
      ReadArray(Require(record, "sentences", line_no, ""), line_no, "sentences");
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    doc.sentences.push_back(ReadStrings(
        sentences[s], line_no, "sentences[" + std::to_string(s) + "]"));
  }
  const Json& entities =
      ReadArray(Require(record, "entities", line_no, ""), line_no, "entities");
  for (std::size_t e = 0; e < entities.size(); ++e) {
    const std::string path = "entities[" + std::to_string(e) + "]";
    if (!entities[e].is_object()) SchemaError(line_no, path, "expected an object");
    Entity entity;
    entity.id = ReadString(Require(entities[e], "id", line_no, path + "."),
                           line_no, path + ".id");
    const Json& mentions = ReadArray(
        Require(entities[e], "mentions", line_no, path + "."), line_no,
        path + ".mentions");
    for (std::size_t m = 0; m < mentions.size(); ++m) {
      entity.mentions.push_back(ReadSpan(
          mentions[m], line_no, path + ".mentions[" + std::to_string(m) + "]"));
    }
    doc.entities.push_back(std::move(entity));
  }
  if (auto it = record.find("plural_links"); it != record.end()) {
    const Json& links = ReadArray(*it, line_no, "plural_links");
    for (std::size_t l = 0; l < links.size(); ++l) {
      const std::string path = "plural_links[" + std::to_string(l) + "]";
      if (!links[l].is_object()) SchemaError(line_no, path, "expected an object");
      PluralLink link;
      link.anaphor = ReadSpan(Require(links[l], "anaphor", line_no, path + "."),
                              line_no, path + ".anaphor");
      link.antecedents =
          ReadStrings(Require(links[l], "antecedents", line_no, path + "."),
                      line_no, path + ".antecedents");
      doc.plural_links.push_back(std::move(link));
    }
  }
  if (auto it = record.find("expanded"); it != record.end()) {
    if (!it->is_boolean()) SchemaError(line_no, "expanded", "expected a boolean");
    doc.expanded = it->get<bool>();
  }
  if (auto it = record.find("columns"); it != record.end()) {
    const Json& sentences_cols = ReadArray(*it, line_no, "columns");
    for (std::size_t s = 0; s < sentences_cols.size(); ++s) {
      const std::string path = "columns[" + std::to_string(s) + "]";
      const Json& rows = ReadArray(sentences_cols[s], line_no, path);
      std::vector<std::vector<std::string>> sentence_cols;
      for (std::size_t t = 0; t < rows.size(); ++t) {
        sentence_cols.push_back(
            ReadStrings(rows[t], line_no, path + "[" + std::to_string(t) + "]"));
      }
      doc.columns.push_back(std::move(sentence_cols));
    }
  }
  return doc;
}

std::vector<Document> ParseCanonical(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (IsBlank(line)) continue;
    docs.push_back(ParseCanonicalRecord(line, line_no));
  }
  return docs;
}

std::vector<Document> ParseCanonical(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseCanonical(in);
}

std::string WriteCanonicalRecord(const Document& doc) {
  Json record = Json::object();
  record["doc_key"] = doc.doc_key;
  record["language"] = doc.language;
  record["sentences"] = doc.sentences;
  Json entities = Json::array();
  for (const Entity& entity : doc.entities) {
    Json mentions = Json::array();
    for (const Span& span : entity.mentions) mentions.push_back(SpanToJson(span));
    Json item = Json::object();
    item["id"] = entity.id;
    item["mentions"] = std::move(mentions);
    entities.push_back(std::move(item));
  }
  record["entities"] = std::move(entities);
  Json links = Json::array();
  for (const PluralLink& link : doc.plural_links) {
    Json item = Json::object();
    item["anaphor"] = SpanToJson(link.anaphor);
    item["antecedents"] = link.antecedents;
    links.push_back(std::move(item));
  }
  record["plural_links"] = std::move(links);
  record["expanded"] = doc.expanded;
  if (!doc.columns.empty()) record["columns"] = doc.columns;
  try {
    return record.dump();
  } catch (const Json::type_error& e) {
    throw Error("document " + doc.doc_key + ": " + e.what());
  }
}

std::string WriteCanonical(std::span<const Document> docs) {
  std::string out;
  for (const Document& doc : docs) {
    out += WriteCanonicalRecord(doc);
    out += '\n';
  }
  return out;
}

AlignmentMap ParseAlignmentLine(std::string_view line, std::size_t line_no) {
  AlignmentMap map;
  for (const std::string& token : SplitWhitespace(line)) {
    const auto dash = token.find('-');
    std::optional<std::size_t> source, target;
    if (dash != std::string::npos) {
      source = ParseIndex(std::string_view(token).substr(0, dash));
      target = ParseIndex(std::string_view(token).substr(dash + 1));
    }
    if (!source || !target) {
      throw ParseError(line_no, "malformed alignment pair '" + token +
                                    "', expected i-j with non-negative "
                                    "integers");
    }
    map.pairs.emplace(*source, *target);
  }
  return map;
}

std::vector<AlignmentMap> ParseAlignments(std::istream& in) {
  std::vector<AlignmentMap> maps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    maps.push_back(ParseAlignmentLine(line, line_no));
  }
  return maps;
}

std::vector<AlignmentMap> ParseAlignments(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseAlignments(in);
}

std::string WriteAlignments(std::span<const AlignmentMap> maps) {
  std::string out;
  for (const AlignmentMap& map : maps) {
    bool first = true;
    for (const auto& [source, target] : map.pairs) {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(source) + "-" + std::to_string(target);
    }
    out += '\n';
  }
  return out;
}

std::vector<Sentence> ParseTokenLines(std::istream& in) {
  std::vector<Sentence> sentences;
  std::string line;
  while (std::getline(in, line)) {
    StripCr(line);
    sentences.push_back(SplitWhitespace(line));
  }
  return sentences;
}

std::vector<Sentence> ParseTokenLines(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseTokenLines(in);
}

}  // namespace corefkit
