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

#include "cli.h"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "corefkit/core_model.h"
#include "corefkit/corpus_io.h"
#include "corefkit/decoder.h"
#include "corefkit/error.h"
#include "corefkit/metrics.h"
#include "corefkit/stats.h"
#include "corefkit/xling_transfer.h"
#include "json.hpp"

namespace corefkit::cli {
namespace {

// Raised for flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& content,
               std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(path + ": cannot open for writing");
  file << content;
  if (!file) throw Error(path + ": write failed");
}

// Prefixes parse errors with the file they came from.
template <typename Fn>
auto WithFile(const std::string& path, Fn&& fn) {
  try {
    return fn(ReadFile(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<Document> LoadDocuments(const std::string& path,
                                    const std::string& format) {
  return WithFile(path, [&](const std::string& text) {
    return format == "conll" ? ParseConll(text) : ParseCanonical(text);
  });
}

void RequireValid(const std::vector<Document>& docs, const std::string& path) {
  for (const Document& doc : docs) {
    const auto violations = ValidateDocument(doc);
    if (!violations.empty()) {
      throw Error(path + ": document " + doc.doc_key + ": " +
                  violations.front().message);
    }
  }
}

const std::map<std::string, std::string> kDocFormats = {
    {"canonical", "canonical"}, {"conll", "conll"}};
const std::map<std::string, std::string> kReportFormats = {
    {"tsv", "tsv"}, {"records", "records"}};

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string input_format = "canonical";
  std::string from = "conll";
  std::string to = "canonical";
  std::string report_format = "tsv";
  std::string key;
  std::string response;
  std::string singletons = "include";
  std::string split = "plain";
  std::string style = "fraction";
  std::string source;
  std::string alignments;
  std::string target_sents;
  std::string target_language;
  bool no_sanity = false;
  double repeat_fraction = SanityConfig{}.repeat_fraction;
  std::size_t min_run = SanityConfig{}.min_run;
  std::vector<std::string> stats_inputs;
  std::string group = "language";
  int jobs = 1;
};

void AddJobs(CLI::App* cmd, Options& opt) {
  cmd->add_option("-j,--jobs", opt.jobs, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
}

void AddSanityFlags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--repeat-fraction", opt.repeat_fraction,
                  "Share of non-space characters a punctuation run must cover")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--min-run", opt.min_run,
                  "Minimum length of the punctuation run")
      ->capture_default_str();
}

void AddFormat(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.report_format, "Report format")
      ->transform(CLI::IsMember(kReportFormats))
      ->capture_default_str();
}

int RunValidate(const Options& opt, std::ostream& out) {
  const auto docs = LoadDocuments(opt.input, opt.input_format);
  std::size_t total = 0;
  for (const Document& doc : docs) {
    for (const Violation& v : ValidateDocument(doc)) {
      out << doc.doc_key << '\t' << ViolationKindName(v.kind) << '\t'
          << v.message << '\n';
      ++total;
    }
  }
  return total == 0 ? kExitOk : kExitDataError;
}

int RunConvert(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto docs = LoadDocuments(opt.input, opt.from);
  std::string text;
  if (opt.to == "conll") {
    std::vector<std::string> warnings;
    text = WriteConll(docs, &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
  } else {
    text = WriteCanonical(docs);
  }
  WriteFile(opt.output, text, out);
  return kExitOk;
}

int RunProject(const Options& opt, std::ostream& out) {
  const auto docs = LoadDocuments(opt.source, opt.input_format);
  RequireValid(docs, opt.source);
  const auto alignments = WithFile(opt.alignments, [](const std::string& text) {
    return ParseAlignments(text);
  });
  const auto targets = WithFile(opt.target_sents, [](const std::string& text) {
    return ParseTokenLines(text);
  });
  std::size_t needed = 0;
  for (const Document& doc : docs) needed += doc.sentences.size();
  if (alignments.size() != needed || targets.size() != needed) {
    throw Error("source has " + std::to_string(needed) + " sentences, " +
                opt.alignments + " has " + std::to_string(alignments.size()) +
                " lines, " + opt.target_sents + " has " +
                std::to_string(targets.size()) + " lines");
  }
  std::vector<std::size_t> offsets(docs.size(), 0);
  for (std::size_t d = 1; d < docs.size(); ++d) {
    offsets[d] = offsets[d - 1] + docs[d - 1].sentences.size();
  }

  ProjectionOptions options;
  options.target_language = opt.target_language;
  if (!opt.no_sanity) options.sanity = SanityConfig{opt.repeat_fraction, opt.min_run};

  std::vector<ProjectionResult> results(docs.size());
  std::vector<std::exception_ptr> errors(docs.size());
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel for num_threads(opt.jobs) schedule(dynamic, 8)
  for (std::ptrdiff_t d = 0; d < n; ++d) {
    try {
      const std::size_t len = docs[d].sentences.size();
      results[d] = ProjectDocument(
          docs[d], std::span(alignments).subspan(offsets[d], len),
          std::span(targets).subspan(offsets[d], len), options);
    } catch (...) {
      errors[d] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  std::string text;
  std::vector<std::pair<std::string, ProjectionSummary>> summaries;
  const std::string group =
      opt.target_language.empty() ? "all" : opt.target_language;
  for (const ProjectionResult& result : results) {
    text += WriteCanonicalRecord(result.target) + "\n";
    summaries.emplace_back(group, result.summary);
  }
  WriteFile(opt.output, text, out);

  const RateTable table = AggregateProjectionStats(summaries);
  if (opt.report_format == "tsv") {
    out << RenderRateTable(table);
  } else {
    ProjectionSummary total;
    for (const auto& [g, s] : summaries) total += s;
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    record["group"] = group;
    record["mentions"] = total.total();
    record["aligned"] = total.aligned;
    record["misaligned"] = total.misaligned;
    record["non_aligned"] = total.non_aligned;
    record["in_failed_sentences"] = total.in_failed_sentences;
    record["failed_sentences"] = total.failed_sentences;
    if (table.total) {
      record["aligned_pct"] = RenderRounded(table.total->aligned, 1);
      record["misaligned_pct"] = RenderRounded(table.total->misaligned, 1);
      record["non_aligned_pct"] = RenderRounded(table.total->non_aligned, 1);
    }
    out << record.dump() << '\n';
  }
  return kExitOk;
}

int RunSanity(const Options& opt, std::ostream& out) {
  const std::string text = ReadFile(opt.input);
  const SanityConfig config{opt.repeat_fraction, opt.min_run};
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0, passed = 0, failed = 0;
  if (opt.report_format == "tsv") out << "line\tverdict\treason\n";
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const SanityVerdict verdict = CheckTranslationSanity(line, config);
    verdict.passed ? ++passed : ++failed;
    if (opt.report_format == "tsv") {
      out << line_no << '\t' << (verdict.passed ? "pass" : "fail") << '\t'
          << verdict.reason.value_or("") << '\n';
    } else {
      nlohmann::ordered_json record = nlohmann::ordered_json::object();
      record["line"] = line_no;
      record["passed"] = verdict.passed;
      record["reason"] = verdict.reason ? nlohmann::ordered_json(*verdict.reason)
                                        : nlohmann::ordered_json(nullptr);
      out << record.dump() << '\n';
    }
  }
  if (opt.report_format == "tsv") {
    out << "# passed " << passed << " failed " << failed << '\n';
  }
  return kExitOk;
}

int RunScore(const Options& opt, std::ostream& out) {
  if (opt.split == "expanded" && opt.input_format == "conll") {
    throw UsageError(
        "--split expanded needs --input-format canonical: CoNLL cannot carry "
        "plural links");
  }
  const auto key = LoadDocuments(opt.key, opt.input_format);
  const auto response = LoadDocuments(opt.response, opt.input_format);
  RequireValid(key, opt.key);
  RequireValid(response, opt.response);
  ScoreMode mode;
  mode.singletons = opt.singletons == "exclude" ? SingletonMode::kExclude
                                                : SingletonMode::kInclude;
  mode.split = opt.split == "expanded" ? SplitMode::kExpanded : SplitMode::kPlain;
  const ScoreReport report = ScoreCorpus(key, response, mode, opt.jobs);
  if (opt.report_format == "tsv") {
    out << RenderReportTsv(report, opt.style == "percent" ? ScoreStyle::kPercent
                                                          : ScoreStyle::kFraction);
  } else {
    out << RenderReportRecord(report);
  }
  return kExitOk;
}

int RunDecode(const Options& opt, std::ostream& out) {
  std::vector<std::string> lines;
  std::vector<std::size_t> line_numbers;
  {
    std::istringstream in(ReadFile(opt.input));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.push_back(std::move(line));
      line_numbers.push_back(line_no);
    }
  }
  std::vector<std::string> records(lines.size());
  std::vector<std::exception_ptr> errors(lines.size());
  const auto n = static_cast<std::ptrdiff_t>(lines.size());
#pragma omp parallel for num_threads(opt.jobs) schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const Document doc =
          DecodeRecord(ParseScoreRecord(lines[i], line_numbers[i]));
      const auto violations = ValidateDocument(doc);
      if (!violations.empty()) {
        throw ParseError(line_numbers[i], violations.front().message);
      }
      records[i] = WriteCanonicalRecord(doc) + "\n";
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (!error) continue;
    try {
      std::rethrow_exception(error);
    } catch (const ParseError& e) {
      throw Error(opt.input + ": " + e.what());
    }
  }
  std::string text;
  for (const std::string& record : records) text += record;
  WriteFile(opt.output, text, out);
  return kExitOk;
}

int RunStats(const Options& opt, std::ostream& out) {
  std::vector<PartitionedStats> partitions;
  const GroupKey group_key = opt.group == "language"
                                 ? GroupKey([](const Document& d) {
                                     return d.language.empty() ? "-" : d.language;
                                   })
                                 : GroupKey([](const Document&) {
                                     return std::string("corpus");
                                   });
  for (const std::string& spec : opt.stats_inputs) {
    std::string name = "all";
    std::string path = spec;
    if (const auto eq = spec.find('='); eq != std::string::npos) {
      name = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    }
    const auto docs = LoadDocuments(path, opt.input_format);
    RequireValid(docs, path);
    partitions.push_back({name, ComputeCorpusStats(docs, group_key, opt.jobs)});
  }
  out << (opt.report_format == "tsv" ? RenderStatsTsv(partitions)
                                     : RenderStatsRecords(partitions));
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{"Coreference toolkit: scoring, projection, decoding and "
               "corpus statistics",
               "corefkit"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Report document invariant violations");
  validate->add_option("--input", opt.input, "Document file ('-' for stdin)")
      ->capture_default_str();
  validate->add_option("--input-format", opt.input_format, "Document format")
      ->transform(CLI::IsMember(kDocFormats))
      ->capture_default_str();

  auto* convert = app.add_subcommand("convert", "Convert between CoNLL and canonical records");
  convert->add_option("--from", opt.from, "Input format")
      ->transform(CLI::IsMember(kDocFormats))
      ->capture_default_str();
  convert->add_option("--to", opt.to, "Output format")
      ->transform(CLI::IsMember(kDocFormats))
      ->capture_default_str();
  convert->add_option("--input", opt.input, "Input file ('-' for stdin)")
      ->capture_default_str();
  convert->add_option("--output", opt.output, "Output file ('-' for stdout)")
      ->capture_default_str();

  auto* project = app.add_subcommand("project", "Project mentions onto translations through word alignments");
  project->add_option("--source", opt.source, "Source documents")->required();
  project->add_option("--input-format", opt.input_format, "Source document format")
      ->transform(CLI::IsMember(kDocFormats))
      ->capture_default_str();
  project->add_option("--alignments", opt.alignments,
                      "Alignment file, one line of i-j pairs per sentence")
      ->required();
  project->add_option("--target-sents", opt.target_sents,
                      "Translated sentences, one per line, space-separated tokens")
      ->required();
  project->add_option("--target-language", opt.target_language,
                      "Language code stored on the projected documents");
  project->add_option("--output", opt.output,
                      "Projected canonical documents ('-' for stdout)")
      ->required();
  project->add_flag("--no-sanity", opt.no_sanity,
                    "Keep mentions in sentences that fail the sanity check");
  AddSanityFlags(project, opt);
  AddFormat(project, opt);
  AddJobs(project, opt);

  auto* sanity = app.add_subcommand("sanity", "Check translations for repeated punctuation");
  sanity->add_option("--input", opt.input, "Sentences, one per line ('-' for stdin)")
      ->capture_default_str();
  AddSanityFlags(sanity, opt);
  AddFormat(sanity, opt);

  auto* score = app.add_subcommand("score", "Score a response against a key");
  score->add_option("--key", opt.key, "Key documents")->required();
  score->add_option("--response", opt.response, "Response documents")->required();
  score->add_option("--input-format", opt.input_format, "Document format")
      ->transform(CLI::IsMember(kDocFormats))
      ->capture_default_str();
  score->add_option("--singletons", opt.singletons, "Keep or drop singleton entities")
      ->transform(CLI::IsMember({"include", "exclude"}))
      ->capture_default_str();
  score->add_option("--split", opt.split, "Split-antecedent handling")
      ->transform(CLI::IsMember({"plain", "expanded"}))
      ->capture_default_str();
  score->add_option("--style", opt.style,
                    "fraction: two truncated decimals; percent: rounded integers")
      ->transform(CLI::IsMember({"fraction", "percent"}))
      ->capture_default_str();
  AddFormat(score, opt);
  AddJobs(score, opt);

  auto* decode = app.add_subcommand("decode", "Decode mention-ranking scores into entities");
  decode->add_option("--input", opt.input, "Score records ('-' for stdin)")
      ->capture_default_str();
  decode->add_option("--output", opt.output, "Canonical documents ('-' for stdout)")
      ->capture_default_str();
  AddJobs(decode, opt);

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--input", opt.stats_inputs,
                    "Document file, optionally NAME=FILE for a partition; repeatable")
      ->required();
  stats->add_option("--input-format", opt.input_format, "Document format")
      ->transform(CLI::IsMember(kDocFormats))
      ->capture_default_str();
  stats->add_option("--group", opt.group, "Row grouping")
      ->transform(CLI::IsMember({"language", "all"}))
      ->capture_default_str();
  AddFormat(stats, opt);
  AddJobs(stats, opt);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return RunValidate(opt, out);
    if (*convert) return RunConvert(opt, out, err);
    if (*project) return RunProject(opt, out);
    if (*sanity) return RunSanity(opt, out);
    if (*score) return RunScore(opt, out);
    if (*decode) return RunDecode(opt, out);
    if (*stats) return RunStats(opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace corefkit::cli
