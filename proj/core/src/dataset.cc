// Copyright 2026 The privshield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privshield/dataset.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "privshield/status.h"
#include "privshield/toy_scorer.h"

namespace privshield {
namespace {

using json = nlohmann::ordered_json;

constexpr absl::string_view kManifestFormat = "privshield.dataset";
constexpr int kManifestVersion = 1;

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::filesystem::path& path, absl::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return DataError(absl::StrCat("cannot write ", path.string()));
  out << text;
  return out ? absl::OkStatus()
             : DataError(absl::StrCat("write failed for ", path.string()));
}

json QuestionToJson(const Question& q) {
  json j;
  j["text"] = q.text;
  if (q.is_privacy()) {
    j["attribute"] = AttributeCode(*q.attribute);
    j["strength"] = StrengthName(*q.strength);
    if (q.level) j["level"] = LevelName(*q.level);
  } else {
    j["answers"] = q.reference_answers;
  }
  return j;
}

template <typename T>
T Require(const absl::StatusOr<T>& v) {
  if (!v.ok()) throw std::invalid_argument(std::string(v.status().message()));
  return *v;
}

Question QuestionFromJson(const json& j, QuestionKind kind) {
  Question q;
  q.kind = kind;
  q.text = j.at("text").get<std::string>();
  if (kind == QuestionKind::kPrivacy) {
    q.attribute = Require(ParseAttribute(j.at("attribute").get<std::string>()));
    q.strength = Require(ParseStrength(j.at("strength").get<std::string>()));
    if (j.contains("level")) {
      q.level = Require(ParseLevel(j.at("level").get<std::string>()));
    }
  } else if (j.contains("answers")) {
    q.reference_answers = j.at("answers").get<std::vector<std::string>>();
  }
  return q;
}

// Fisher-Yates with a boost engine so splits agree across standard libraries.
std::vector<std::size_t> SeededPermutation(std::size_t n,
                                           boost::random::mt19937_64& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  return order;
}

}  // namespace

std::vector<std::string> ValidateEntry(const ImageEntry& entry) {
  std::vector<std::string> problems;
  auto report = [&](std::string what) {
    problems.push_back(absl::StrCat("entry '", entry.id, "': ", what));
  };
  if (entry.id.empty()) report("empty id");
  if (entry.image_ref.empty()) report("empty image reference");
  std::set<Attribute> annotated;
  for (const PrivacyTuple& t : entry.tuples) {
    annotated.insert(t.attribute);
    if (t.reasoning_clue.empty()) {
      report(absl::StrCat(AttributeCode(t.attribute), " tuple has an empty clue"));
    }
    if (entry.has_person &&
        (t.attribute == Attribute::kAGE || t.attribute == Attribute::kSEX)) {
      report(absl::StrCat(AttributeCode(t.attribute),
                          " tuple on an image with a person"));
    }
  }
  for (const Question& q : entry.privacy_questions) {
    if (absl::Status s = q.Validate(); !s.ok()) report(std::string(s.message()));
    if (!q.is_privacy()) report(absl::StrCat("'", q.text, "' listed as privacy"));
    if (q.attribute && !annotated.contains(*q.attribute)) {
      report(absl::StrCat("question '", q.text, "' asks about ",
                          AttributeCode(*q.attribute),
                          " which has no tuple"));
    }
  }
  for (const Question& q : entry.nonprivacy_questions) {
    if (absl::Status s = q.Validate(); !s.ok()) report(std::string(s.message()));
    if (q.is_privacy()) report(absl::StrCat("'", q.text, "' listed as non-privacy"));
  }
  return problems;
}

std::string ManifestJson(const std::vector<ImageEntry>& entries) {
  json doc;
  doc["format"] = kManifestFormat;
  doc["version"] = kManifestVersion;
  doc["entries"] = json::array();
  for (const ImageEntry& e : entries) {
    json j;
    j["id"] = e.id;
    j["image"] = e.image_ref;
    j["has_person"] = e.has_person;
    j["tuples"] = json::array();
    for (const PrivacyTuple& t : e.tuples) {
      j["tuples"].push_back({{"attribute", AttributeCode(t.attribute)},
                             {"strength", StrengthName(t.strength)},
                             {"reasoning_clue", t.reasoning_clue}});
    }
    j["privacy_questions"] = json::array();
    for (const Question& q : e.privacy_questions) {
      j["privacy_questions"].push_back(QuestionToJson(q));
    }
    j["nonprivacy_questions"] = json::array();
    for (const Question& q : e.nonprivacy_questions) {
      j["nonprivacy_questions"].push_back(QuestionToJson(q));
    }
    doc["entries"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

absl::StatusOr<std::vector<ImageEntry>> ParseManifest(absl::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return DataError("manifest is not valid JSON");
  std::vector<ImageEntry> entries;
  try {
    if (doc.at("format").get<std::string>() != kManifestFormat) {
      return DataError("manifest has an unexpected format tag");
    }
    if (doc.at("version").get<int>() != kManifestVersion) {
      return DataError("unsupported manifest version");
    }
    for (const json& j : doc.at("entries")) {
      ImageEntry e;
      e.id = j.at("id").get<std::string>();
      e.image_ref = j.at("image").get<std::string>();
      e.has_person = j.at("has_person").get<bool>();
      for (const json& t : j.at("tuples")) {
        e.tuples.push_back(
            {Require(ParseAttribute(t.at("attribute").get<std::string>())),
             Require(ParseStrength(t.at("strength").get<std::string>())),
             t.at("reasoning_clue").get<std::string>()});
      }
      for (const json& q : j.at("privacy_questions")) {
        e.privacy_questions.push_back(QuestionFromJson(q, QuestionKind::kPrivacy));
      }
      for (const json& q : j.at("nonprivacy_questions")) {
        e.nonprivacy_questions.push_back(
            QuestionFromJson(q, QuestionKind::kNonPrivacy));
      }
      entries.push_back(std::move(e));
    }
  } catch (const std::exception& e) {
    return DataError(absl::StrCat("malformed manifest: ", e.what()));
  }

  std::vector<std::string> problems;
  std::set<std::string> ids;
  for (const ImageEntry& e : entries) {
    if (!ids.insert(e.id).second) {
      problems.push_back(absl::StrCat("entry '", e.id, "': duplicate id"));
    }
    for (std::string& p : ValidateEntry(e)) problems.push_back(std::move(p));
  }
  if (!problems.empty()) {
    return DataError(absl::StrCat("manifest violates the dataset schema:\n  ",
                                  absl::StrJoin(problems, "\n  ")));
  }
  return entries;
}

absl::StatusOr<std::vector<ImageEntry>> LoadDataset(
    const std::filesystem::path& dir) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(dir / kManifestFile));
  ASSIGN_OR_RETURN(std::vector<ImageEntry> entries, ParseManifest(text));
  std::vector<std::string> missing;
  for (const ImageEntry& e : entries) {
    if (!std::filesystem::is_regular_file(dir / e.image_ref)) {
      missing.push_back(absl::StrCat("entry '", e.id, "': missing image file ",
                                     e.image_ref));
    }
  }
  if (!missing.empty()) {
    return absl::NotFoundError(absl::StrJoin(missing, "\n"));
  }
  return entries;
}

absl::Status SaveManifest(const std::filesystem::path& dir,
                          const std::vector<ImageEntry>& entries) {
  return WriteFile(dir / kManifestFile, ManifestJson(entries));
}

absl::StatusOr<VariantTable> LoadVariantTable(const std::filesystem::path& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return DataError("paraphrase table is not valid JSON");
  try {
    return doc.get<VariantTable>();
  } catch (const json::exception& e) {
    return DataError(absl::StrCat("malformed paraphrase table: ", e.what()));
  }
}

std::string VariantTableJson(const VariantTable& table) {
  json doc = json::object();
  for (const auto& [text, alternates] : table) doc[text] = alternates;
  return doc.dump(2) + "\n";
}

std::optional<Question> ParaphraseSlot(const Question& question,
                                       const VariantTable& table) {
  auto it = table.find(question.text);
  if (it == table.end() || it->second.empty()) return std::nullopt;
  Question out = question;
  out.text = it->second.front();
  return out;
}

absl::StatusOr<QuestionSplit> SplitQuestions(const ImageEntry& entry,
                                             std::uint64_t seed,
                                             const VariantTable* variants) {
  if (entry.privacy_questions.empty()) {
    return ArgumentError(absl::StrCat("entry '", entry.id,
                                      "' has no privacy questions"));
  }
  boost::random::mt19937_64 rng(seed ^ Fnv1a64(entry.id));
  QuestionSplit split;

  const std::size_t np = entry.privacy_questions.size();
  const std::size_t keep_p = std::min<std::size_t>(kMaxSelectedPrivacy, np);
  const auto privacy_order = SeededPermutation(np, rng);
  for (std::size_t i = 0; i < np; ++i) {
    const Question& q = entry.privacy_questions[privacy_order[i]];
    (i < keep_p ? split.selected_privacy : split.heldout_privacy).push_back(q);
  }

  const std::size_t nu = entry.nonprivacy_questions.size();
  const std::size_t keep_u = (2 * nu) / 3;
  const auto utility_order = SeededPermutation(nu, rng);
  for (std::size_t i = 0; i < nu; ++i) {
    const Question& q = entry.nonprivacy_questions[utility_order[i]];
    (i < keep_u ? split.selected_utility : split.heldout_utility).push_back(q);
  }

  if (variants != nullptr) {
    std::vector<Question> paraphrased;
    for (const auto* list : {&split.selected_privacy, &split.selected_utility}) {
      for (const Question& q : *list) {
        if (auto p = ParaphraseSlot(q, *variants)) paraphrased.push_back(*std::move(p));
      }
    }
    split.paraphrased = std::move(paraphrased);
  }
  return split;
}

absl::StatusOr<std::vector<Question>> GeneratePrivacyQuestions(
    const PrivacyTuple& tuple, const TemplateTable& templates) {
  if (tuple.strength == Strength::kVeryWeak) {
    return ArgumentError(absl::StrCat(AttributeCode(tuple.attribute),
                                      " tuple is VeryWeak and not inferable"));
  }
  if (tuple.reasoning_clue.empty()) {
    return ArgumentError("tuple has an empty reasoning clue");
  }
  ASSIGN_OR_RETURN(std::string basic, templates.Basic(tuple.attribute));
  ASSIGN_OR_RETURN(std::string scene,
                   templates.Scene(tuple.attribute, tuple.reasoning_clue));
  for (const std::string* text : {&basic, &scene}) {
    if (std::string term = templates.FindBlockedTerm(*text); !term.empty()) {
      return ConfigurationError(absl::StrCat("generated question '", *text,
                                             "' discloses the term '", term, "'"));
    }
  }
  return std::vector<Question>{
      Question::Privacy(std::move(basic), tuple.attribute, tuple.strength,
                        QuestionLevel::kBasic),
      Question::Privacy(std::move(scene), tuple.attribute, tuple.strength,
                        QuestionLevel::kScene)};
}

absl::StatusOr<std::vector<PrivacyTuple>> UnavailableAnnotator::Annotate(
    const ImageEntry& entry) const {
  return absl::UnimplementedError(absl::StrCat(
      "no tuple annotator configured for '", entry.id,
      "'; supply tuples in the manifest"));
}

absl::Status RegeneratePrivacyQuestions(ImageEntry& entry,
                                        const TemplateTable& templates) {
  std::vector<Question> questions;
  for (const PrivacyTuple& t : entry.tuples) {
    if (t.strength == Strength::kVeryWeak) continue;
    ASSIGN_OR_RETURN(std::vector<Question> generated,
                     GeneratePrivacyQuestions(t, templates));
    for (Question& q : generated) questions.push_back(std::move(q));
  }
  entry.privacy_questions = std::move(questions);
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ImageEntry>> BuildEntries(
    std::vector<ImageEntry> candidates, const CandidateFilter& filter,
    const TupleAnnotator& annotator, const TemplateTable& templates) {
  std::vector<ImageEntry> out;
  for (ImageEntry& e : candidates) {
    if (!filter.Accept(e)) continue;
    if (e.tuples.empty()) {
      ASSIGN_OR_RETURN(e.tuples, annotator.Annotate(e));
    }
    RETURN_IF_ERROR(RegeneratePrivacyQuestions(e, templates));
    if (auto problems = ValidateEntry(e); !problems.empty()) {
      return DataError(absl::StrJoin(problems, "\n"));
    }
    out.push_back(std::move(e));
  }
  return out;
}

int DatasetStatistics::LevelTotal(bool with_person, int level) const {
  int sum = 0;
  for (int v : counts[with_person][static_cast<std::size_t>(level)]) sum += v;
  return sum;
}

int DatasetStatistics::AttributeTotal(bool with_person, Attribute attribute) const {
  int sum = 0;
  for (const auto& row : counts[with_person]) {
    sum += row[static_cast<std::size_t>(Index(attribute))];
  }
  return sum;
}

int DatasetStatistics::Total(bool with_person) const {
  int sum = 0;
  for (int l = 0; l < static_cast<int>(kLevels.size()); ++l) {
    sum += LevelTotal(with_person, l);
  }
  return sum;
}

DatasetStatistics ComputeStatistics(const std::vector<ImageEntry>& entries) {
  DatasetStatistics stats;
  for (const ImageEntry& e : entries) {
    for (const PrivacyTuple& t : e.tuples) {
      if (t.strength == Strength::kVeryWeak) continue;
      const auto level = static_cast<std::size_t>(Index(t.strength) - 1);
      ++stats.counts[e.has_person][level]
                    [static_cast<std::size_t>(Index(t.attribute))];
    }
  }
  return stats;
}

std::string StatisticsCsv(const DatasetStatistics& stats) {
  std::string out = "Category,Inference Strength";
  for (Attribute a : kAllAttributes) absl::StrAppend(&out, ",", AttributeCode(a));
  absl::StrAppend(&out, ",Sum\n");
  for (bool with_person : {false, true}) {
    const char* category = with_person ? "With Person" : "Without Person";
    for (std::size_t l = 0; l < DatasetStatistics::kLevels.size(); ++l) {
      absl::StrAppend(&out, category, ",", StrengthName(DatasetStatistics::kLevels[l]));
      for (int v : stats.counts[with_person][l]) absl::StrAppend(&out, ",", v);
      absl::StrAppend(&out, ",", stats.LevelTotal(with_person, static_cast<int>(l)), "\n");
    }
    absl::StrAppend(&out, category, ",Overall");
    for (Attribute a : kAllAttributes) {
      absl::StrAppend(&out, ",", stats.AttributeTotal(with_person, a));
    }
    absl::StrAppend(&out, ",", stats.Total(with_person), "\n");
  }
  return out;
}

}  // namespace privshield
