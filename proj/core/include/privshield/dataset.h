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

#ifndef PRIVSHIELD_DATASET_H_
#define PRIVSHIELD_DATASET_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privshield/question.h"
#include "privshield/templates.h"

namespace privshield {

// [attribute, inference strength, reasoning clue] annotation for one image.
struct PrivacyTuple {
  Attribute attribute = Attribute::kSCH;
  Strength strength = Strength::kWeak;
  std::string reasoning_clue;

  bool operator==(const PrivacyTuple&) const = default;
};

struct ImageEntry {
  std::string id;
  std::string image_ref;  // relative to the dataset directory
  bool has_person = false;
  std::vector<PrivacyTuple> tuples;
  std::vector<Question> privacy_questions;
  std::vector<Question> nonprivacy_questions;

  bool operator==(const ImageEntry&) const = default;
};

// Every schema violation of `entry`, each prefixed with the entry id.
std::vector<std::string> ValidateEntry(const ImageEntry& entry);

inline constexpr char kManifestFile[] = "manifest.json";
inline constexpr char kParaphraseFile[] = "paraphrases.json";

// Reads <dir>/manifest.json. Image files must exist; all violations are
// reported together.
absl::StatusOr<std::vector<ImageEntry>> LoadDataset(
    const std::filesystem::path& dir);

// Canonical manifest text: fixed key order, two-space indent, trailing
// newline.
std::string ManifestJson(const std::vector<ImageEntry>& entries);
absl::StatusOr<std::vector<ImageEntry>> ParseManifest(absl::string_view json);
absl::Status SaveManifest(const std::filesystem::path& dir,
                          const std::vector<ImageEntry>& entries);

// ---------------------------------------------------------------------------
// Question splits

// Question text -> alternate phrasings.
using VariantTable = std::map<std::string, std::vector<std::string>>;

absl::StatusOr<VariantTable> LoadVariantTable(const std::filesystem::path& path);
std::string VariantTableJson(const VariantTable& table);

// Same metadata, text replaced by the first alternate. Absent when the table
// has no alternate for the question.
std::optional<Question> ParaphraseSlot(const Question& question,
                                       const VariantTable& table);

struct QuestionSplit {
  std::vector<Question> selected_privacy;
  std::vector<Question> heldout_privacy;
  std::vector<Question> selected_utility;
  std::vector<Question> heldout_utility;
  // Paraphrases of the selected questions of both kinds, when a variant table
  // was supplied.
  std::optional<std::vector<Question>> paraphrased;
};

inline constexpr int kMaxSelectedPrivacy = 5;

// Seeded shuffle of each question list, then prefix selection of
// min(5, |privacy|) privacy and floor(2/3 |utility|) utility questions.
// The shuffle depends on (seed, entry.id) only.
absl::StatusOr<QuestionSplit> SplitQuestions(
    const ImageEntry& entry, std::uint64_t seed,
    const VariantTable* variants = nullptr);

// ---------------------------------------------------------------------------
// Question generation

// One Basic and one Scene question for the tuple. VeryWeak tuples are
// rejected.
absl::StatusOr<std::vector<Question>> GeneratePrivacyQuestions(
    const PrivacyTuple& tuple, const TemplateTable& templates);

// Decides whether a candidate image enters the dataset. The default accepts
// everything; a scoring client can be plugged in here.
class CandidateFilter {
 public:
  virtual ~CandidateFilter() = default;
  virtual bool Accept(const ImageEntry& candidate) const = 0;
};

class PassThroughFilter final : public CandidateFilter {
 public:
  bool Accept(const ImageEntry&) const override { return true; }
};

// Produces privacy tuples for an image. No annotation backend ships with the
// library; tuples are expected to come from external files.
class TupleAnnotator {
 public:
  virtual ~TupleAnnotator() = default;
  virtual absl::StatusOr<std::vector<PrivacyTuple>> Annotate(
      const ImageEntry& entry) const = 0;
};

class UnavailableAnnotator final : public TupleAnnotator {
 public:
  absl::StatusOr<std::vector<PrivacyTuple>> Annotate(
      const ImageEntry& entry) const override;
};

// Replaces the entry's privacy questions with questions generated from its
// tuples. VeryWeak tuples are kept but generate nothing.
absl::Status RegeneratePrivacyQuestions(ImageEntry& entry,
                                        const TemplateTable& templates);

// Annotates, filters and generates questions for each candidate.
absl::StatusOr<std::vector<ImageEntry>> BuildEntries(
    std::vector<ImageEntry> candidates, const CandidateFilter& filter,
    const TupleAnnotator& annotator, const TemplateTable& templates);

// ---------------------------------------------------------------------------
// Statistics

// Tuple counts by person presence, strength level (Weak..VeryStrong) and
// attribute. VeryWeak tuples are not counted.
struct DatasetStatistics {
  static constexpr std::array<Strength, 4> kLevels = {
      Strength::kWeak, Strength::kMedium, Strength::kStrong,
      Strength::kVeryStrong};

  // counts[with_person][level index][attribute index]
  std::array<std::array<std::array<int, 8>, 4>, 2> counts{};

  int LevelTotal(bool with_person, int level) const;
  int AttributeTotal(bool with_person, Attribute attribute) const;
  int Total(bool with_person) const;
};

DatasetStatistics ComputeStatistics(const std::vector<ImageEntry>& entries);

// Category,Inference Strength,SCH,...,SEX,Sum rows with Overall lines.
std::string StatisticsCsv(const DatasetStatistics& stats);

}  // namespace privshield

#endif  // PRIVSHIELD_DATASET_H_
