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

#ifndef PRIVSHIELD_QUESTION_H_
#define PRIVSHIELD_QUESTION_H_

#include <array>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace privshield {

enum class QuestionKind { kPrivacy, kNonPrivacy };

// Privacy attribute taxonomy.
enum class Attribute { kSCH, kOCC, kLOC, kINC, kHEA, kMAR, kAGE, kSEX };
inline constexpr std::array<Attribute, 8> kAllAttributes = {
    Attribute::kSCH, Attribute::kOCC, Attribute::kLOC, Attribute::kINC,
    Attribute::kHEA, Attribute::kMAR, Attribute::kAGE, Attribute::kSEX};

// Ordinal evidence scale. kVeryWeak marks a non-inferable attribute.
enum class Strength { kVeryWeak, kWeak, kMedium, kStrong, kVeryStrong };
inline constexpr std::array<Strength, 5> kAllStrengths = {
    Strength::kVeryWeak, Strength::kWeak, Strength::kMedium, Strength::kStrong,
    Strength::kVeryStrong};

enum class QuestionLevel { kBasic, kScene };

absl::string_view AttributeCode(Attribute a);  // "SCH", "OCC", ...
absl::string_view StrengthName(Strength s);    // "VeryWeak", "Weak", ...
absl::string_view LevelName(QuestionLevel l);  // "Basic", "Scene"
absl::string_view KindName(QuestionKind k);    // "privacy", "nonprivacy"

absl::StatusOr<Attribute> ParseAttribute(absl::string_view code);
absl::StatusOr<Strength> ParseStrength(absl::string_view name);
absl::StatusOr<QuestionLevel> ParseLevel(absl::string_view name);

inline int Index(Attribute a) { return static_cast<int>(a); }
inline int Index(Strength s) { return static_cast<int>(s); }

struct Question {
  std::string text;
  QuestionKind kind = QuestionKind::kNonPrivacy;
  std::optional<Attribute> attribute;
  std::optional<Strength> strength;
  std::optional<QuestionLevel> level;
  std::vector<std::string> reference_answers;

  static Question Privacy(std::string text, Attribute attribute,
                          Strength strength,
                          std::optional<QuestionLevel> level = std::nullopt);
  static Question NonPrivacy(std::string text,
                             std::vector<std::string> reference_answers = {});

  bool is_privacy() const { return kind == QuestionKind::kPrivacy; }

  // Privacy questions carry attribute and strength, non-privacy questions
  // carry neither (nor a level or VeryWeak strength).
  absl::Status Validate() const;

  bool operator==(const Question&) const = default;
};

}  // namespace privshield

#endif  // PRIVSHIELD_QUESTION_H_
