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

#include "privshield/question.h"

#include "absl/strings/str_cat.h"
#include "privshield/status.h"

namespace privshield {
namespace {

constexpr std::array<absl::string_view, 8> kAttributeCodes = {
    "SCH", "OCC", "LOC", "INC", "HEA", "MAR", "AGE", "SEX"};
constexpr std::array<absl::string_view, 5> kStrengthNames = {
    "VeryWeak", "Weak", "Medium", "Strong", "VeryStrong"};

}  // namespace

absl::string_view AttributeCode(Attribute a) { return kAttributeCodes[Index(a)]; }
absl::string_view StrengthName(Strength s) { return kStrengthNames[Index(s)]; }

absl::string_view LevelName(QuestionLevel l) {
  return l == QuestionLevel::kBasic ? "Basic" : "Scene";
}

absl::string_view KindName(QuestionKind k) {
  return k == QuestionKind::kPrivacy ? "privacy" : "nonprivacy";
}

absl::StatusOr<Attribute> ParseAttribute(absl::string_view code) {
  for (Attribute a : kAllAttributes) {
    if (AttributeCode(a) == code) return a;
  }
  return ArgumentError(absl::StrCat("unknown attribute code '", code, "'"));
}

absl::StatusOr<Strength> ParseStrength(absl::string_view name) {
  for (Strength s : kAllStrengths) {
    if (StrengthName(s) == name) return s;
  }
  return ArgumentError(absl::StrCat("unknown inference strength '", name, "'"));
}

absl::StatusOr<QuestionLevel> ParseLevel(absl::string_view name) {
  if (name == "Basic") return QuestionLevel::kBasic;
  if (name == "Scene") return QuestionLevel::kScene;
  return ArgumentError(absl::StrCat("unknown question level '", name, "'"));
}

Question Question::Privacy(std::string text, Attribute attribute,
                           Strength strength,
                           std::optional<QuestionLevel> level) {
  Question q;
  q.text = std::move(text);
  q.kind = QuestionKind::kPrivacy;
  q.attribute = attribute;
  q.strength = strength;
  q.level = level;
  return q;
}

Question Question::NonPrivacy(std::string text,
                              std::vector<std::string> reference_answers) {
  Question q;
  q.text = std::move(text);
  q.kind = QuestionKind::kNonPrivacy;
  q.reference_answers = std::move(reference_answers);
  return q;
}

absl::Status Question::Validate() const {
  if (text.empty()) return ArgumentError("question text is empty");
  if (kind == QuestionKind::kPrivacy) {
    if (!attribute || !strength) {
      return ArgumentError(absl::StrCat("privacy question '", text,
                                        "' lacks attribute or strength"));
    }
    if (*strength == Strength::kVeryWeak) {
      return ArgumentError(absl::StrCat("privacy question '", text,
                                        "' has VeryWeak strength"));
    }
    if (!reference_answers.empty()) {
      return ArgumentError(absl::StrCat("privacy question '", text,
                                        "' carries reference answers"));
    }
  } else if (attribute || strength || level) {
    return ArgumentError(absl::StrCat("non-privacy question '", text,
                                      "' carries privacy metadata"));
  }
  return absl::OkStatus();
}

}  // namespace privshield
