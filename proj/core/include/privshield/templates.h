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

#ifndef PRIVSHIELD_TEMPLATES_H_
#define PRIVSHIELD_TEMPLATES_H_

#include <filesystem>
#include <map>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "privshield/question.h"

namespace privshield {

// Question templates per attribute plus a blocklist of attribute-value terms
// that generated questions must never contain.
//
// Text format, one directive per line, '#' starts a comment:
//
//   basic <ATTR> <question text>
//   scene <ATTR> <question text containing {clue}>
//   block <term>
class TemplateTable {
 public:
  static constexpr absl::string_view kCluePlaceholder = "{clue}";

  static absl::StatusOr<TemplateTable> Parse(absl::string_view text);
  static absl::StatusOr<TemplateTable> Load(const std::filesystem::path& path);

  // ConfigurationError when the attribute has no template of that level.
  absl::StatusOr<std::string> Basic(Attribute attribute) const;
  absl::StatusOr<std::string> Scene(Attribute attribute,
                                    absl::string_view clue) const;

  const std::vector<std::string>& blocklist() const { return blocklist_; }

  // First blocklisted term occurring in `text` as a whole-word sequence,
  // case-insensitive; empty when none does.
  std::string FindBlockedTerm(absl::string_view text) const;

 private:
  std::map<Attribute, std::string> basic_;
  std::map<Attribute, std::string> scene_;
  std::vector<std::string> blocklist_;
};

}  // namespace privshield

#endif  // PRIVSHIELD_TEMPLATES_H_
