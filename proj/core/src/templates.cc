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

#include "privshield/templates.h"

#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "privshield/status.h"
#include "privshield/toy_scorer.h"

namespace privshield {

absl::StatusOr<TemplateTable> TemplateTable::Parse(absl::string_view text) {
  TemplateTable table;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    std::pair<absl::string_view, absl::string_view> head =
        absl::StrSplit(line, absl::MaxSplits(' ', 1));
    const absl::string_view directive = head.first;
    const absl::string_view rest = absl::StripAsciiWhitespace(head.second);
    auto fail = [&](absl::string_view why) {
      return ConfigurationError(
          absl::StrCat("template line ", line_number, ": ", why));
    };
    if (directive == "block") {
      if (rest.empty()) return fail("empty blocklist term");
      table.blocklist_.push_back(absl::AsciiStrToLower(rest));
      continue;
    }
    if (directive != "basic" && directive != "scene") {
      return fail(absl::StrCat("unknown directive '", directive, "'"));
    }
    std::pair<absl::string_view, absl::string_view> body =
        absl::StrSplit(rest, absl::MaxSplits(' ', 1));
    auto attribute = ParseAttribute(body.first);
    if (!attribute.ok()) return fail(attribute.status().message());
    const absl::string_view tmpl = absl::StripAsciiWhitespace(body.second);
    if (tmpl.empty()) return fail("empty template");
    if (directive == "scene") {
      if (tmpl.find(kCluePlaceholder) == absl::string_view::npos) {
        return fail("scene template lacks {clue}");
      }
      table.scene_[*attribute] = std::string(tmpl);
    } else {
      table.basic_[*attribute] = std::string(tmpl);
    }
  }
  return table;
}

absl::StatusOr<TemplateTable> TemplateTable::Load(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open template file ",
                                            path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

absl::StatusOr<std::string> TemplateTable::Basic(Attribute attribute) const {
  auto it = basic_.find(attribute);
  if (it == basic_.end()) {
    return ConfigurationError(absl::StrCat("no basic template for ",
                                           AttributeCode(attribute)));
  }
  return it->second;
}

absl::StatusOr<std::string> TemplateTable::Scene(Attribute attribute,
                                                 absl::string_view clue) const {
  auto it = scene_.find(attribute);
  if (it == scene_.end()) {
    return ConfigurationError(absl::StrCat("no scene template for ",
                                           AttributeCode(attribute)));
  }
  return absl::StrReplaceAll(it->second, {{kCluePlaceholder, clue}});
}

std::string TemplateTable::FindBlockedTerm(absl::string_view text) const {
  const std::vector<std::string> words = TokenizeQuestion(text);
  for (const std::string& term : blocklist_) {
    const std::vector<std::string> needle = TokenizeQuestion(term);
    if (needle.empty() || needle.size() > words.size()) continue;
    for (std::size_t i = 0; i + needle.size() <= words.size(); ++i) {
      if (std::equal(needle.begin(), needle.end(), words.begin() + static_cast<long>(i))) {
        return term;
      }
    }
  }
  return "";
}

}  // namespace privshield
