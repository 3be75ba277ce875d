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

#include <numeric>

#include "absl/strings/str_cat.h"
#include "privshield/metrics.h"
#include "privshield/status.h"

namespace privshield {

absl::StatusOr<AgreementReport> AnnotationAgreement(
    const std::map<std::string, AttributeSet>& predicted,
    const std::map<std::string, AttributeSet>& gold) {
  if (predicted.size() != gold.size()) {
    return ArgumentError(absl::StrCat("predicted covers ", predicted.size(),
                                      " items, gold covers ", gold.size()));
  }
  AgreementReport report;
  for (Attribute a : kAllAttributes) report.per_attribute[a];

  for (const auto& [item, gold_set] : gold) {
    auto it = predicted.find(item);
    if (it == predicted.end()) {
      return ArgumentError(absl::StrCat("item '", item, "' has no prediction"));
    }
    for (Attribute a : kAllAttributes) {
      const bool p = it->second.contains(a);
      const bool g = gold_set.contains(a);
      AttributeAgreement& m = report.per_attribute[a];
      if (p && g) ++m.true_positives;
      if (p && !g) ++m.false_positives;
      if (!p && g) ++m.false_negatives;
    }
  }

  std::vector<double> precisions, recalls, f1s;
  for (auto& [attribute, m] : report.per_attribute) {
    const int predicted_pos = m.true_positives + m.false_positives;
    const int gold_pos = m.true_positives + m.false_negatives;
    if (predicted_pos == 0 && gold_pos == 0) continue;
    const double p = predicted_pos > 0
                         ? static_cast<double>(m.true_positives) / predicted_pos
                         : 0.0;
    const double r =
        gold_pos > 0 ? static_cast<double>(m.true_positives) / gold_pos : 0.0;
    m.precision = p;
    m.recall = r;
    m.f1 = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    precisions.push_back(p);
    recalls.push_back(r);
    f1s.push_back(*m.f1);
  }
  auto mean = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  report.mean_precision = mean(precisions);
  report.mean_recall = mean(recalls);
  report.mean_f1 = mean(f1s);
  return report;
}

absl::StatusOr<StrengthConfusion> ComputeStrengthConfusion(
    std::span<const Strength> predicted, std::span<const Strength> gold) {
  if (predicted.size() != gold.size()) {
    return ArgumentError(absl::StrCat(predicted.size(), " predicted labels vs ",
                                      gold.size(), " gold labels"));
  }
  constexpr std::size_t kLevels = kAllStrengths.size();
  std::array<std::array<int, kLevels>, kLevels> counts{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++counts[static_cast<std::size_t>(Index(gold[i]))]
            [static_cast<std::size_t>(Index(predicted[i]))];
  }
  StrengthConfusion matrix;
  for (std::size_t g = 0; g < kLevels; ++g) {
    const int total = std::accumulate(counts[g].begin(), counts[g].end(), 0);
    if (total == 0) continue;
    std::array<double, kLevels> row{};
    for (std::size_t p = 0; p < kLevels; ++p) {
      row[p] = static_cast<double>(counts[g][p]) / total;
    }
    matrix[g] = row;
  }
  return matrix;
}

}  // namespace privshield
