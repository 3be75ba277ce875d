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

#ifndef PRIVSHIELD_METRICS_H_
#define PRIVSHIELD_METRICS_H_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "privshield/image.h"
#include "privshield/question.h"
#include "privshield/scorer.h"

namespace privshield {

// ---------------------------------------------------------------------------
// Answer rates

// One (image, question) evaluation. Both pointers must outlive the call.
struct EvalPair {
  const Image* image = nullptr;
  const Question* question = nullptr;
};

// Percentage of questions answered (argmax not a refusal). Called PAR for
// privacy questions and NPAR for non-privacy ones.
struct AnswerRateReport {
  double rate = 0.0;  // 100 * numerator / denominator
  int numerator = 0;
  int denominator = 0;
  QuestionKind kind = QuestionKind::kPrivacy;
  // Per-attribute rates; privacy questions only.
  std::map<Attribute, double> breakdown;
};

// All pairs must share one question kind. `workers` > 1 evaluates pairs in
// parallel; the report does not depend on it.
absl::StatusOr<AnswerRateReport> AnswerRate(const Scorer& scorer,
                                            std::span<const EvalPair> pairs,
                                            const RefusalSet& refusal,
                                            int workers = 1);

// ---------------------------------------------------------------------------
// Image quality

// 10 log10(1 / MSE) over unit-range intensities; +infinity for identical
// images.
absl::StatusOr<double> Psnr(const Image& a, const Image& b);

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

// Mean SSIM over all fully contained 11x11 Gaussian windows (sigma 1.5,
// K1 = 0.01, K2 = 0.03, dynamic range 1), computed per channel and averaged
// over channels.
absl::StatusOr<double> Ssim(const Image& a, const Image& b);

// The normalized 11x11 Gaussian window, row-major.
std::array<double, kSsimWindow * kSsimWindow> SsimWindow();

// ---------------------------------------------------------------------------
// Relative reduction

// (ori - pro) / ori * 100 with both inputs taken at two decimals and the
// result rounded half-up to one decimal. Absent when ori is not positive.
std::optional<double> RelativeReduction(double ori, double pro);

// Rounds half away from zero at `decimals` places, treating the input as its
// shortest decimal representation.
double RoundDecimal(double value, int decimals);

// ---------------------------------------------------------------------------
// Cross-model transfer

struct TransferMatrix {
  std::vector<std::string> source_models;
  std::vector<std::string> target_models;
  // entries[s][t]: PAR of images protected against source s, scored by t.
  std::vector<std::vector<double>> entries;
};

// `protected_sets` maps each scorer label to the pairs protected against that
// scorer. Sources and targets follow the order of `scorers`.
absl::StatusOr<TransferMatrix> ComputeTransferMatrix(
    std::span<const Scorer* const> scorers,
    const std::map<std::string, std::vector<EvalPair>>& protected_sets,
    std::span<const std::string> refusal_terms, int workers = 1);

// ---------------------------------------------------------------------------
// Annotation agreement

using AttributeSet = std::set<Attribute>;

struct AttributeAgreement {
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  // Absent when the attribute is neither predicted nor gold for any item.
  // Otherwise a zero denominator yields 0.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

struct AgreementReport {
  std::map<Attribute, AttributeAgreement> per_attribute;
  // Unweighted means over attributes with defined values.
  std::optional<double> mean_precision;
  std::optional<double> mean_recall;
  std::optional<double> mean_f1;
};

// Treats each attribute as an independent binary label per item. Both maps
// must have the same keys.
absl::StatusOr<AgreementReport> AnnotationAgreement(
    const std::map<std::string, AttributeSet>& predicted,
    const std::map<std::string, AttributeSet>& gold);

// Row-normalized confusion matrix, rows = gold level, columns = predicted
// level. A row is absent when its gold level never occurs.
using StrengthConfusion =
    std::array<std::optional<std::array<double, kAllStrengths.size()>>,
               kAllStrengths.size()>;

absl::StatusOr<StrengthConfusion> ComputeStrengthConfusion(
    std::span<const Strength> predicted, std::span<const Strength> gold);

}  // namespace privshield

#endif  // PRIVSHIELD_METRICS_H_
