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

#ifndef PRIVSHIELD_LOSSES_H_
#define PRIVSHIELD_LOSSES_H_

#include <span>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privshield/image.h"
#include "privshield/question.h"
#include "privshield/scorer.h"

namespace privshield {

// Trade-off between privacy suppression and utility preservation.
struct LossWeights {
  double lambda_p = 0.6;
  double lambda_u = 0.4;

  // Both non-negative and finite, sum positive.
  absl::Status Validate() const;
  bool operator==(const LossWeights&) const = default;
};

// Refusal probabilities below this are floored before taking the log.
inline constexpr double kProbabilityFloor = 1e-12;

// -mean_q log P(refusal | image, q) over privacy questions. >= 0.
absl::StatusOr<double> PrivacyLoss(const Scorer& scorer, const Image& image,
                                   std::span<const Question> privacy_questions,
                                   const RefusalSet& refusal);

// +mean_q log P(refusal | image, q) over non-privacy questions. <= 0.
absl::StatusOr<double> UtilityLoss(const Scorer& scorer, const Image& image,
                                   std::span<const Question> utility_questions,
                                   const RefusalSet& refusal);

// lambda_p * PrivacyLoss + lambda_u * UtilityLoss. The utility term is
// skipped when lambda_u == 0, in which case `utility_questions` may be empty.
absl::StatusOr<double> JointLoss(const Scorer& scorer, const Image& image,
                                 std::span<const Question> privacy_questions,
                                 std::span<const Question> utility_questions,
                                 const LossWeights& weights,
                                 const RefusalSet& refusal);

// Gradient of JointLoss with respect to the pixels. Per-question terms are
// accumulated in question order.
absl::StatusOr<PixelField> JointGradient(
    const Scorer& scorer, const Image& image,
    std::span<const Question> privacy_questions,
    std::span<const Question> utility_questions, const LossWeights& weights,
    const RefusalSet& refusal);

}  // namespace privshield

#endif  // PRIVSHIELD_LOSSES_H_
