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

#include "privshield/losses.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "privshield/status.h"

namespace privshield {
namespace {

absl::Status CheckKinds(std::span<const Question> questions, QuestionKind kind,
                        absl::string_view what) {
  if (questions.empty()) {
    return ArgumentError(absl::StrCat(what, " question list is empty"));
  }
  for (const Question& q : questions) {
    if (q.kind != kind) {
      return ArgumentError(absl::StrCat("'", q.text, "' is not a ", what,
                                        " question"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> MeanLogRefusal(const Scorer& scorer, const Image& image,
                                      std::span<const Question> questions,
                                      const RefusalSet& refusal) {
  double sum = 0.0;
  for (const Question& q : questions) {
    ASSIGN_OR_RETURN(double p, RefusalProbability(scorer, image, q, refusal));
    sum += std::log(std::max(p, kProbabilityFloor));
  }
  return sum / static_cast<double>(questions.size());
}

absl::Status AccumulateGradient(const Scorer& scorer, const Image& image,
                                std::span<const Question> questions,
                                const RefusalSet& refusal, double scale,
                                PixelField& total) {
  PixelField sum(image.shape());
  for (const Question& q : questions) {
    ASSIGN_OR_RETURN(PixelField g, RefusalGradient(scorer, image, q, refusal));
    sum += g;
  }
  sum *= scale / static_cast<double>(questions.size());
  total += sum;
  return absl::OkStatus();
}

absl::Status CheckJointInputs(std::span<const Question> privacy_questions,
                              std::span<const Question> utility_questions,
                              const LossWeights& weights) {
  RETURN_IF_ERROR(weights.Validate());
  RETURN_IF_ERROR(CheckKinds(privacy_questions, QuestionKind::kPrivacy, "privacy"));
  if (weights.lambda_u > 0.0) {
    RETURN_IF_ERROR(
        CheckKinds(utility_questions, QuestionKind::kNonPrivacy, "non-privacy"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status LossWeights::Validate() const {
  if (!std::isfinite(lambda_p) || !std::isfinite(lambda_u) || lambda_p < 0.0 ||
      lambda_u < 0.0) {
    return ArgumentError(absl::StrCat("loss weights (", lambda_p, ", ",
                                      lambda_u, ") must be finite and >= 0"));
  }
  if (lambda_p + lambda_u <= 0.0) {
    return ArgumentError("loss weights must not both be zero");
  }
  return absl::OkStatus();
}

absl::StatusOr<double> PrivacyLoss(const Scorer& scorer, const Image& image,
                                   std::span<const Question> privacy_questions,
                                   const RefusalSet& refusal) {
  RETURN_IF_ERROR(CheckKinds(privacy_questions, QuestionKind::kPrivacy, "privacy"));
  ASSIGN_OR_RETURN(double mean,
                   MeanLogRefusal(scorer, image, privacy_questions, refusal));
  return -mean;
}

absl::StatusOr<double> UtilityLoss(const Scorer& scorer, const Image& image,
                                   std::span<const Question> utility_questions,
                                   const RefusalSet& refusal) {
  RETURN_IF_ERROR(
      CheckKinds(utility_questions, QuestionKind::kNonPrivacy, "non-privacy"));
  return MeanLogRefusal(scorer, image, utility_questions, refusal);
}

absl::StatusOr<double> JointLoss(const Scorer& scorer, const Image& image,
                                 std::span<const Question> privacy_questions,
                                 std::span<const Question> utility_questions,
                                 const LossWeights& weights,
                                 const RefusalSet& refusal) {
  RETURN_IF_ERROR(CheckJointInputs(privacy_questions, utility_questions, weights));
  ASSIGN_OR_RETURN(double privacy,
                   PrivacyLoss(scorer, image, privacy_questions, refusal));
  double total = weights.lambda_p * privacy;
  if (weights.lambda_u > 0.0) {
    ASSIGN_OR_RETURN(double utility,
                     UtilityLoss(scorer, image, utility_questions, refusal));
    total += weights.lambda_u * utility;
  }
  return total;
}

absl::StatusOr<PixelField> JointGradient(
    const Scorer& scorer, const Image& image,
    std::span<const Question> privacy_questions,
    std::span<const Question> utility_questions, const LossWeights& weights,
    const RefusalSet& refusal) {
  RETURN_IF_ERROR(CheckJointInputs(privacy_questions, utility_questions, weights));
  PixelField total(image.shape());
  // Privacy loss is the negated mean log-likelihood, utility loss the plain one.
  RETURN_IF_ERROR(AccumulateGradient(scorer, image, privacy_questions, refusal,
                                     -weights.lambda_p, total));
  if (weights.lambda_u > 0.0) {
    RETURN_IF_ERROR(AccumulateGradient(scorer, image, utility_questions, refusal,
                                       weights.lambda_u, total));
  }
  return total;
}

}  // namespace privshield
