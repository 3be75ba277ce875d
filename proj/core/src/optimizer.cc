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

#include "privshield/optimizer.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"
#include "privshield/metrics.h"
#include "privshield/status.h"

namespace privshield {

ProtectionConfig ProtectionConfig::Defaults(RefusalSet refusal) {
  ProtectionConfig config;
  config.refusal = std::move(refusal);
  return config;
}

absl::Status ProtectionConfig::Validate() const {
  if (!(step_size > 0.0 && step_size <= 1.0)) {
    return ArgumentError(absl::StrCat("step size ", step_size, " outside (0,1]"));
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    return ArgumentError(absl::StrCat("epsilon ", epsilon, " outside [0,1]"));
  }
  if (max_iterations <= 0) return ArgumentError("max_iterations must be positive");
  if (check_interval <= 0 || check_interval > max_iterations) {
    return ArgumentError(absl::StrCat("check interval ", check_interval,
                                      " outside [1, ", max_iterations, "]"));
  }
  if (refusal.tokens().empty()) return ArgumentError("refusal set is empty");
  return weights.Validate();
}

absl::StatusOr<Image> ProjectLinf(const Image& candidate, const Image& original,
                                  double epsilon) {
  if (candidate.shape() != original.shape()) {
    return ArgumentError(absl::StrCat("projection shape mismatch: ",
                                      ToString(candidate.shape()), " vs ",
                                      ToString(original.shape())));
  }
  if (!(epsilon >= 0.0)) return ArgumentError("epsilon must be non-negative");
  const auto c = candidate.values();
  const auto o = original.values();
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double lo = std::max(o[i] - epsilon, 0.0);
    const double hi = std::min(o[i] + epsilon, 1.0);
    out[i] = std::clamp(c[i], lo, hi);
  }
  return Image::FromClampedValues(original.shape(), std::move(out),
                                  candidate.id());
}

absl::StatusOr<PixelField> Sign(const PixelField& gradient) {
  PixelField out(gradient.shape());
  const auto in = gradient.values();
  auto dst = out.mutable_values();
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double g = in[i];
    if (!std::isfinite(g)) {
      return NumericError(absl::StrCat("non-finite gradient entry ", g,
                                       " at index ", i));
    }
    dst[i] = g > 0.0 ? 1.0 : (g < 0.0 ? -1.0 : 0.0);
  }
  return out;
}

std::optional<Image> OriginalImageFromError(const absl::Status& status,
                                            const ImageShape& shape) {
  auto payload = status.GetPayload(kOriginalImagePayload);
  if (!payload) return std::nullopt;
  const std::string bytes(*payload);
  if (bytes.size() != shape.num_values() * sizeof(double)) return std::nullopt;
  std::vector<double> values(shape.num_values());
  std::memcpy(values.data(), bytes.data(), bytes.size());
  auto image = Image::Create(shape, std::move(values), "");
  if (!image.ok()) return std::nullopt;
  return *std::move(image);
}

absl::StatusOr<RefusalCheck> CheckRefusals(
    const Scorer& scorer, const Image& image,
    std::span<const Question> privacy_questions,
    std::span<const Question> utility_questions, const RefusalSet& refusal,
    int step) {
  RefusalCheck check;
  check.step = step;
  check.privacy_refused = true;
  for (const Question& q : privacy_questions) {
    ASSIGN_OR_RETURN(bool refused, Refuses(scorer, image, q, refusal));
    if (!refused) {
      check.privacy_refused = false;
      break;
    }
  }
  check.utility_answered = true;
  for (const Question& q : utility_questions) {
    ASSIGN_OR_RETURN(bool refused, Refuses(scorer, image, q, refusal));
    if (refused) {
      check.utility_answered = false;
      break;
    }
  }
  return check;
}

namespace {

absl::Status WithOriginal(absl::Status status, const Image& original) {
  const auto values = original.values();
  status.SetPayload(kOriginalImagePayload,
                    absl::Cord(absl::string_view(
                        reinterpret_cast<const char*>(values.data()),
                        values.size() * sizeof(double))));
  return status;
}

absl::StatusOr<ProtectionResult> RunLoop(
    const Scorer& scorer, const Image& original,
    std::span<const Question> privacy_questions,
    std::span<const Question> utility_questions, const ProtectionConfig& config,
    const CheckObserver& observer) {
  // Without a utility term the non-privacy questions only enter the checks.
  const std::span<const Question> gradient_utility =
      config.weights.lambda_u > 0.0 ? utility_questions
                                    : std::span<const Question>();

  ProtectionResult result;
  Image current = original;
  for (int step = 1; step <= config.max_iterations; ++step) {
    ASSIGN_OR_RETURN(PixelField gradient,
                     JointGradient(scorer, current, privacy_questions,
                                   gradient_utility, config.weights,
                                   config.refusal));
    ASSIGN_OR_RETURN(PixelField direction, Sign(gradient));

    std::vector<double> stepped(current.values().begin(), current.values().end());
    const auto d = direction.values();
    for (std::size_t i = 0; i < stepped.size(); ++i) {
      stepped[i] -= config.step_size * d[i];
    }
    // Clamped to [0,1] here, then into the epsilon ball around the original.
    ASSIGN_OR_RETURN(current,
                     ProjectLinf(Image::FromClampedValues(current.shape(),
                                                          std::move(stepped),
                                                          original.id()),
                                 original, config.epsilon));
    result.iterations_run = step;

    if (step % config.check_interval == 0) {
      ASSIGN_OR_RETURN(RefusalCheck check,
                       CheckRefusals(scorer, current, privacy_questions,
                                     utility_questions, config.refusal, step));
      result.refusal_trace.push_back(check);
      if (observer) {
        ASSIGN_OR_RETURN(double lp, PrivacyLoss(scorer, current,
                                                privacy_questions, config.refusal));
        double lu = 0.0;
        if (!utility_questions.empty()) {
          ASSIGN_OR_RETURN(lu, UtilityLoss(scorer, current, utility_questions,
                                           config.refusal));
        }
        observer(check, lp, lu);
      }
      if (check.privacy_refused && check.utility_answered) {
        result.early_stopped = true;
        break;
      }
    }
  }

  ASSIGN_OR_RETURN(result.final_privacy_loss,
                   PrivacyLoss(scorer, current, privacy_questions, config.refusal));
  if (!utility_questions.empty()) {
    ASSIGN_OR_RETURN(result.final_utility_loss,
                     UtilityLoss(scorer, current, utility_questions,
                                 config.refusal));
  }
  ASSIGN_OR_RETURN(result.psnr, Psnr(original, current));
  if (std::min(current.height(), current.width()) >= kSsimWindow) {
    ASSIGN_OR_RETURN(double s, Ssim(original, current));
    result.ssim = s;
  }
  result.protected_image = std::move(current);
  return result;
}

}  // namespace

absl::StatusOr<ProtectionResult> Protect(
    const Scorer& scorer, const Image& original,
    std::span<const Question> privacy_questions,
    std::span<const Question> utility_questions, const ProtectionConfig& config,
    const CheckObserver& observer) {
  RETURN_IF_ERROR(config.Validate());
  if (privacy_questions.empty()) {
    return ArgumentError("protection needs at least one privacy question");
  }
  if (config.weights.lambda_u > 0.0 && utility_questions.empty()) {
    return ArgumentError(
        "lambda_u > 0 requires at least one non-privacy question");
  }
  for (const Question& q : utility_questions) {
    if (q.kind != QuestionKind::kNonPrivacy) {
      return ArgumentError(absl::StrCat("'", q.text, "' is not a non-privacy question"));
    }
  }
  if (!scorer.differentiable()) {
    return ConfigurationError(absl::StrCat("scorer ", scorer.label(),
                                           " provides no input gradients"));
  }
  auto result = RunLoop(scorer, original, privacy_questions, utility_questions,
                        config, observer);
  if (!result.ok() && IsNumericError(result.status())) {
    return WithOriginal(result.status(), original);
  }
  return result;
}

}  // namespace privshield
