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

#ifndef PRIVSHIELD_OPTIMIZER_H_
#define PRIVSHIELD_OPTIMIZER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privshield/image.h"
#include "privshield/losses.h"
#include "privshield/question.h"
#include "privshield/scorer.h"

namespace privshield {

// Inputs of the joint protection loop. Defaults: step 0.5/255, bound 6/255,
// 1200 iterations, early-stop check every 80 steps, weights (0.6, 0.4).
struct ProtectionConfig {
  double step_size = 0.5 / 255.0;
  double epsilon = 6.0 / 255.0;
  int max_iterations = 1200;
  int check_interval = 80;
  LossWeights weights;
  RefusalSet refusal;
  std::uint64_t seed = 0;

  static ProtectionConfig Defaults(RefusalSet refusal);

  // step_size in (0,1], epsilon in [0,1], 0 < check_interval <= max_iterations.
  absl::Status Validate() const;
};

// Outcome of one early-stop check.
struct RefusalCheck {
  int step = 0;
  bool privacy_refused = false;   // every privacy question refused
  bool utility_answered = false;  // every non-privacy question answered
  bool operator==(const RefusalCheck&) const = default;
};

struct ProtectionResult {
  Image protected_image;
  int iterations_run = 0;
  bool early_stopped = false;
  double final_privacy_loss = 0.0;
  double final_utility_loss = 0.0;  // 0 when no non-privacy questions
  std::vector<RefusalCheck> refusal_trace;
  double psnr = 0.0;                // +inf when unchanged
  std::optional<double> ssim;       // absent for images below the window size
};

// Called at every check with the losses at the checked image.
using CheckObserver =
    std::function<void(const RefusalCheck& check, double privacy_loss,
                       double utility_loss)>;

// Clamps `candidate` into [original - epsilon, original + epsilon] and [0,1].
absl::StatusOr<Image> ProjectLinf(const Image& candidate, const Image& original,
                                  double epsilon);

// Elementwise sign with sign(0) = 0. Non-finite entries are a numeric error.
absl::StatusOr<PixelField> Sign(const PixelField& gradient);

// Type URL under which a failed Protect stores the original image (raw
// doubles) in the status payload.
inline constexpr char kOriginalImagePayload[] =
    "type.privshield/original-image";
std::optional<Image> OriginalImageFromError(const absl::Status& status,
                                            const ImageShape& shape);

// Signed-gradient descent on the joint loss with L-infinity projection.
// Every check_interval steps the refusal predicates are evaluated on the
// current image and the loop stops once all privacy questions are refused
// and all non-privacy questions are answered.
absl::StatusOr<ProtectionResult> Protect(
    const Scorer& scorer, const Image& original,
    std::span<const Question> privacy_questions,
    std::span<const Question> utility_questions, const ProtectionConfig& config,
    const CheckObserver& observer = nullptr);

// A_p and A_u at `image`.
absl::StatusOr<RefusalCheck> CheckRefusals(
    const Scorer& scorer, const Image& image,
    std::span<const Question> privacy_questions,
    std::span<const Question> utility_questions, const RefusalSet& refusal,
    int step);

}  // namespace privshield

#endif  // PRIVSHIELD_OPTIMIZER_H_
