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

#include "privshield/scorer.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "privshield/status.h"

namespace privshield {

absl::StatusOr<std::vector<double>> Scorer::Score(
    const Image& image, const Question& question) const {
  if (question.text.empty()) return ArgumentError("question text is empty");
  RETURN_IF_ERROR(CheckInput(image));
  return DoScore(image, question);
}

absl::StatusOr<PixelField> Scorer::BackpropLogits(
    const Image& image, const Question& question,
    std::span<const double> logit_gradient) const {
  if (question.text.empty()) return ArgumentError("question text is empty");
  RETURN_IF_ERROR(CheckInput(image));
  if (logit_gradient.size() != vocabulary().size()) {
    return ArgumentError(absl::StrCat("logit gradient has ",
                                      logit_gradient.size(),
                                      " entries, vocabulary has ",
                                      vocabulary().size()));
  }
  return DoBackpropLogits(image, question, logit_gradient);
}

absl::StatusOr<PixelField> Scorer::DoBackpropLogits(
    const Image&, const Question&, std::span<const double>) const {
  return absl::UnimplementedError(
      absl::StrCat("scorer ", label(), " is evaluation-only"));
}

absl::StatusOr<RefusalSet> RefusalSet::Create(std::vector<int> tokens,
                                              int vocabulary_size) {
  if (tokens.empty()) return ArgumentError("refusal set is empty");
  for (int t : tokens) {
    if (t < 0 || t >= vocabulary_size) {
      return ArgumentError(absl::StrCat("refusal token ", t,
                                        " outside vocabulary of size ",
                                        vocabulary_size));
    }
  }
  std::vector<int> sorted = tokens;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return ArgumentError("refusal set contains duplicate tokens");
  }
  return RefusalSet(std::move(tokens), vocabulary_size);
}

absl::StatusOr<RefusalSet> RefusalSet::FromTerms(
    const Scorer& scorer, std::span<const std::string> terms) {
  const auto& vocab = scorer.vocabulary();
  std::vector<int> tokens;
  for (const std::string& term : terms) {
    auto it = std::find(vocab.begin(), vocab.end(), term);
    if (it == vocab.end()) {
      return ConfigurationError(absl::StrCat("refusal term '", term,
                                             "' not in vocabulary of ",
                                             scorer.label()));
    }
    tokens.push_back(static_cast<int>(it - vocab.begin()));
  }
  return Create(std::move(tokens), static_cast<int>(vocab.size()));
}

bool RefusalSet::contains(int token) const {
  return std::find(tokens_.begin(), tokens_.end(), token) != tokens_.end();
}

namespace {

absl::Status CheckRefusal(const Scorer& scorer, const RefusalSet& refusal) {
  if (static_cast<std::size_t>(refusal.vocabulary_size()) !=
      scorer.vocabulary().size()) {
    return ConfigurationError(absl::StrCat(
        "refusal set built for vocabulary of size ", refusal.vocabulary_size(),
        ", scorer ", scorer.label(), " has ", scorer.vocabulary().size()));
  }
  return absl::OkStatus();
}

double RefusalMass(std::span<const double> probs, const RefusalSet& refusal) {
  double sum = 0.0;
  for (int t : refusal.tokens()) sum += probs[static_cast<std::size_t>(t)];
  return sum;
}

}  // namespace

absl::StatusOr<double> RefusalProbability(const Scorer& scorer,
                                          const Image& image,
                                          const Question& question,
                                          const RefusalSet& refusal) {
  RETURN_IF_ERROR(CheckRefusal(scorer, refusal));
  ASSIGN_OR_RETURN(std::vector<double> probs, scorer.Score(image, question));
  return RefusalMass(probs, refusal);
}

absl::StatusOr<PixelField> RefusalGradient(const Scorer& scorer,
                                           const Image& image,
                                           const Question& question,
                                           const RefusalSet& refusal) {
  RETURN_IF_ERROR(CheckRefusal(scorer, refusal));
  ASSIGN_OR_RETURN(std::vector<double> probs, scorer.Score(image, question));
  const double mass = RefusalMass(probs, refusal);
  // Softmax: d log(sum_{r in R} p_r) / d z_k = p_k [k in R] / P_R - p_k.
  std::vector<double> logit_grad(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) logit_grad[k] = -probs[k];
  for (int t : refusal.tokens()) {
    const auto k = static_cast<std::size_t>(t);
    logit_grad[k] += probs[k] / mass;
  }
  return scorer.BackpropLogits(image, question, logit_grad);
}

int ArgmaxLowestIndex(std::span<const double> values) {
  return static_cast<int>(std::max_element(values.begin(), values.end()) -
                          values.begin());
}

absl::StatusOr<bool> Refuses(const Scorer& scorer, const Image& image,
                             const Question& question,
                             const RefusalSet& refusal) {
  RETURN_IF_ERROR(CheckRefusal(scorer, refusal));
  ASSIGN_OR_RETURN(std::vector<double> probs, scorer.Score(image, question));
  return refusal.contains(ArgmaxLowestIndex(probs));
}

absl::StatusOr<PixelField> FiniteDifferenceGradient(const Scorer& scorer,
                                                    const Image& image,
                                                    const Question& question,
                                                    const RefusalSet& refusal,
                                                    double h) {
  if (!(h > 0.0 && h <= 0.1)) {
    return ArgumentError(absl::StrCat("finite-difference step ", h,
                                      " outside (0, 0.1]"));
  }
  PixelField grad(image.shape());
  std::vector<double> values(image.values().begin(), image.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double original = values[i];
    values[i] = original + h;
    ASSIGN_OR_RETURN(Image plus, Image::Create(image.shape(), values, ""));
    values[i] = original - h;
    ASSIGN_OR_RETURN(Image minus, Image::Create(image.shape(), values, ""));
    values[i] = original;
    ASSIGN_OR_RETURN(double p_plus,
                     RefusalProbability(scorer, plus, question, refusal));
    ASSIGN_OR_RETURN(double p_minus,
                     RefusalProbability(scorer, minus, question, refusal));
    grad.mutable_values()[i] = (std::log(p_plus) - std::log(p_minus)) / (2 * h);
  }
  return grad;
}

}  // namespace privshield
