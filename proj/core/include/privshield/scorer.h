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

#ifndef PRIVSHIELD_SCORER_H_
#define PRIVSHIELD_SCORER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privshield/image.h"
#include "privshield/question.h"

namespace privshield {

// Answer strings treated as refusals when none are given explicitly.
inline const std::vector<std::string>& DefaultRefusalTerms() {
  static const std::vector<std::string> terms = {"unknown", "don't know"};
  return terms;
}

// A differentiable answer model: maps (image, question) to a probability
// distribution over a fixed answer vocabulary.
//
// Implementations must be immutable after construction. Score must be a pure
// function of (parameters, image, question).
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual const std::vector<std::string>& vocabulary() const = 0;

  // Identifies the scorer in reports and transfer matrices, e.g. "toy:7:16".
  virtual std::string label() const = 0;

  // False for evaluation-only backends.
  virtual bool differentiable() const { return true; }

  // Probability vector over vocabulary(). Rejects empty question text and
  // images the model cannot consume.
  absl::StatusOr<std::vector<double>> Score(const Image& image,
                                            const Question& question) const;

  // Vector-Jacobian product: given d(objective)/d(logits), returns
  // d(objective)/d(pixels).
  absl::StatusOr<PixelField> BackpropLogits(
      const Image& image, const Question& question,
      std::span<const double> logit_gradient) const;

 protected:
  virtual absl::Status CheckInput(const Image& image) const = 0;
  virtual std::vector<double> DoScore(const Image& image,
                                      const Question& question) const = 0;
  virtual absl::StatusOr<PixelField> DoBackpropLogits(
      const Image& image, const Question& question,
      std::span<const double> logit_gradient) const;
};

// Vocabulary indices that count as a refusal. Non-empty, in range, unique.
class RefusalSet {
 public:
  // Empty and therefore invalid; use Create or FromTerms.
  RefusalSet() = default;

  static absl::StatusOr<RefusalSet> Create(std::vector<int> tokens,
                                           int vocabulary_size);
  // Resolves answer strings against the scorer vocabulary; every term must
  // be present.
  static absl::StatusOr<RefusalSet> FromTerms(
      const Scorer& scorer, std::span<const std::string> terms);

  const std::vector<int>& tokens() const { return tokens_; }
  int vocabulary_size() const { return vocabulary_size_; }
  bool contains(int token) const;

  bool operator==(const RefusalSet&) const = default;

 private:
  RefusalSet(std::vector<int> tokens, int vocabulary_size)
      : tokens_(std::move(tokens)), vocabulary_size_(vocabulary_size) {}

  std::vector<int> tokens_;
  int vocabulary_size_ = 0;
};

// Sum of the scorer's probabilities over the refusal tokens.
absl::StatusOr<double> RefusalProbability(const Scorer& scorer,
                                          const Image& image,
                                          const Question& question,
                                          const RefusalSet& refusal);

// d log(RefusalProbability) / d pixel, analytic.
absl::StatusOr<PixelField> RefusalGradient(const Scorer& scorer,
                                           const Image& image,
                                           const Question& question,
                                           const RefusalSet& refusal);

// True iff the argmax answer is a refusal token. Ties go to the lowest
// vocabulary index.
absl::StatusOr<bool> Refuses(const Scorer& scorer, const Image& image,
                             const Question& question,
                             const RefusalSet& refusal);

// Index of the largest entry, lowest index on ties.
int ArgmaxLowestIndex(std::span<const double> values);

// Central differences of log RefusalProbability with step h. Gradient-check
// oracle only: perturbed values are not clamped, so pixels should lie in
// [h, 1-h].
absl::StatusOr<PixelField> FiniteDifferenceGradient(const Scorer& scorer,
                                                    const Image& image,
                                                    const Question& question,
                                                    const RefusalSet& refusal,
                                                    double h);

}  // namespace privshield

#endif  // PRIVSHIELD_SCORER_H_
