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

#ifndef PRIVSHIELD_TOY_SCORER_H_
#define PRIVSHIELD_TOY_SCORER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "privshield/scorer.h"

namespace privshield {

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(absl::string_view bytes);

// Lowercased ASCII alphanumeric runs; everything else separates tokens.
std::vector<std::string> TokenizeQuestion(absl::string_view text);

// Bag of hashed tokens: entry (bucket, count) for every non-empty bucket,
// bucket = Fnv1a64(token) mod dim, sorted by bucket.
std::vector<std::pair<int, double>> HashedBagOfTokens(absl::string_view text,
                                                      int dim);

inline constexpr int kDefaultEmbeddingDim = 32;

struct ToyScorerOptions {
  // Image features are the means of a pool_grid x pool_grid grid of cells,
  // per channel. At 32x32 each cell is a 4x4 pixel patch.
  int pool_grid = 8;
  // Standard deviation of the bilinear weights.
  double weight_scale = 0.5;
  // Standard deviation of the per-answer bias.
  double bias_scale = 0.5;
  // Added to the bias of every refusal answer. Negative values make the
  // unprotected model answer most questions.
  double refusal_bias_offset = -1.0;
  std::vector<std::string> refusal_terms = DefaultRefusalTerms();
};

struct ToyScorerDescriptor {
  std::uint64_t seed = 0;
  int embedding_dim = kDefaultEmbeddingDim;
  ToyScorerOptions options;
  std::vector<std::string> vocabulary;

  int num_features() const {
    return options.pool_grid * options.pool_grid * ImageShape::kChannels;
  }
};

// Desk-scale stand-in for a vision-language model.
//
//   features f  = per-channel means over a pool_grid x pool_grid cell grid,
//                 minus 0.5
//   question e  = hashed bag-of-token counts, length embedding_dim
//   logits z_k  = sum_ij f_i W[k,i,j] e_j + b_k
//   p           = softmax(z)
//
// Logits are linear in the pixels, so the input gradient is closed-form.
class ToyScorer final : public Scorer {
 public:
  // weights: row-major [vocab][features][embedding_dim]; biases: [vocab].
  static absl::StatusOr<std::unique_ptr<ToyScorer>> FromParameters(
      ToyScorerDescriptor descriptor, std::vector<double> weights,
      std::vector<double> biases);

  static absl::StatusOr<std::unique_ptr<ToyScorer>> FromJson(
      absl::string_view json);
  static absl::StatusOr<std::unique_ptr<ToyScorer>> Load(
      const std::filesystem::path& path);

  std::string ToJson() const;
  absl::Status Save(const std::filesystem::path& path) const;

  const std::vector<std::string>& vocabulary() const override {
    return descriptor_.vocabulary;
  }
  std::string label() const override;

  const ToyScorerDescriptor& descriptor() const { return descriptor_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& biases() const { return biases_; }

  std::vector<double> Features(const Image& image) const;
  std::vector<double> Logits(const Image& image,
                             const Question& question) const;

 protected:
  absl::Status CheckInput(const Image& image) const override;
  std::vector<double> DoScore(const Image& image,
                              const Question& question) const override;
  absl::StatusOr<PixelField> DoBackpropLogits(
      const Image& image, const Question& question,
      std::span<const double> logit_gradient) const override;

 private:
  ToyScorer(ToyScorerDescriptor descriptor, std::vector<double> weights,
            std::vector<double> biases)
      : descriptor_(std::move(descriptor)),
        weights_(std::move(weights)),
        biases_(std::move(biases)) {}

  // [vocab][features] = W contracted with the question embedding.
  std::vector<double> QuestionCoupling(const Question& question) const;

  ToyScorerDescriptor descriptor_;
  std::vector<double> weights_;
  std::vector<double> biases_;
};

std::vector<std::string> DefaultToyVocabulary();

// Deterministic in (seed, vocabulary, embedding_dim, options). The vocabulary
// must contain at least one refusal term and one other answer.
absl::StatusOr<std::unique_ptr<ToyScorer>> MakeToyScorer(
    std::uint64_t seed, std::vector<std::string> vocabulary, int embedding_dim,
    const ToyScorerOptions& options = {});

// Numerically stable softmax.
std::vector<double> Softmax(std::span<const double> logits);

}  // namespace privshield

#endif  // PRIVSHIELD_TOY_SCORER_H_
