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

#ifndef PRIVSHIELD_TESTS_TEST_UTIL_H_
#define PRIVSHIELD_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "privshield/image.h"
#include "privshield/question.h"
#include "privshield/scorer.h"
#include "privshield/toy_scorer.h"

namespace privshield::testing {

inline Image RandomImage(ImageShape shape, std::uint64_t seed, double lo = 0.0,
                         double hi = 1.0, std::string id = "random") {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(lo, hi);
  std::vector<double> values(shape.num_values());
  for (double& v : values) v = unit(rng);
  return *Image::Create(shape, std::move(values), std::move(id));
}

inline Image Gray(ImageShape shape, double value, std::string id = "gray") {
  return *Image::Filled(shape, value, std::move(id));
}

inline double RelativeL2(const PixelField& a, const PixelField& b) {
  const double denom = b.L2Norm();
  return (a - b).L2Norm() / (denom > 0 ? denom : 1.0);
}

// Returns the same probability vector for every input; no image gradient.
class FixedScorer : public Scorer {
 public:
  FixedScorer(std::vector<std::string> vocabulary, std::vector<double> probs)
      : vocabulary_(std::move(vocabulary)), probs_(std::move(probs)) {}

  const std::vector<std::string>& vocabulary() const override {
    return vocabulary_;
  }
  std::string label() const override { return "fixed"; }

 protected:
  absl::Status CheckInput(const Image&) const override {
    return absl::OkStatus();
  }
  std::vector<double> DoScore(const Image&, const Question&) const override {
    return probs_;
  }
  absl::StatusOr<PixelField> DoBackpropLogits(
      const Image& image, const Question&,
      std::span<const double>) const override {
    return PixelField(image.shape());
  }

 private:
  std::vector<std::string> vocabulary_;
  std::vector<double> probs_;
};

inline std::vector<std::string> NumberedVocabulary(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("a" + std::to_string(i));
  return v;
}

inline std::vector<double> Uniform(int n) {
  return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
}

// Toy scorer with all weights zero: logits equal the given biases for every
// image and question.
inline std::unique_ptr<ToyScorer> ZeroCouplingToy(std::vector<double> biases,
                                                  int dim = 8) {
  ToyScorerDescriptor d;
  d.seed = 0;
  d.embedding_dim = dim;
  d.vocabulary = DefaultToyVocabulary();
  std::vector<double> weights(d.vocabulary.size() *
                              static_cast<std::size_t>(d.num_features()) *
                              static_cast<std::size_t>(dim),
                              0.0);
  return *ToyScorer::FromParameters(std::move(d), std::move(weights),
                                    std::move(biases));
}

inline Question Ask(std::string text) {
  return Question::NonPrivacy(std::move(text));
}

inline Question AskPrivate(std::string text,
                           Attribute attribute = Attribute::kOCC) {
  return Question::Privacy(std::move(text), attribute, Strength::kStrong,
                           QuestionLevel::kBasic);
}

inline std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("privshield_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path DataDir() { return PRIVSHIELD_TEST_DATA_DIR; }

}  // namespace privshield::testing

#endif  // PRIVSHIELD_TESTS_TEST_UTIL_H_
