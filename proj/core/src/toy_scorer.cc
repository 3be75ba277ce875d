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

#include "privshield/toy_scorer.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "privshield/status.h"

namespace privshield {
namespace {

// Pooled intensities are centered on mid-gray.
constexpr double kFeatureCenter = 0.5;

using json = nlohmann::ordered_json;

constexpr absl::string_view kFormat = "privshield.toy_scorer";
constexpr int kFormatVersion = 1;

struct Cell {
  int y0, y1, x0, x1;
};

Cell GridCell(const ImageShape& shape, int grid, int gy, int gx) {
  return {gy * shape.height / grid, (gy + 1) * shape.height / grid,
          gx * shape.width / grid, (gx + 1) * shape.width / grid};
}

}  // namespace

std::uint64_t Fnv1a64(absl::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::vector<std::string> TokenizeQuestion(absl::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::pair<int, double>> HashedBagOfTokens(absl::string_view text,
                                                      int dim) {
  std::map<int, double> counts;
  for (const std::string& token : TokenizeQuestion(text)) {
    counts[static_cast<int>(Fnv1a64(token) % static_cast<std::uint64_t>(dim))] +=
        1.0;
  }
  return {counts.begin(), counts.end()};
}

std::vector<double> Softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - top);
    sum += out[k];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::vector<std::string> DefaultToyVocabulary() {
  return {"yes",  "no",     "unknown", "don't know", "two",   "red",
          "blue", "indoors", "outdoors", "dog",      "table", "person"};
}

absl::StatusOr<std::unique_ptr<ToyScorer>> ToyScorer::FromParameters(
    ToyScorerDescriptor descriptor, std::vector<double> weights,
    std::vector<double> biases) {
  const auto& vocab = descriptor.vocabulary;
  if (vocab.empty()) return ConfigurationError("toy scorer vocabulary is empty");
  if (descriptor.embedding_dim <= 0) {
    return ConfigurationError("embedding_dim must be positive");
  }
  if (descriptor.options.pool_grid <= 0) {
    return ConfigurationError("pool_grid must be positive");
  }
  const std::size_t expected = vocab.size() *
                               static_cast<std::size_t>(descriptor.num_features()) *
                               static_cast<std::size_t>(descriptor.embedding_dim);
  if (weights.size() != expected) {
    return ConfigurationError(absl::StrCat("expected ", expected,
                                           " weights, got ", weights.size()));
  }
  if (biases.size() != vocab.size()) {
    return ConfigurationError(absl::StrCat("expected ", vocab.size(),
                                           " biases, got ", biases.size()));
  }
  for (double w : weights) {
    if (!std::isfinite(w)) return ConfigurationError("non-finite weight");
  }
  for (double b : biases) {
    if (!std::isfinite(b)) return ConfigurationError("non-finite bias");
  }
  return std::unique_ptr<ToyScorer>(
      new ToyScorer(std::move(descriptor), std::move(weights), std::move(biases)));
}

absl::StatusOr<std::unique_ptr<ToyScorer>> MakeToyScorer(
    std::uint64_t seed, std::vector<std::string> vocabulary, int embedding_dim,
    const ToyScorerOptions& options) {
  if (vocabulary.empty()) return ConfigurationError("vocabulary is empty");
  if (embedding_dim <= 0) {
    return ConfigurationError("embedding_dim must be positive");
  }
  std::vector<bool> is_refusal(vocabulary.size(), false);
  for (std::size_t k = 0; k < vocabulary.size(); ++k) {
    is_refusal[k] = std::find(options.refusal_terms.begin(),
                              options.refusal_terms.end(),
                              vocabulary[k]) != options.refusal_terms.end();
  }
  const auto refusals = std::count(is_refusal.begin(), is_refusal.end(), true);
  if (refusals == 0) {
    return ConfigurationError("vocabulary contains no refusal answer");
  }
  if (refusals == static_cast<long>(vocabulary.size())) {
    return ConfigurationError("vocabulary contains only refusal answers");
  }

  ToyScorerDescriptor descriptor;
  descriptor.seed = seed;
  descriptor.embedding_dim = embedding_dim;
  descriptor.options = options;
  descriptor.vocabulary = std::move(vocabulary);

  // boost distributions are specified exactly, so parameters are identical
  // across standard libraries.
  boost::random::mt19937_64 rng(seed);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t per_answer =
      static_cast<std::size_t>(descriptor.num_features()) *
      static_cast<std::size_t>(embedding_dim);
  std::vector<double> weights(descriptor.vocabulary.size() * per_answer);
  for (double& w : weights) w = options.weight_scale * normal(rng);
  std::vector<double> biases(descriptor.vocabulary.size());
  for (std::size_t k = 0; k < biases.size(); ++k) {
    biases[k] = options.bias_scale * normal(rng);
    if (is_refusal[k]) biases[k] += options.refusal_bias_offset;
  }
  return ToyScorer::FromParameters(std::move(descriptor), std::move(weights),
                                   std::move(biases));
}

std::string ToyScorer::label() const {
  return absl::StrCat("toy:", descriptor_.seed, ":", descriptor_.embedding_dim);
}

absl::Status ToyScorer::CheckInput(const Image& image) const {
  const int grid = descriptor_.options.pool_grid;
  if (image.height() < grid || image.width() < grid) {
    return ConfigurationError(absl::StrCat(
        "image ", image.id(), " of shape ", ToString(image.shape()),
        " is smaller than the ", grid, "x", grid, " pooling grid of ", label()));
  }
  return absl::OkStatus();
}

std::vector<double> ToyScorer::Features(const Image& image) const {
  const int grid = descriptor_.options.pool_grid;
  std::vector<double> features(static_cast<std::size_t>(descriptor_.num_features()),
                               0.0);
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      const Cell cell = GridCell(image.shape(), grid, gy, gx);
      const double area = static_cast<double>((cell.y1 - cell.y0) *
                                              (cell.x1 - cell.x0));
      for (int c = 0; c < ImageShape::kChannels; ++c) {
        double sum = 0.0;
        for (int y = cell.y0; y < cell.y1; ++y) {
          for (int x = cell.x0; x < cell.x1; ++x) sum += image.at(y, x, c);
        }
        features[static_cast<std::size_t>((gy * grid + gx) * ImageShape::kChannels + c)] =
            sum / area - kFeatureCenter;
      }
    }
  }
  return features;
}

std::vector<double> ToyScorer::QuestionCoupling(const Question& question) const {
  const std::size_t vocab = descriptor_.vocabulary.size();
  const auto features = static_cast<std::size_t>(descriptor_.num_features());
  const auto dim = static_cast<std::size_t>(descriptor_.embedding_dim);
  const auto bag = HashedBagOfTokens(question.text, descriptor_.embedding_dim);
  std::vector<double> coupling(vocab * features, 0.0);
  for (std::size_t k = 0; k < vocab; ++k) {
    for (std::size_t i = 0; i < features; ++i) {
      const double* row = &weights_[(k * features + i) * dim];
      double sum = 0.0;
      for (const auto& [bucket, count] : bag) {
        sum += row[static_cast<std::size_t>(bucket)] * count;
      }
      coupling[k * features + i] = sum;
    }
  }
  return coupling;
}

std::vector<double> ToyScorer::Logits(const Image& image,
                                      const Question& question) const {
  const std::vector<double> f = Features(image);
  const std::vector<double> coupling = QuestionCoupling(question);
  const std::size_t features = f.size();
  std::vector<double> logits(biases_);
  for (std::size_t k = 0; k < logits.size(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < features; ++i) sum += coupling[k * features + i] * f[i];
    logits[k] += sum;
  }
  return logits;
}

std::vector<double> ToyScorer::DoScore(const Image& image,
                                       const Question& question) const {
  return Softmax(Logits(image, question));
}

absl::StatusOr<PixelField> ToyScorer::DoBackpropLogits(
    const Image& image, const Question& question,
    std::span<const double> logit_gradient) const {
  const std::vector<double> coupling = QuestionCoupling(question);
  const auto features = static_cast<std::size_t>(descriptor_.num_features());
  std::vector<double> feature_grad(features, 0.0);
  for (std::size_t k = 0; k < logit_gradient.size(); ++k) {
    const double g = logit_gradient[k];
    if (g == 0.0) continue;
    for (std::size_t i = 0; i < features; ++i) {
      feature_grad[i] += g * coupling[k * features + i];
    }
  }

  const int grid = descriptor_.options.pool_grid;
  PixelField grad(image.shape());
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      const Cell cell = GridCell(image.shape(), grid, gy, gx);
      const double area = static_cast<double>((cell.y1 - cell.y0) *
                                              (cell.x1 - cell.x0));
      for (int c = 0; c < ImageShape::kChannels; ++c) {
        const double g =
            feature_grad[static_cast<std::size_t>((gy * grid + gx) * ImageShape::kChannels + c)] /
            area;
        for (int y = cell.y0; y < cell.y1; ++y) {
          for (int x = cell.x0; x < cell.x1; ++x) grad.at(y, x, c) = g;
        }
      }
    }
  }
  return grad;
}

std::string ToyScorer::ToJson() const {
  const ToyScorerOptions& o = descriptor_.options;
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kFormatVersion;
  doc["descriptor"] = {
      {"seed", descriptor_.seed},
      {"embedding_dim", descriptor_.embedding_dim},
      {"pool_grid", o.pool_grid},
      {"weight_scale", o.weight_scale},
      {"bias_scale", o.bias_scale},
      {"refusal_bias_offset", o.refusal_bias_offset},
      {"refusal_terms", o.refusal_terms},
      {"vocabulary", descriptor_.vocabulary},
  };
  doc["weights_layout"] = "row-major [vocabulary][features][embedding_dim]";
  doc["weights"] = weights_;
  doc["biases"] = biases_;
  return doc.dump(1) + "\n";
}

absl::StatusOr<std::unique_ptr<ToyScorer>> ToyScorer::FromJson(
    absl::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return DataError("scorer file is not valid JSON");
  try {
    if (doc.at("format").get<std::string>() != kFormat) {
      return DataError("scorer file has an unexpected format tag");
    }
    if (doc.at("version").get<int>() != kFormatVersion) {
      return DataError("unsupported scorer file version");
    }
    const json& d = doc.at("descriptor");
    ToyScorerDescriptor descriptor;
    descriptor.seed = d.at("seed").get<std::uint64_t>();
    descriptor.embedding_dim = d.at("embedding_dim").get<int>();
    descriptor.options.pool_grid = d.at("pool_grid").get<int>();
    descriptor.options.weight_scale = d.at("weight_scale").get<double>();
    descriptor.options.bias_scale = d.at("bias_scale").get<double>();
    descriptor.options.refusal_bias_offset =
        d.at("refusal_bias_offset").get<double>();
    descriptor.options.refusal_terms =
        d.at("refusal_terms").get<std::vector<std::string>>();
    descriptor.vocabulary = d.at("vocabulary").get<std::vector<std::string>>();
    return FromParameters(std::move(descriptor),
                          doc.at("weights").get<std::vector<double>>(),
                          doc.at("biases").get<std::vector<double>>());
  } catch (const json::exception& e) {
    return DataError(absl::StrCat("malformed scorer file: ", e.what()));
  }
}

absl::StatusOr<std::unique_ptr<ToyScorer>> ToyScorer::Load(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

absl::Status ToyScorer::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) return DataError(absl::StrCat("cannot write ", path.string()));
  out << ToJson();
  return out ? absl::OkStatus()
             : DataError(absl::StrCat("write failed for ", path.string()));
}

}  // namespace privshield
