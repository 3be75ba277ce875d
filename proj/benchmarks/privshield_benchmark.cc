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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "privshield/losses.h"
#include "privshield/metrics.h"
#include "privshield/optimizer.h"
#include "privshield/toy_scorer.h"

namespace privshield {
namespace {

Image Noise(int side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(ImageShape{side, side}.num_values());
  for (double& x : v) x = unit(rng);
  return *Image::Create({side, side}, std::move(v), "bench");
}

struct Fixture {
  std::unique_ptr<ToyScorer> toy =
      *MakeToyScorer(7, DefaultToyVocabulary(), kDefaultEmbeddingDim);
  RefusalSet refusal = *RefusalSet::FromTerms(*toy, DefaultRefusalTerms());
  std::vector<Question> privacy = {
      Question::Privacy("What is the occupation of this person?", Attribute::kOCC,
                        Strength::kStrong, QuestionLevel::kBasic),
      Question::Privacy("Where does this person live?", Attribute::kLOC,
                        Strength::kMedium, QuestionLevel::kBasic),
      Question::Privacy("What is their income level?", Attribute::kINC,
                        Strength::kWeak, QuestionLevel::kBasic)};
  std::vector<Question> utility = {Question::NonPrivacy("What color is the wall?"),
                                   Question::NonPrivacy("Is it daytime?")};
};

void BM_Score(benchmark::State& state) {
  Fixture f;
  const Image image = Noise(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.toy->Score(image, f.privacy[0]));
  }
}
BENCHMARK(BM_Score)->Arg(32)->Arg(64)->Arg(128);

void BM_JointGradient(benchmark::State& state) {
  Fixture f;
  const Image image = Noise(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        JointGradient(*f.toy, image, f.privacy, f.utility, {0.6, 0.4}, f.refusal));
  }
}
BENCHMARK(BM_JointGradient)->Arg(32)->Arg(64)->Arg(128);

// One check interval of the protection loop (80 updates plus one check).
void BM_ProtectInterval(benchmark::State& state) {
  Fixture f;
  const Image image = Noise(static_cast<int>(state.range(0)), 3);
  ProtectionConfig config = ProtectionConfig::Defaults(f.refusal);
  config.max_iterations = config.check_interval;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Protect(*f.toy, image, f.privacy, f.utility, config));
  }
  state.SetItemsProcessed(state.iterations() * config.check_interval);
}
BENCHMARK(BM_ProtectInterval)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Ssim(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Image a = Noise(side, 4);
  const Image b = Noise(side, 5);
  for (auto _ : state) benchmark::DoNotOptimize(Ssim(a, b));
}
BENCHMARK(BM_Ssim)->Arg(32)->Arg(128)->Arg(256);

void BM_Psnr(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Image a = Noise(side, 6);
  const Image b = Noise(side, 7);
  for (auto _ : state) benchmark::DoNotOptimize(Psnr(a, b));
}
BENCHMARK(BM_Psnr)->Arg(256);

void BM_AnswerRate(benchmark::State& state) {
  Fixture f;
  std::vector<Image> images;
  for (int i = 0; i < 16; ++i) images.push_back(Noise(32, 10 + i));
  std::vector<EvalPair> pairs;
  for (const Image& im : images) {
    for (const Question& q : f.privacy) pairs.push_back({&im, &q});
  }
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(AnswerRate(*f.toy, pairs, f.refusal, workers));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_AnswerRate)->Arg(1)->Arg(4);

}  // namespace
}  // namespace privshield

BENCHMARK_MAIN();
