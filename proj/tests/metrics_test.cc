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

#include "privshield/metrics.h"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "privshield/status.h"
#include "test_util.h"

namespace privshield {
namespace {

using ::privshield::testing::Ask;
using ::privshield::testing::AskPrivate;
using ::privshield::testing::FixedScorer;
using ::privshield::testing::Gray;
using ::privshield::testing::RandomImage;

// Vocabulary {"yes", "unknown"}; refuses any question whose text begins with
// "r", answers the rest.
class TextScorer : public Scorer {
 public:
  const std::vector<std::string>& vocabulary() const override {
    static const std::vector<std::string> v = {"yes", "unknown"};
    return v;
  }
  std::string label() const override { return "text"; }

 protected:
  absl::Status CheckInput(const Image&) const override { return absl::OkStatus(); }
  std::vector<double> DoScore(const Image&, const Question& q) const override {
    return q.text.starts_with("r") ? std::vector<double>{0.2, 0.8}
                                   : std::vector<double>{0.7, 0.3};
  }
  absl::StatusOr<PixelField> DoBackpropLogits(const Image& image, const Question&,
                                              std::span<const double>) const override {
    return PixelField(image.shape());
  }
};

RefusalSet UnknownOnly(const Scorer& s) {
  return *RefusalSet::FromTerms(s, std::vector<std::string>{"unknown"});
}

std::vector<EvalPair> PairsFor(const Image& image, const std::vector<Question>& qs) {
  std::vector<EvalPair> pairs;
  for (const Question& q : qs) pairs.push_back({&image, &q});
  return pairs;
}

// ---------------------------------------------------------------------------
// Answer rate

TEST(AnswerRateTest, ThreeOfFour) {
  TextScorer scorer;
  const Image img = Gray({2, 2}, 0.5);
  const std::vector<Question> qs = {
      AskPrivate("a", Attribute::kOCC), AskPrivate("b", Attribute::kOCC),
      AskPrivate("c", Attribute::kLOC), AskPrivate("r", Attribute::kLOC)};
  const auto r = AnswerRate(scorer, PairsFor(img, qs), UnknownOnly(scorer));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->rate, 75.0);
  EXPECT_EQ(r->numerator, 3);
  EXPECT_EQ(r->denominator, 4);
  EXPECT_EQ(r->kind, QuestionKind::kPrivacy);
  EXPECT_EQ(r->breakdown.at(Attribute::kOCC), 100.0);
  EXPECT_EQ(r->breakdown.at(Attribute::kLOC), 50.0);
}

TEST(AnswerRateTest, AllRefusedAndNoneRefused) {
  TextScorer scorer;
  const Image img = Gray({2, 2}, 0.5);
  const std::vector<Question> refused = {Ask("r1"), Ask("r2")};
  const std::vector<Question> answered = {Ask("a1"), Ask("a2"), Ask("a3")};
  EXPECT_EQ(AnswerRate(scorer, PairsFor(img, refused), UnknownOnly(scorer))->rate, 0.0);
  const auto all = AnswerRate(scorer, PairsFor(img, answered), UnknownOnly(scorer));
  EXPECT_EQ(all->rate, 100.0);
  EXPECT_EQ(all->kind, QuestionKind::kNonPrivacy);
  EXPECT_TRUE(all->breakdown.empty());
}

TEST(AnswerRateTest, FullVocabularyRefusalGivesZero) {
  FixedScorer scorer({"a", "b", "c"}, {0.5, 0.3, 0.2});
  const Image img = Gray({2, 2}, 0.5);
  const std::vector<Question> qs = {Ask("x"), Ask("y")};
  const RefusalSet everything = *RefusalSet::Create({0, 1, 2}, 3);
  EXPECT_EQ(AnswerRate(scorer, PairsFor(img, qs), everything)->rate, 0.0);
}

TEST(AnswerRateTest, EmptyAndMixedInputsAreRejected) {
  TextScorer scorer;
  const Image img = Gray({2, 2}, 0.5);
  EXPECT_TRUE(IsArgumentError(
      AnswerRate(scorer, std::vector<EvalPair>{}, UnknownOnly(scorer)).status()));
  const std::vector<Question> mixed = {Ask("a"), AskPrivate("b")};
  EXPECT_TRUE(IsArgumentError(
      AnswerRate(scorer, PairsFor(img, mixed), UnknownOnly(scorer)).status()));
}

TEST(AnswerRateTest, WorkerCountDoesNotChangeTheReport) {
  auto toy = *MakeToyScorer(3, DefaultToyVocabulary(), kDefaultEmbeddingDim);
  const RefusalSet refusal = *RefusalSet::FromTerms(*toy, DefaultRefusalTerms());
  std::vector<Image> images;
  for (int i = 0; i < 6; ++i) images.push_back(RandomImage({16, 16}, 40 + i));
  std::vector<Question> qs;
  for (int i = 0; i < 5; ++i) {
    qs.push_back(AskPrivate("what about them " + std::to_string(i) + "?",
                            kAllAttributes[static_cast<std::size_t>(i)]));
  }
  std::vector<EvalPair> pairs;
  for (const Image& im : images) {
    for (const Question& q : qs) pairs.push_back({&im, &q});
  }
  const auto one = AnswerRate(*toy, pairs, refusal, 1);
  const auto four = AnswerRate(*toy, pairs, refusal, 4);
  ASSERT_TRUE(one.ok() && four.ok());
  EXPECT_EQ(one->numerator, four->numerator);
  EXPECT_EQ(one->rate, four->rate);
  EXPECT_EQ(one->breakdown, four->breakdown);
  EXPECT_GE(one->rate, 0.0);
  EXPECT_LE(one->rate, 100.0);
}

// ---------------------------------------------------------------------------
// PSNR

TEST(PsnrTest, IdenticalImagesAreInfinite) {
  const Image a = RandomImage({8, 8}, 1);
  const double p = *Psnr(a, a);
  EXPECT_TRUE(std::isinf(p));
  EXPECT_GT(p, 0);
}

TEST(PsnrTest, HalfOffsetEverywhere) {
  EXPECT_NEAR(*Psnr(Gray({5, 7}, 0.0), Gray({5, 7}, 0.5)), 6.0206, 1e-4);
  EXPECT_NEAR(*Psnr(Gray({5, 7}, 0.0), Gray({5, 7}, 0.5)),
              10.0 * std::log10(4.0), 1e-12);
}

TEST(PsnrTest, MatchesDirectMseAndIsSymmetric) {
  for (int i = 0; i < 8; ++i) {
    const Image a = RandomImage({9, 6}, 100 + i);
    const Image b = RandomImage({9, 6}, 200 + i);
    double sum = 0.0;
    for (int y = 0; y < 9; ++y) {
      for (int x = 0; x < 6; ++x) {
        for (int c = 0; c < 3; ++c) {
          const double d = a.at(y, x, c) - b.at(y, x, c);
          sum += d * d;
        }
      }
    }
    const double expected = -10.0 * std::log10(sum / (9 * 6 * 3));
    EXPECT_NEAR(*Psnr(a, b), expected, 1e-10);
    EXPECT_EQ(*Psnr(a, b), *Psnr(b, a));
  }
}

TEST(PsnrTest, ShapeMismatch) {
  EXPECT_TRUE(IsArgumentError(Psnr(Gray({2, 3}, 0), Gray({3, 2}, 0)).status()));
}

// ---------------------------------------------------------------------------
// SSIM

// Straightforward windowed SSIM written from the definition.
double ReferenceSsim(const Image& a, const Image& b) {
  constexpr int k = 11;
  constexpr double sigma = 1.5;
  double w[k][k];
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double dy = i - 5, dx = j - 5;
      w[i][j] = std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
      total += w[i][j];
    }
  }
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  const int h = a.shape().height, wd = a.shape().width, ch = ImageShape::kChannels;
  double channel_sum = 0.0;
  for (int c = 0; c < ch; ++c) {
    double acc = 0.0;
    int windows = 0;
    for (int y0 = 0; y0 + k <= h; ++y0) {
      for (int x0 = 0; x0 + k <= wd; ++x0) {
        double ma = 0, mb = 0;
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            ma += w[i][j] / total * a.at(y0 + i, x0 + j, c);
            mb += w[i][j] / total * b.at(y0 + i, x0 + j, c);
          }
        }
        double va = 0, vb = 0, cov = 0;
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            const double da = a.at(y0 + i, x0 + j, c) - ma;
            const double db = b.at(y0 + i, x0 + j, c) - mb;
            va += w[i][j] / total * da * da;
            vb += w[i][j] / total * db * db;
            cov += w[i][j] / total * da * db;
          }
        }
        acc += ((2 * ma * mb + c1) * (2 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
        ++windows;
      }
    }
    channel_sum += acc / windows;
  }
  return channel_sum / ch;
}

TEST(SsimTest, IdentityIsExactlyOne) {
  for (int i = 0; i < 4; ++i) {
    const Image a = RandomImage({16, 13}, 300 + i);
    EXPECT_EQ(*Ssim(a, a), 1.0);
  }
  EXPECT_EQ(*Ssim(Gray({11, 11}, 0.3), Gray({11, 11}, 0.3)), 1.0);
}

TEST(SsimTest, BlackAgainstWhiteCollapses) {
  const double s = *Ssim(Gray({16, 16}, 0.0), Gray({16, 16}, 1.0));
  EXPECT_LT(s, 0.05);
  // Luminance term only: c1 / (1 + c1).
  EXPECT_NEAR(s, 1e-4 / (1.0 + 1e-4), 1e-12);
}

TEST(SsimTest, MatchesDirectConvolution) {
  for (int i = 0; i < 5; ++i) {
    const Image a = RandomImage({14 + i, 12}, 400 + i);
    Image b = RandomImage({14 + i, 12}, 500 + i, 0.0, 0.2);
    std::vector<double> mix(a.values().begin(), a.values().end());
    for (std::size_t j = 0; j < mix.size(); ++j) mix[j] = 0.8 * mix[j] + b.values()[j];
    b = *Image::Create(a.shape(), mix, "b");
    EXPECT_NEAR(*Ssim(a, b), ReferenceSsim(a, b), 1e-12);
    EXPECT_NEAR(*Ssim(a, b), *Ssim(b, a), 1e-15);
  }
}

TEST(SsimTest, WindowIsNormalizedAndSymmetric) {
  const auto w = SsimWindow();
  double sum = 0.0;
  for (double v : w) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-15);
  EXPECT_EQ(w[0], w[kSsimWindow * kSsimWindow - 1]);
  EXPECT_GT(w[60], w[59]);
}

TEST(SsimTest, RejectsSmallOrMismatchedImages) {
  EXPECT_TRUE(IsArgumentError(Ssim(Gray({10, 20}, 0), Gray({10, 20}, 0)).status()));
  EXPECT_TRUE(IsArgumentError(Ssim(Gray({12, 12}, 0), Gray({12, 13}, 0)).status()));
}

// ---------------------------------------------------------------------------
// Relative reduction

struct ReductionCase {
  double ori;
  double pro;
  double expected;
};

class RelativeReductionTest : public ::testing::TestWithParam<ReductionCase> {};

TEST_P(RelativeReductionTest, MatchesAttributeTable) {
  const ReductionCase& c = GetParam();
  const auto r = RelativeReduction(c.ori, c.pro);
  ASSERT_TRUE(r.has_value());
  EXPECT_DOUBLE_EQ(*r, c.expected) << c.ori << " -> " << c.pro;
}

// The location cell without a person evaluates to 80.16, which rounds to 80.2.
INSTANTIATE_TEST_SUITE_P(
    AttributeCells, RelativeReductionTest,
    ::testing::Values(ReductionCase{99.36, 13.55, 86.4}, ReductionCase{87.65, 17.39, 80.2},
                      ReductionCase{100.00, 13.95, 86.1}, ReductionCase{93.15, 31.51, 66.2},
                      ReductionCase{94.12, 23.53, 75.0}, ReductionCase{98.14, 18.52, 81.1},
                      ReductionCase{97.08, 14.76, 84.8}, ReductionCase{76.60, 10.64, 86.1},
                      ReductionCase{96.69, 20.30, 79.0}, ReductionCase{88.78, 21.92, 75.3},
                      ReductionCase{100.00, 10.91, 89.1}, ReductionCase{100.00, 32.29, 67.7},
                      ReductionCase{90.07, 18.79, 79.1}, ReductionCase{100.00, 36.00, 64.0}));

TEST(RelativeReductionEdgeTest, Degenerate) {
  EXPECT_EQ(RelativeReduction(42.0, 42.0), 0.0);
  EXPECT_FALSE(RelativeReduction(0.0, 10.0).has_value());
  EXPECT_FALSE(RelativeReduction(-1.0, 0.0).has_value());
  EXPECT_EQ(RelativeReduction(50.0, 0.0), 100.0);
  EXPECT_EQ(RelativeReduction(50.0, 75.0), -50.0);
}

TEST(RoundDecimalTest, HalfAwayFromZero) {
  EXPECT_EQ(RoundDecimal(0.125, 2), 0.13);
  EXPECT_EQ(RoundDecimal(2.675, 2), 2.68);
  EXPECT_EQ(RoundDecimal(-1.25, 1), -1.3);
  EXPECT_EQ(RoundDecimal(1.04999, 1), 1.0);
  EXPECT_EQ(RoundDecimal(7.0, 0), 7.0);
}

// ---------------------------------------------------------------------------
// Transfer matrix

TEST(TransferMatrixTest, SingleFullyRefusedScorer) {
  TextScorer scorer;
  const Image img = Gray({2, 2}, 0.5);
  const std::vector<Question> qs = {AskPrivate("r1"), AskPrivate("r2")};
  const std::vector<const Scorer*> scorers = {&scorer};
  const auto m = ComputeTransferMatrix(scorers, {{"text", PairsFor(img, qs)}},
                                       std::vector<std::string>{"unknown"});
  ASSERT_TRUE(m.ok()) << m.status();
  EXPECT_EQ(m->source_models, std::vector<std::string>{"text"});
  EXPECT_EQ(m->entries, (std::vector<std::vector<double>>{{0.0}}));
}

TEST(TransferMatrixTest, DiagonalMatchesDirectAnswerRate) {
  auto a = *MakeToyScorer(11, DefaultToyVocabulary(), kDefaultEmbeddingDim);
  auto b = *MakeToyScorer(12, DefaultToyVocabulary(), kDefaultEmbeddingDim);
  std::vector<Image> images;
  for (int i = 0; i < 4; ++i) images.push_back(RandomImage({16, 16}, 900 + i));
  const std::vector<Question> qs = {AskPrivate("where is this?"),
                                    AskPrivate("how old are they?", Attribute::kAGE)};
  std::vector<EvalPair> pa, pb;
  for (int i = 0; i < 4; ++i) {
    for (const Question& q : qs) {
      (i < 2 ? pa : pb).push_back({&images[static_cast<std::size_t>(i)], &q});
    }
  }
  const std::vector<const Scorer*> scorers = {a.get(), b.get()};
  const auto m = ComputeTransferMatrix(scorers, {{a->label(), pa}, {b->label(), pb}},
                                       DefaultRefusalTerms());
  ASSERT_TRUE(m.ok()) << m.status();
  ASSERT_EQ(m->entries.size(), 2u);
  const auto ra = *RefusalSet::FromTerms(*a, DefaultRefusalTerms());
  const auto rb = *RefusalSet::FromTerms(*b, DefaultRefusalTerms());
  EXPECT_EQ(m->entries[0][0], AnswerRate(*a, pa, ra)->rate);
  EXPECT_EQ(m->entries[1][1], AnswerRate(*b, pb, rb)->rate);
  EXPECT_EQ(m->entries[0][1], AnswerRate(*b, pa, rb)->rate);
  EXPECT_EQ(m->entries[1][0], AnswerRate(*a, pb, ra)->rate);
}

TEST(TransferMatrixTest, LabelMismatchIsRejected) {
  TextScorer scorer;
  const Image img = Gray({2, 2}, 0.5);
  const std::vector<Question> qs = {AskPrivate("a")};
  const std::vector<const Scorer*> scorers = {&scorer};
  EXPECT_TRUE(IsArgumentError(
      ComputeTransferMatrix(scorers, {{"other", PairsFor(img, qs)}},
                            std::vector<std::string>{"unknown"})
          .status()));
  EXPECT_TRUE(IsArgumentError(
      ComputeTransferMatrix(scorers, {}, std::vector<std::string>{"unknown"}).status()));
}

}  // namespace
}  // namespace privshield
