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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "privshield/metrics.h"
#include "privshield/status.h"

namespace privshield {
namespace {

using ItemMap = std::map<std::string, AttributeSet>;

bool RoundsTo(double value, double target) {
  return std::round(value * 100.0) == std::round(target * 100.0);
}

TEST(AnnotationAgreementTest, PerfectAgreement) {
  const ItemMap gold = {{"a", {Attribute::kAGE, Attribute::kSEX}},
                        {"b", {Attribute::kLOC}},
                        {"c", {}},
                        {"d", {Attribute::kSEX, Attribute::kINC, Attribute::kMAR}}};
  const auto r = AnnotationAgreement(gold, gold);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->mean_precision, 1.0);
  EXPECT_EQ(r->mean_recall, 1.0);
  EXPECT_EQ(r->mean_f1, 1.0);
  for (Attribute a : {Attribute::kAGE, Attribute::kSEX, Attribute::kLOC,
                      Attribute::kINC, Attribute::kMAR}) {
    EXPECT_EQ(r->per_attribute.at(a).f1, 1.0) << AttributeCode(a);
  }
}

TEST(AnnotationAgreementTest, EmptyPredictionsHaveZeroRecall) {
  const ItemMap gold = {{"a", {Attribute::kOCC}}, {"b", {Attribute::kOCC, Attribute::kHEA}}};
  const ItemMap predicted = {{"a", {}}, {"b", {}}};
  const auto r = AnnotationAgreement(predicted, gold);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->per_attribute.at(Attribute::kOCC).recall, 0.0);
  EXPECT_EQ(r->per_attribute.at(Attribute::kOCC).false_negatives, 2);
  EXPECT_EQ(r->per_attribute.at(Attribute::kHEA).recall, 0.0);
  EXPECT_EQ(r->mean_recall, 0.0);
}

TEST(AnnotationAgreementTest, UnusedAttributesAreAbsent) {
  const ItemMap gold = {{"a", {Attribute::kSCH}}};
  const auto r = AnnotationAgreement(gold, gold);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->per_attribute.at(Attribute::kAGE).precision.has_value());
  EXPECT_FALSE(r->per_attribute.at(Attribute::kAGE).f1.has_value());
  EXPECT_TRUE(r->per_attribute.at(Attribute::kSCH).precision.has_value());
}

TEST(AnnotationAgreementTest, MismatchedItemsAreRejected) {
  EXPECT_TRUE(IsArgumentError(
      AnnotationAgreement({{"a", {}}}, {{"a", {}}, {"b", {}}}).status()));
  EXPECT_TRUE(IsArgumentError(AnnotationAgreement({{"a", {}}}, {{"b", {}}}).status()));
}

TEST(AnnotationAgreementTest, ReliabilityFixtureMeans) {
  struct Reported {
    Attribute attribute;
    double precision, recall, f1;
  };
  const std::vector<Reported> table = {
      {Attribute::kAGE, 0.96, 0.76, 0.85}, {Attribute::kSEX, 0.92, 0.72, 0.80},
      {Attribute::kSCH, 0.88, 0.93, 0.90}, {Attribute::kOCC, 0.91, 0.89, 0.90},
      {Attribute::kLOC, 0.86, 0.91, 0.88}, {Attribute::kINC, 0.96, 0.92, 0.94},
      {Attribute::kHEA, 0.87, 0.90, 0.89}, {Attribute::kMAR, 0.74, 0.87, 0.80}};

  // Smallest (tp, fp, fn) per attribute whose P, R and F1 round to the
  // reference two-decimal values.
  ItemMap predicted, gold;
  int next_item = 0;
  auto add = [&](Attribute a, bool p, bool g) {
    const std::string id = "item" + std::to_string(next_item++);
    predicted[id] = p ? AttributeSet{a} : AttributeSet{};
    gold[id] = g ? AttributeSet{a} : AttributeSet{};
  };
  for (const Reported& row : table) {
    int best_tp = -1, best_fp = 0, best_fn = 0;
    for (int total = 1; total <= 80 && best_tp < 0; ++total) {
      for (int tp = 1; tp <= total && best_tp < 0; ++tp) {
        for (int fp = 0; tp + fp <= total; ++fp) {
          const int fn = total - tp - fp;
          const double p = static_cast<double>(tp) / (tp + fp);
          const double r = static_cast<double>(tp) / (tp + fn);
          if (RoundsTo(p, row.precision) && RoundsTo(r, row.recall) &&
              RoundsTo(2 * p * r / (p + r), row.f1)) {
            best_tp = tp;
            best_fp = fp;
            best_fn = fn;
            break;
          }
        }
      }
    }
    ASSERT_GT(best_tp, 0) << AttributeCode(row.attribute);
    for (int i = 0; i < best_tp; ++i) add(row.attribute, true, true);
    for (int i = 0; i < best_fp; ++i) add(row.attribute, true, false);
    for (int i = 0; i < best_fn; ++i) add(row.attribute, false, true);
  }

  const auto r = AnnotationAgreement(predicted, gold);
  ASSERT_TRUE(r.ok());
  for (const Reported& row : table) {
    const AttributeAgreement& m = r->per_attribute.at(row.attribute);
    EXPECT_TRUE(RoundsTo(*m.precision, row.precision)) << AttributeCode(row.attribute);
    EXPECT_TRUE(RoundsTo(*m.recall, row.recall)) << AttributeCode(row.attribute);
    EXPECT_TRUE(RoundsTo(*m.f1, row.f1)) << AttributeCode(row.attribute);
  }
  EXPECT_TRUE(RoundsTo(*r->mean_precision, 0.89)) << *r->mean_precision;
  EXPECT_TRUE(RoundsTo(*r->mean_recall, 0.86)) << *r->mean_recall;
  EXPECT_TRUE(RoundsTo(*r->mean_f1, 0.87)) << *r->mean_f1;
}

TEST(AnnotationAgreementTest, ItemOrderDoesNotMatter) {
  std::mt19937_64 rng(5);
  std::vector<std::pair<AttributeSet, AttributeSet>> items;
  for (int i = 0; i < 40; ++i) {
    AttributeSet p, g;
    for (Attribute a : kAllAttributes) {
      if (rng() % 3 == 0) p.insert(a);
      if (rng() % 3 == 0) g.insert(a);
    }
    items.push_back({p, g});
  }
  auto build = [&](const std::vector<int>& order) {
    ItemMap predicted, gold;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::string id = "x" + std::to_string(1000 + k);
      predicted[id] = items[static_cast<std::size_t>(order[k])].first;
      gold[id] = items[static_cast<std::size_t>(order[k])].second;
    }
    return *AnnotationAgreement(predicted, gold);
  };
  std::vector<int> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  const AgreementReport base = build(order);
  std::shuffle(order.begin(), order.end(), rng);
  const AgreementReport shuffled = build(order);
  EXPECT_EQ(base.mean_precision, shuffled.mean_precision);
  EXPECT_EQ(base.mean_recall, shuffled.mean_recall);
  EXPECT_EQ(base.mean_f1, shuffled.mean_f1);
  for (Attribute a : kAllAttributes) {
    EXPECT_EQ(base.per_attribute.at(a).true_positives,
              shuffled.per_attribute.at(a).true_positives);
  }
}

// ---------------------------------------------------------------------------
// Strength confusion

TEST(StrengthConfusionTest, IdentityOverOccurringLevels) {
  const std::vector<Strength> labels = {Strength::kWeak, Strength::kStrong,
                                        Strength::kStrong, Strength::kVeryStrong};
  const auto m = ComputeStrengthConfusion(labels, labels);
  ASSERT_TRUE(m.ok());
  for (std::size_t g = 0; g < kAllStrengths.size(); ++g) {
    const bool occurs = std::count(labels.begin(), labels.end(), kAllStrengths[g]) > 0;
    ASSERT_EQ((*m)[g].has_value(), occurs);
    if (!occurs) continue;
    for (std::size_t p = 0; p < kAllStrengths.size(); ++p) {
      EXPECT_EQ((*(*m)[g])[p], g == p ? 1.0 : 0.0);
    }
  }
}

TEST(StrengthConfusionTest, ConstantPredictionFillsOneColumn) {
  const std::vector<Strength> gold = {Strength::kVeryWeak, Strength::kMedium,
                                      Strength::kMedium, Strength::kStrong};
  const std::vector<Strength> predicted(gold.size(), Strength::kWeak);
  const auto m = ComputeStrengthConfusion(predicted, gold);
  ASSERT_TRUE(m.ok());
  for (const auto& row : *m) {
    if (!row) continue;
    EXPECT_EQ((*row)[1], 1.0);
  }
}

TEST(StrengthConfusionTest, RowsSumToOne) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    std::vector<Strength> p(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = kAllStrengths[rng() % kAllStrengths.size()];
      g[i] = kAllStrengths[rng() % kAllStrengths.size()];
    }
    const auto m = ComputeStrengthConfusion(p, g);
    ASSERT_TRUE(m.ok());
    for (const auto& row : *m) {
      if (!row) continue;
      double sum = 0.0;
      for (double v : *row) sum += v;
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(StrengthConfusionTest, LengthMismatch) {
  const std::vector<Strength> a = {Strength::kWeak};
  const std::vector<Strength> b = {Strength::kWeak, Strength::kMedium};
  EXPECT_TRUE(IsArgumentError(ComputeStrengthConfusion(a, b).status()));
}

}  // namespace
}  // namespace privshield
