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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>

#include "absl/strings/str_cat.h"
#include "privshield/parallel.h"
#include "privshield/status.h"

namespace privshield {

absl::StatusOr<AnswerRateReport> AnswerRate(const Scorer& scorer,
                                            std::span<const EvalPair> pairs,
                                            const RefusalSet& refusal,
                                            int workers) {
  if (pairs.empty()) return ArgumentError("answer rate over zero questions");
  const QuestionKind kind = pairs.front().question->kind;
  for (const EvalPair& p : pairs) {
    if (p.question->kind != kind) {
      return ArgumentError("answer rate over mixed privacy and non-privacy questions");
    }
  }

  std::vector<absl::StatusOr<bool>> refused(pairs.size(), false);
  ParallelFor(pairs.size(), workers, [&](std::size_t i) {
    refused[i] = Refuses(scorer, *pairs[i].image, *pairs[i].question, refusal);
  });

  AnswerRateReport report;
  report.kind = kind;
  report.denominator = static_cast<int>(pairs.size());
  std::map<Attribute, std::pair<int, int>> per_attribute;  // answered, total
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!refused[i].ok()) return refused[i].status();
    const bool answered = !*refused[i];
    report.numerator += answered ? 1 : 0;
    const Question& q = *pairs[i].question;
    if (q.is_privacy() && q.attribute) {
      auto& [answered_count, total] = per_attribute[*q.attribute];
      answered_count += answered ? 1 : 0;
      ++total;
    }
  }
  report.rate = 100.0 * report.numerator / report.denominator;
  for (const auto& [attribute, counts] : per_attribute) {
    report.breakdown[attribute] = 100.0 * counts.first / counts.second;
  }
  return report;
}

absl::StatusOr<double> Psnr(const Image& a, const Image& b) {
  if (a.shape() != b.shape()) {
    return ArgumentError(absl::StrCat("PSNR shape mismatch: ", ToString(a.shape()),
                                      " vs ", ToString(b.shape())));
  }
  const auto av = a.values();
  const auto bv = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double d = av[i] - bv[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(av.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

namespace {

std::array<double, kSsimWindow> GaussianKernel1d() {
  std::array<double, kSsimWindow> k{};
  double sum = 0.0;
  const int half = kSsimWindow / 2;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double x = i - half;
    k[static_cast<std::size_t>(i)] = std::exp(-x * x / (2.0 * kSsimSigma * kSsimSigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Valid-mode separable filtering of an h x w plane.
std::vector<double> FilterValid(const std::vector<double>& plane, int h, int w,
                                const std::array<double, kSsimWindow>& k) {
  const int ow = w - kSsimWindow + 1;
  const int oh = h - kSsimWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < kSsimWindow; ++i) {
        s += k[static_cast<std::size_t>(i)] *
             plane[static_cast<std::size_t>(y) * w + x + i];
      }
      rows[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int i = 0; i < kSsimWindow; ++i) {
        s += k[static_cast<std::size_t>(i)] *
             rows[static_cast<std::size_t>(y + i) * ow + x];
      }
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  }
  return out;
}

}  // namespace

std::array<double, kSsimWindow * kSsimWindow> SsimWindow() {
  const auto k = GaussianKernel1d();
  std::array<double, kSsimWindow * kSsimWindow> w{};
  for (int y = 0; y < kSsimWindow; ++y) {
    for (int x = 0; x < kSsimWindow; ++x) {
      w[static_cast<std::size_t>(y * kSsimWindow + x)] =
          k[static_cast<std::size_t>(y)] * k[static_cast<std::size_t>(x)];
    }
  }
  return w;
}

absl::StatusOr<double> Ssim(const Image& a, const Image& b) {
  if (a.shape() != b.shape()) {
    return ArgumentError(absl::StrCat("SSIM shape mismatch: ", ToString(a.shape()),
                                      " vs ", ToString(b.shape())));
  }
  const int h = a.height();
  const int w = a.width();
  if (std::min(h, w) < kSsimWindow) {
    return ArgumentError(absl::StrCat("image ", ToString(a.shape()),
                                      " is smaller than the SSIM window"));
  }
  const auto kernel = GaussianKernel1d();
  const double c1 = (kSsimK1 * 1.0) * (kSsimK1 * 1.0);
  const double c2 = (kSsimK2 * 1.0) * (kSsimK2 * 1.0);
  const std::size_t n = static_cast<std::size_t>(h) * w;

  double channel_sum = 0.0;
  for (int c = 0; c < ImageShape::kChannels; ++c) {
    std::vector<double> pa(n), pb(n), paa(n), pbb(n), pab(n);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        pa[i] = a.at(y, x, c);
        pb[i] = b.at(y, x, c);
        paa[i] = pa[i] * pa[i];
        pbb[i] = pb[i] * pb[i];
        pab[i] = pa[i] * pb[i];
      }
    }
    const auto mu_a = FilterValid(pa, h, w, kernel);
    const auto mu_b = FilterValid(pb, h, w, kernel);
    const auto e_aa = FilterValid(paa, h, w, kernel);
    const auto e_bb = FilterValid(pbb, h, w, kernel);
    const auto e_ab = FilterValid(pab, h, w, kernel);
    double map_sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
      const double ma = mu_a[i];
      const double mb = mu_b[i];
      const double var_a = e_aa[i] - ma * ma;
      const double var_b = e_bb[i] - mb * mb;
      const double cov = e_ab[i] - ma * mb;
      map_sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
                 ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
    }
    channel_sum += map_sum / static_cast<double>(mu_a.size());
  }
  return channel_sum / ImageShape::kChannels;
}

double RoundDecimal(double value, int decimals) {
  if (!std::isfinite(value)) return value;
  // Shortest round-trip decimal, then half-up on the digit string.
  char buf[400];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), std::abs(value),
                                 std::chars_format::fixed);
  if (ec != std::errc()) return value;
  std::string digits(buf, end);
  const std::size_t dot = digits.find('.');
  std::string int_part = dot == std::string::npos ? digits : digits.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : digits.substr(dot + 1);
  frac.resize(static_cast<std::size_t>(decimals) + 1, '0');
  const bool round_up = frac.back() >= '5';
  frac.pop_back();
  std::string all = int_part + frac;
  if (round_up) {
    int i = static_cast<int>(all.size()) - 1;
    while (i >= 0 && all[static_cast<std::size_t>(i)] == '9') {
      all[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      all.insert(all.begin(), '1');
    } else {
      ++all[static_cast<std::size_t>(i)];
    }
  }
  const std::string text = all.substr(0, all.size() - frac.size()) + "." +
                           all.substr(all.size() - frac.size());
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return value < 0 ? -out : out;
}

std::optional<double> RelativeReduction(double ori, double pro) {
  // Exact rational arithmetic on hundredths of a percent.
  const std::int64_t o = std::llround(ori * 100.0);
  const std::int64_t p = std::llround(pro * 100.0);
  if (o <= 0) return std::nullopt;
  const std::int64_t num = (o - p) * 1000;  // tenths of a percent, times o
  const std::int64_t mag = num >= 0 ? num : -num;
  const std::int64_t tenths = (2 * mag + o) / (2 * o);
  return (num >= 0 ? tenths : -tenths) / 10.0;
}

absl::StatusOr<TransferMatrix> ComputeTransferMatrix(
    std::span<const Scorer* const> scorers,
    const std::map<std::string, std::vector<EvalPair>>& protected_sets,
    std::span<const std::string> refusal_terms, int workers) {
  if (scorers.empty()) return ArgumentError("transfer matrix needs a scorer");
  TransferMatrix matrix;
  std::vector<RefusalSet> refusals;
  for (const Scorer* s : scorers) {
    matrix.target_models.push_back(s->label());
    ASSIGN_OR_RETURN(RefusalSet r, RefusalSet::FromTerms(*s, refusal_terms));
    refusals.push_back(std::move(r));
  }
  if (protected_sets.size() != scorers.size()) {
    return ArgumentError(absl::StrCat(protected_sets.size(),
                                      " protected sets for ", scorers.size(),
                                      " scorers"));
  }
  for (const Scorer* source : scorers) {
    auto it = protected_sets.find(source->label());
    if (it == protected_sets.end()) {
      return ArgumentError(absl::StrCat("no protected set labelled ",
                                        source->label()));
    }
    matrix.source_models.push_back(source->label());
    std::vector<double> row;
    for (std::size_t t = 0; t < scorers.size(); ++t) {
      ASSIGN_OR_RETURN(AnswerRateReport r,
                       AnswerRate(*scorers[t], it->second, refusals[t], workers));
      if (r.kind != QuestionKind::kPrivacy) {
        return ArgumentError("transfer matrices are computed over privacy questions");
      }
      row.push_back(r.rate);
    }
    matrix.entries.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace privshield
