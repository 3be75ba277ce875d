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

#include "privshield/report.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace privshield {

std::string FormatPercent(double rate) {
  return absl::StrFormat("%.2f", RoundDecimal(rate, 2));
}

std::string FormatPsnr(double psnr) {
  if (std::isinf(psnr)) return "inf";
  return absl::StrFormat("%.2f", RoundDecimal(psnr, 2));
}

std::string FormatSsim(std::optional<double> ssim) {
  if (!ssim) return "-";
  return absl::StrFormat("%.3f", RoundDecimal(*ssim, 3));
}

std::string AlignColumns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(widths[c] - row[c].size(), ' ');
      if (c == 0) {
        absl::StrAppend(&line, row[c], pad);
      } else {
        absl::StrAppend(&line, "  ", pad, row[c]);
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    absl::StrAppend(&out, line, "\n");
  }
  return out;
}

std::string MethodTableText(const std::vector<MethodRow>& rows) {
  std::vector<std::vector<std::string>> cells = {
      {"Method", "PAR", "NPAR", "PSNR", "SSIM"}};
  for (const MethodRow& r : rows) {
    cells.push_back({r.method, FormatPercent(r.par), FormatPercent(r.npar),
                     FormatPsnr(r.psnr), FormatSsim(r.ssim)});
  }
  return AlignColumns(cells);
}

std::string AttributeTableText(const std::vector<AttributeRow>& rows) {
  auto cell = [](std::optional<double> v) {
    return v ? FormatPercent(*v) : std::string("--");
  };
  auto rel = [](std::optional<double> ori, std::optional<double> pro) {
    if (!ori || !pro) return std::string("--");
    auto r = RelativeReduction(*ori, *pro);
    return r ? absl::StrFormat("%.1f", *r) : std::string("--");
  };
  std::vector<std::vector<std::string>> cells = {
      {"Attr.", "ORI", "PRO", "dRel", "ORI", "PRO", "dRel"}};
  for (const AttributeRow& r : rows) {
    cells.push_back({std::string(AttributeCode(r.attribute)), cell(r.ori_without),
                     cell(r.pro_without), rel(r.ori_without, r.pro_without),
                     cell(r.ori_with), cell(r.pro_with),
                     rel(r.ori_with, r.pro_with)});
  }
  const std::string body = AlignColumns(cells);

  // Group labels right-aligned over their three columns.
  const std::string header = body.substr(0, body.find('\n'));
  const std::size_t first_end = header.find("dRel") + 4;
  const std::size_t second_end = header.size();
  std::string groups(second_end, ' ');
  const std::string kWithout = "Without Person";
  const std::string kWith = "With Person";
  groups.replace(first_end - kWithout.size(), kWithout.size(), kWithout);
  groups.replace(second_end - kWith.size(), kWith.size(), kWith);
  return absl::StrCat(groups, "\n", body);
}

std::string TransferMatrixCsv(const TransferMatrix& matrix) {
  std::string out = "source\\target";
  for (const std::string& t : matrix.target_models) absl::StrAppend(&out, ",", t);
  absl::StrAppend(&out, "\n");
  for (std::size_t s = 0; s < matrix.source_models.size(); ++s) {
    absl::StrAppend(&out, matrix.source_models[s]);
    for (double v : matrix.entries[s]) absl::StrAppend(&out, ",", FormatPercent(v));
    absl::StrAppend(&out, "\n");
  }
  return out;
}

}  // namespace privshield
