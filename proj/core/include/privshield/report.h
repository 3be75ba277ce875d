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

#ifndef PRIVSHIELD_REPORT_H_
#define PRIVSHIELD_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "privshield/metrics.h"
#include "privshield/question.h"

namespace privshield {

// Percentages at two decimals.
std::string FormatPercent(double rate);
// "inf" for infinite PSNR, two decimals otherwise.
std::string FormatPsnr(double psnr);
// Three decimals, "-" when absent.
std::string FormatSsim(std::optional<double> ssim);

// One line of the method comparison table.
struct MethodRow {
  std::string method;
  double par = 0.0;
  double npar = 0.0;
  double psnr = 0.0;
  std::optional<double> ssim;
};

// Aligned columns: Method, PAR, NPAR, PSNR, SSIM.
std::string MethodTableText(const std::vector<MethodRow>& rows);

// Per-attribute PAR before (ORI) and after (PRO) protection, split by person
// presence.
struct AttributeRow {
  Attribute attribute = Attribute::kSCH;
  std::optional<double> ori_without, pro_without;
  std::optional<double> ori_with, pro_with;
};

// Aligned columns: Attr., then ORI, PRO, dRel for Without Person and With
// Person. Missing cells print "--".
std::string AttributeTableText(const std::vector<AttributeRow>& rows);

// Header "source\target,<targets...>", one row per source.
std::string TransferMatrixCsv(const TransferMatrix& matrix);

// Pads every column to its widest cell; first column left-aligned, the rest
// right-aligned.
std::string AlignColumns(const std::vector<std::vector<std::string>>& rows);

}  // namespace privshield

#endif  // PRIVSHIELD_REPORT_H_
