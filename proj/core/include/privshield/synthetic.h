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

#ifndef PRIVSHIELD_SYNTHETIC_H_
#define PRIVSHIELD_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privshield/dataset.h"
#include "privshield/image.h"
#include "privshield/templates.h"

namespace privshield {

// Procedural stand-in for a privacy VQA benchmark: smooth colored images with
// blobs, plausible privacy tuples, template-generated privacy questions,
// VQA-style non-privacy questions and a paraphrase table. Images are already
// 8-bit quantized, so they survive a PNG round trip unchanged.
struct SyntheticOptions {
  int count = 12;
  int size = 32;
  std::uint64_t seed = 1;
};

struct SyntheticDataset {
  std::vector<ImageEntry> entries;
  std::vector<Image> images;  // parallel to entries
  VariantTable paraphrases;
};

absl::StatusOr<SyntheticDataset> GenerateSyntheticDataset(
    const SyntheticOptions& options, const TemplateTable& templates);

// images/<id>.png, manifest.json and paraphrases.json under `dir`.
absl::Status WriteDataset(const std::filesystem::path& dir,
                          const SyntheticDataset& dataset);

}  // namespace privshield

#endif  // PRIVSHIELD_SYNTHETIC_H_
