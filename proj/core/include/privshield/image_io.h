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

#ifndef PRIVSHIELD_IMAGE_IO_H_
#define PRIVSHIELD_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privshield/image.h"

namespace privshield {

// Decodes a PNG or JPEG file (detected by signature) into an RGB image with
// intensities byte / 255. Grayscale, palette, alpha and 16-bit PNGs are
// converted to 8-bit RGB.
absl::StatusOr<Image> LoadImage(const std::filesystem::path& path,
                                std::string id);

// 8-bit RGB PNG. Each value is rounded to the nearest multiple of 1/255.
absl::Status SavePng(const Image& image, const std::filesystem::path& path);
absl::StatusOr<std::vector<std::uint8_t>> EncodePng(const Image& image);

// The image that SavePng followed by LoadImage would produce.
Image QuantizeTo8Bit(const Image& image);

}  // namespace privshield

#endif  // PRIVSHIELD_IMAGE_IO_H_
