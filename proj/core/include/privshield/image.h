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

#ifndef PRIVSHIELD_IMAGE_H_
#define PRIVSHIELD_IMAGE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace privshield {

// Height x width x 3, row-major, channel fastest.
struct ImageShape {
  static constexpr int kChannels = 3;

  int height = 0;
  int width = 0;

  std::size_t num_values() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
           kChannels;
  }
  std::size_t offset(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
            static_cast<std::size_t>(x)) *
               kChannels +
           static_cast<std::size_t>(c);
  }
  bool operator==(const ImageShape&) const = default;
};

std::string ToString(const ImageShape& shape);

// Unconstrained per-pixel field with image layout. Used for gradients and
// sign fields.
class PixelField {
 public:
  PixelField() = default;
  explicit PixelField(ImageShape shape, double fill = 0.0);
  // `values.size()` must equal `shape.num_values()`.
  PixelField(ImageShape shape, std::vector<double> values);

  const ImageShape& shape() const { return shape_; }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  double at(int y, int x, int c) const { return values_[shape_.offset(y, x, c)]; }
  double& at(int y, int x, int c) { return values_[shape_.offset(y, x, c)]; }

  double L2Norm() const;

  PixelField& operator+=(const PixelField& other);
  PixelField& operator*=(double factor);
  friend PixelField operator-(const PixelField& a, const PixelField& b);

  bool operator==(const PixelField&) const = default;

 private:
  ImageShape shape_;
  std::vector<double> values_;
};

// An RGB image with every intensity in [0,1].
class Image {
 public:
  Image() = default;

  // Validates positive dimensions, value count and range.
  static absl::StatusOr<Image> Create(ImageShape shape,
                                      std::vector<double> values,
                                      std::string id);
  static absl::StatusOr<Image> Filled(ImageShape shape, double value,
                                      std::string id);
  // Clamps every value into [0,1]. `values.size()` must match `shape`.
  static Image FromClampedValues(ImageShape shape, std::vector<double> values,
                                 std::string id);

  const ImageShape& shape() const { return shape_; }
  int height() const { return shape_.height; }
  int width() const { return shape_.width; }
  const std::string& id() const { return id_; }
  std::span<const double> values() const { return values_; }
  double at(int y, int x, int c) const { return values_[shape_.offset(y, x, c)]; }

  Image WithId(std::string id) const;

  bool operator==(const Image&) const = default;

 private:
  Image(ImageShape shape, std::vector<double> values, std::string id)
      : shape_(shape), values_(std::move(values)), id_(std::move(id)) {}

  ImageShape shape_;
  std::vector<double> values_;
  std::string id_;
};

// max |a - b| over all values. Shapes must match.
absl::StatusOr<double> LinfDistance(const Image& a, const Image& b);

}  // namespace privshield

#endif  // PRIVSHIELD_IMAGE_H_
