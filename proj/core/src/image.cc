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

#include "privshield/image.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "privshield/status.h"

namespace privshield {

std::string ToString(const ImageShape& shape) {
  return absl::StrCat(shape.height, "x", shape.width, "x",
                      ImageShape::kChannels);
}

PixelField::PixelField(ImageShape shape, double fill)
    : shape_(shape), values_(shape.num_values(), fill) {}

PixelField::PixelField(ImageShape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  assert(values_.size() == shape_.num_values());
}

double PixelField::L2Norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

PixelField& PixelField::operator+=(const PixelField& other) {
  assert(shape_ == other.shape_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

PixelField& PixelField::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

PixelField operator-(const PixelField& a, const PixelField& b) {
  assert(a.shape_ == b.shape_);
  PixelField out = a;
  for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] -= b.values_[i];
  return out;
}

absl::StatusOr<Image> Image::Create(ImageShape shape, std::vector<double> values,
                                    std::string id) {
  if (shape.height <= 0 || shape.width <= 0) {
    return ArgumentError(
        absl::StrCat("image ", id, ": non-positive shape ", ToString(shape)));
  }
  if (values.size() != shape.num_values()) {
    return ArgumentError(absl::StrCat("image ", id, ": expected ",
                                      shape.num_values(), " values, got ",
                                      values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      return ArgumentError(absl::StrCat("image ", id, ": value ", v,
                                        " at index ", i, " outside [0,1]"));
    }
  }
  return Image(shape, std::move(values), std::move(id));
}

absl::StatusOr<Image> Image::Filled(ImageShape shape, double value,
                                    std::string id) {
  if (shape.height <= 0 || shape.width <= 0) {
    return ArgumentError(absl::StrCat("non-positive shape ", ToString(shape)));
  }
  return Create(shape, std::vector<double>(shape.num_values(), value),
                std::move(id));
}

Image Image::FromClampedValues(ImageShape shape, std::vector<double> values,
                               std::string id) {
  assert(values.size() == shape.num_values());
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  return Image(shape, std::move(values), std::move(id));
}

Image Image::WithId(std::string id) const {
  Image copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

absl::StatusOr<double> LinfDistance(const Image& a, const Image& b) {
  if (a.shape() != b.shape()) {
    return ArgumentError(absl::StrCat("shape mismatch: ", ToString(a.shape()),
                                      " vs ", ToString(b.shape())));
  }
  double worst = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    worst = std::max(worst, std::abs(av[i] - bv[i]));
  }
  return worst;
}

}  // namespace privshield
