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

#include "privshield/image_io.h"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <csetjmp>
#include <fstream>
#include <memory>

#include "absl/strings/str_cat.h"
#include "privshield/status.h"

namespace privshield {
namespace {

std::uint8_t ToByte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

absl::StatusOr<Image> FromBytes(int height, int width,
                                const std::vector<std::uint8_t>& rgb,
                                std::string id) {
  std::vector<double> values(rgb.size());
  for (std::size_t i = 0; i < rgb.size(); ++i) values[i] = rgb[i] / 255.0;
  return Image::Create({height, width}, std::move(values), std::move(id));
}

absl::StatusOr<Image> LoadPng(const std::filesystem::path& path,
                              std::string id) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    return DataError(absl::StrCat("cannot read PNG ", path.string(), ": ",
                                  png.message));
  }
  png.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    png_image_free(&png);
    return DataError(absl::StrCat("cannot decode PNG ", path.string(), ": ",
                                  png.message));
  }
  return FromBytes(static_cast<int>(png.height), static_cast<int>(png.width),
                   buffer, std::move(id));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void JpegErrorExit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

absl::StatusOr<Image> LoadJpeg(const std::filesystem::path& path,
                               std::string id) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "rb"),
                                             &std::fclose);
  if (!file) return DataError(absl::StrCat("cannot open ", path.string()));

  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = &JpegErrorExit;
  // Nothing with a destructor may be live between setjmp and longjmp.
  std::vector<std::uint8_t> rgb;
  int height = 0;
  int width = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return DataError(absl::StrCat("cannot decode JPEG ", path.string(), ": ",
                                  err.message));
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  height = static_cast<int>(cinfo.output_height);
  width = static_cast<int>(cinfo.output_width);
  rgb.resize(static_cast<std::size_t>(height) * width * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) *
                                    width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return FromBytes(height, width, rgb, std::move(id));
}

}  // namespace

absl::StatusOr<Image> LoadImage(const std::filesystem::path& path,
                                std::string id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("missing image file ", path.string()));
  unsigned char magic[8] = {};
  in.read(reinterpret_cast<char*>(magic), sizeof(magic));
  if (in.gcount() >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
    return LoadPng(path, std::move(id));
  }
  if (in.gcount() >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 &&
      magic[2] == 0xFF) {
    return LoadJpeg(path, std::move(id));
  }
  return DataError(absl::StrCat(path.string(), ": not a PNG or JPEG file"));
}

absl::StatusOr<std::vector<std::uint8_t>> EncodePng(const Image& image) {
  std::vector<std::uint8_t> rgb(image.values().size());
  for (std::size_t i = 0; i < rgb.size(); ++i) rgb[i] = ToByte(image.values()[i]);

  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, rgb.data(), 0,
                                 nullptr)) {
    return DataError(absl::StrCat("PNG size query failed: ", png.message));
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, rgb.data(), 0,
                                 nullptr)) {
    return DataError(absl::StrCat("PNG encode failed: ", png.message));
  }
  out.resize(size);
  return out;
}

absl::Status SavePng(const Image& image, const std::filesystem::path& path) {
  ASSIGN_OR_RETURN(std::vector<std::uint8_t> bytes, EncodePng(image));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return DataError(absl::StrCat("cannot write ", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) return DataError(absl::StrCat("write failed for ", path.string()));
  return absl::OkStatus();
}

Image QuantizeTo8Bit(const Image& image) {
  std::vector<double> values(image.values().begin(), image.values().end());
  for (double& v : values) v = ToByte(v) / 255.0;
  return Image::FromClampedValues(image.shape(), std::move(values), image.id());
}

}  // namespace privshield
