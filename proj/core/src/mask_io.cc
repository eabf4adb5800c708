/* Copyright 2026 The SAFit Eval Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "safit/mask_io.h"

#include <png.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

#include <fmt/format.h>

#include "safit/dataset.h"

namespace safit {
namespace {

constexpr char kMagic[8] = {'S', 'A', 'F', 'M', 'A', 'S', 'K', '1'};

static_assert(std::endian::native == std::endian::little,
              "float mask container assumes a little-endian host");

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool EndsWith(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void WriteMaskPng(const std::string& path, const Mask& mask) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw FileError(fmt::format("cannot write '{}'", path));

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw FileError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw FileError("png_create_info_struct failed");
  }

  std::vector<png_byte> row(static_cast<std::size_t>(mask.width()));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw FileError(fmt::format("libpng failed writing '{}'", path));
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(mask.width()),
               static_cast<png_uint_32>(mask.height()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      row[static_cast<std::size_t>(x)] =
          static_cast<png_byte>(std::lround(mask.at(x, y) * 255.0f));
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

Mask ReadMaskPng(const std::string& path, std::int64_t class_id) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw FileError(fmt::format("cannot read PNG '{}': {}", path,
                                image.message));
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    png_image_free(&image);
    throw FileError(fmt::format("cannot decode PNG '{}': {}", path,
                                image.message));
  }
  Mask mask(static_cast<int>(image.width), static_cast<int>(image.height),
            class_id);
  auto values = mask.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<float>(buffer[i]) / 255.0f;
  }
  return mask;
}

void WriteMaskFloat(const std::string& path, const Mask& mask) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError(fmt::format("cannot write '{}'", path));
  const auto width = static_cast<std::uint32_t>(mask.width());
  const auto height = static_cast<std::uint32_t>(mask.height());
  const std::int64_t class_id = mask.class_id();
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(&width), sizeof(width));
  out.write(reinterpret_cast<const char*>(&height), sizeof(height));
  out.write(reinterpret_cast<const char*>(&class_id), sizeof(class_id));
  const auto values = mask.values();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size_bytes()));
  if (!out) throw FileError(fmt::format("failed writing '{}'", path));
}

Mask ReadMaskFloat(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(fmt::format("cannot open '{}'", path));
  char magic[8];
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::int64_t class_id = 0;
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(&width), sizeof(width));
  in.read(reinterpret_cast<char*>(&height), sizeof(height));
  in.read(reinterpret_cast<char*>(&class_id), sizeof(class_id));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FileError(fmt::format("'{}' is not a float mask container", path));
  }
  if (width == 0 || height == 0 || width > (1u << 16) || height > (1u << 16)) {
    throw FileError(fmt::format("'{}' has invalid mask size {}x{}", path,
                                width, height));
  }
  Mask mask(static_cast<int>(width), static_cast<int>(height), class_id);
  auto values = mask.values();
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size_bytes()));
  if (!in) throw FileError(fmt::format("'{}' is truncated", path));
  return mask;
}

Mask ReadMask(const std::string& path, std::int64_t class_id) {
  if (EndsWith(path, ".png")) return ReadMaskPng(path, class_id);
  if (EndsWith(path, ".sfm")) return ReadMaskFloat(path);
  throw FileError(
      fmt::format("'{}': unknown mask extension (expected .png or .sfm)", path));
}

}  // namespace safit
