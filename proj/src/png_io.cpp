/*
 * Copyright 2025 The segfuse authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "segfuse/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <string>

#include "segfuse/errors.hpp"

namespace segfuse {

namespace {

struct FileGuard {
  std::FILE* fp = nullptr;
  ~FileGuard() {
    if (fp) std::fclose(fp);
  }
};

// Quiet handlers: capture the message for the thrown IoError instead of
// letting libpng print to stderr.
void capture_error(png_structp png, png_const_charp message) {
  auto* sink = static_cast<std::string*>(png_get_error_ptr(png));
  if (sink && message) *sink = message;
  png_longjmp(png, 1);
}

void drop_warning(png_structp, png_const_charp) {}

struct ReadGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~ReadGuard() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct WriteGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~WriteGuard() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

// Decodes into an interleaved 8-bit buffer. strict_gray forbids every
// transform: label maps must arrive exactly as written, since palette
// expansion or sub-byte gray scaling would corrupt class indices.
ImageBuffer read_png(const std::filesystem::path& path, bool strict_gray) {
  FileGuard file;
  file.fp = std::fopen(path.c_str(), "rb");
  if (!file.fp) {
    throw IoError("cannot open PNG: " + path.string());
  }
  std::string error_message;
  ReadGuard g;
  g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_message, capture_error,
                                 drop_warning);
  if (g.png) g.info = png_create_info_struct(g.png);
  if (!g.png || !g.info) {
    throw IoError("libpng setup failed for " + path.string());
  }
  if (setjmp(png_jmpbuf(g.png))) {
    throw IoError("failed to decode PNG " + path.string() + ": " + error_message);
  }
  png_init_io(g.png, file.fp);

  int transforms = PNG_TRANSFORM_IDENTITY;
  if (!strict_gray) {
    transforms = PNG_TRANSFORM_STRIP_16 | PNG_TRANSFORM_STRIP_ALPHA | PNG_TRANSFORM_EXPAND;
  }
  png_read_png(g.png, g.info, transforms, nullptr);

  const png_uint_32 width = png_get_image_width(g.png, g.info);
  const png_uint_32 height = png_get_image_height(g.png, g.info);
  const int bit_depth = png_get_bit_depth(g.png, g.info);
  const int channels = png_get_channels(g.png, g.info);
  const int color_type = png_get_color_type(g.png, g.info);

  if (bit_depth != 8) {
    throw IoError(path.string() + ": expected 8-bit depth, got " + std::to_string(bit_depth));
  }
  if (strict_gray && (color_type != PNG_COLOR_TYPE_GRAY || channels != 1)) {
    throw IoError(path.string() + ": label maps must be single-channel 8-bit grayscale");
  }
  if (channels != 1 && channels != 3) {
    throw IoError(path.string() + ": expected 1 or 3 channels after decode, got " +
                  std::to_string(channels));
  }

  ImageBuffer img;
  img.channels = channels;
  img.pixels.resize(static_cast<Eigen::Index>(height),
                    static_cast<Eigen::Index>(width) * channels);
  png_bytepp rows = png_get_rows(g.png, g.info);
  const std::size_t row_bytes = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  for (png_uint_32 y = 0; y < height; ++y) {
    std::memcpy(img.pixels.data() + static_cast<std::size_t>(y) * row_bytes, rows[y], row_bytes);
  }
  return img;
}

void write_png(const std::filesystem::path& path, const std::uint8_t* data,
               Eigen::Index width, Eigen::Index height, int channels) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("cannot encode empty raster: " + path.string());
  }
  FileGuard file;
  file.fp = std::fopen(path.c_str(), "wb");
  if (!file.fp) {
    throw IoError("cannot create PNG: " + path.string());
  }
  std::string error_message;
  WriteGuard g;
  g.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_message, capture_error,
                                  drop_warning);
  if (g.png) g.info = png_create_info_struct(g.png);
  if (!g.png || !g.info) {
    throw IoError("libpng setup failed for " + path.string());
  }
  if (setjmp(png_jmpbuf(g.png))) {
    throw IoError("failed to encode PNG " + path.string() + ": " + error_message);
  }
  png_init_io(g.png, file.fp);
  // Pinned compression settings keep output bytes reproducible run to run.
  png_set_compression_level(g.png, 6);
  png_set_IHDR(g.png, g.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               8, channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(g.png, g.info);
  const std::size_t row_bytes = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
  for (Eigen::Index y = 0; y < height; ++y) {
    png_write_row(g.png, const_cast<png_bytep>(data + static_cast<std::size_t>(y) * row_bytes));
  }
  png_write_end(g.png, nullptr);
  if (std::fclose(file.fp) != 0) {
    file.fp = nullptr;
    throw IoError("failed to flush PNG: " + path.string());
  }
  file.fp = nullptr;
}

}  // namespace

ImageBuffer read_image_png(const std::filesystem::path& path) {
  return read_png(path, /*strict_gray=*/false);
}

LabelMap read_label_png(const std::filesystem::path& path, std::uint8_t ignore_index) {
  ImageBuffer img = read_png(path, /*strict_gray=*/true);
  LabelMap map;
  map.ignore_index = ignore_index;
  map.values = std::move(img.pixels);
  return map;
}

void write_image_png(const std::filesystem::path& path, const ImageBuffer& img) {
  if (img.channels != 1 && img.channels != 3) {
    throw ChannelMismatch("image must have 1 or 3 channels, got " +
                          std::to_string(img.channels));
  }
  write_png(path, img.pixels.data(), img.width(), img.height(), img.channels);
}

void write_label_png(const std::filesystem::path& path, const LabelMap& map) {
  write_png(path, map.values.data(), map.width(), map.height(), 1);
}

}  // namespace segfuse
