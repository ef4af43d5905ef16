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
#pragma once

#include <cstdint>

#include "segfuse/class_set.hpp"
#include "segfuse/grid.hpp"

namespace segfuse {

/// 2D grid of class indices, one byte per pixel. Pixels equal to
/// ignore_index are excluded from every metric.
struct LabelMap {
  ByteGrid values;  // height x width
  std::uint8_t ignore_index = 255;

  Eigen::Index width() const { return values.cols(); }
  Eigen::Index height() const { return values.rows(); }
  Eigen::Index pixel_count() const { return values.size(); }
  bool same_shape(const LabelMap& other) const {
    return values.rows() == other.values.rows() && values.cols() == other.values.cols();
  }

  bool operator==(const LabelMap& other) const {
    return ignore_index == other.ignore_index && values.rows() == other.values.rows() &&
           values.cols() == other.values.cols() && values == other.values;
  }
};

/// Interleaved 8-bit raster with 1 or 3 channels. Stored as a
/// height x (width*channels) grid so .data() is the scanline layout.
struct ImageBuffer {
  ByteGrid pixels;
  int channels = 1;

  Eigen::Index width() const { return channels > 0 ? pixels.cols() / channels : 0; }
  Eigen::Index height() const { return pixels.rows(); }

  std::uint8_t at(Eigen::Index y, Eigen::Index x, int c = 0) const {
    return pixels(y, x * channels + c);
  }
  std::uint8_t& at(Eigen::Index y, Eigen::Index x, int c = 0) {
    return pixels(y, x * channels + c);
  }

  bool operator==(const ImageBuffer& other) const {
    return channels == other.channels && pixels.rows() == other.pixels.rows() &&
           pixels.cols() == other.pixels.cols() && pixels == other.pixels;
  }
};

ImageBuffer make_image(Eigen::Index width, Eigen::Index height, int channels,
                       std::uint8_t fill = 0);
LabelMap make_label_map(Eigen::Index width, Eigen::Index height, std::uint8_t fill = 0,
                        std::uint8_t ignore_index = 255);

/// Throws ClassOutOfRange if any non-ignored pixel is >= cs.size().
void validate_against(const LabelMap& map, const ClassSet& cs);

/// Renders a label map as a 3-channel image using the class palette;
/// ignore_index pixels come out black.
ImageBuffer colorize(const LabelMap& map, const ClassSet& cs);

/// Aligned image/label pair; the unit of augmentation.
struct SamplePair {
  ImageBuffer image;
  LabelMap label;

  bool operator==(const SamplePair&) const = default;
};

}  // namespace segfuse
