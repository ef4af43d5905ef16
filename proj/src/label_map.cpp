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
#include "segfuse/label_map.hpp"

#include <string>

#include "segfuse/errors.hpp"

namespace segfuse {

ImageBuffer make_image(Eigen::Index width, Eigen::Index height, int channels,
                       std::uint8_t fill) {
  if (channels != 1 && channels != 3) {
    throw ChannelMismatch("image must have 1 or 3 channels, got " + std::to_string(channels));
  }
  ImageBuffer img;
  img.channels = channels;
  img.pixels = ByteGrid::Constant(height, width * channels, fill);
  return img;
}

LabelMap make_label_map(Eigen::Index width, Eigen::Index height, std::uint8_t fill,
                        std::uint8_t ignore_index) {
  LabelMap map;
  map.ignore_index = ignore_index;
  map.values = ByteGrid::Constant(height, width, fill);
  return map;
}

void validate_against(const LabelMap& map, const ClassSet& cs) {
  const int num_classes = cs.size();
  const std::uint8_t* v = map.values.data();
  const Eigen::Index n = map.values.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v[i] != map.ignore_index && v[i] >= num_classes) {
      throw ClassOutOfRange("label value " + std::to_string(int(v[i])) + " at pixel " +
                            std::to_string(i) + " exceeds class count " +
                            std::to_string(num_classes));
    }
  }
}

ImageBuffer colorize(const LabelMap& map, const ClassSet& cs) {
  // 256-entry palette; ignore renders black, anything else unmapped throws.
  std::array<std::array<std::uint8_t, 3>, 256> palette;
  std::array<bool, 256> known{};
  for (const ClassDef& def : cs.classes()) {
    palette[static_cast<std::size_t>(def.index)] = def.color;
    known[static_cast<std::size_t>(def.index)] = true;
  }
  palette[map.ignore_index] = {0, 0, 0};
  known[map.ignore_index] = true;

  ImageBuffer out = make_image(map.width(), map.height(), 3);
  const std::uint8_t* src = map.values.data();
  std::uint8_t* dst = out.pixels.data();
  const Eigen::Index n = map.values.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::uint8_t v = src[i];
    if (!known[v]) {
      throw ClassOutOfRange("label value " + std::to_string(int(v)) +
                            " has no palette entry (C=" + std::to_string(cs.size()) + ")");
    }
    dst[3 * i + 0] = palette[v][0];
    dst[3 * i + 1] = palette[v][1];
    dst[3 * i + 2] = palette[v][2];
  }
  return out;
}

}  // namespace segfuse
