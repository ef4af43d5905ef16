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
#include <filesystem>

#include "segfuse/label_map.hpp"

namespace segfuse {

/// Decodes to 8-bit gray (1 channel) or RGB (3 channels); palette images are
/// expanded, 16-bit depth and alpha are stripped. Throws IoError.
ImageBuffer read_image_png(const std::filesystem::path& path);

/// Label maps are strictly single-channel 8-bit gray, pixel value == class
/// index. Throws IoError on anything else.
LabelMap read_label_png(const std::filesystem::path& path, std::uint8_t ignore_index = 255);

void write_image_png(const std::filesystem::path& path, const ImageBuffer& img);
void write_label_png(const std::filesystem::path& path, const LabelMap& map);

}  // namespace segfuse
