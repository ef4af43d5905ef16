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
#include <string>
#include <vector>

#include "segfuse/label_map.hpp"
#include "segfuse/rng.hpp"

namespace segfuse {

/// Augmentation parameters. The photometric grids (contrast_factors,
/// brightness_deltas) drive offline corpus expansion; crop/flip/pad are the
/// online transforms. master_seed anchors every derived random stream.
struct AugSpec {
  int crop_size = 960;
  double flip_probability = 0.5;
  std::uint8_t pad_image_fill = 0;
  std::uint8_t pad_label_fill = 255;
  std::vector<double> contrast_factors = {0.8, 1.2};
  std::vector<int> brightness_deltas = {-30, 30};
  std::uint64_t master_seed = 0;

  bool operator==(const AugSpec&) const = default;
};

/// Throws ValidationError unless crop_size >= 1, 0 <= flip_probability <= 1,
/// and every contrast factor is > 0.
void validate(const AugSpec& spec);

/// key=value text config; `#` comments, lists comma-separated. Unknown keys
/// are ParseError; missing keys keep their defaults.
AugSpec load_aug_spec(const std::filesystem::path& path);
std::string serialize(const AugSpec& spec);

/// v -> clamp(v + delta, 0, 255) on every channel. Photometric: never
/// touches labels or geometry.
ImageBuffer adjust_brightness(const ImageBuffer& img, int delta);

/// v -> clamp(round(128 + factor*(v - 128)), 0, 255), rounding half away
/// from zero; 128 is a fixed point for every factor. Throws InvalidFactor
/// for factor <= 0.
ImageBuffer adjust_contrast(const ImageBuffer& img, double factor);

ImageBuffer flip_horizontal(const ImageBuffer& img);
LabelMap flip_horizontal(const LabelMap& map);

/// Mirrors image and label about the vertical axis: (x,y) -> (W-1-x, y).
SamplePair flip_horizontal(const SamplePair& pair);

/// Pads on the bottom/right up to (min_w, min_h); image pixels get
/// spec.pad_image_fill, label pixels spec.pad_label_fill. Dimensions already
/// large enough are unchanged.
SamplePair pad_to_min(const SamplePair& pair, int min_w, int min_h, const AugSpec& spec);

/// crop_size x crop_size window at an offset drawn uniformly from the valid
/// range, identical for image and label. Pads first when the pair is smaller
/// than the crop. Consumes exactly two draws (x then y).
SamplePair random_crop(const SamplePair& pair, const AugSpec& spec, RandomStream& stream);

/// Draws one uniform ratio u and flips iff u < spec.flip_probability.
SamplePair random_flip(const SamplePair& pair, const AugSpec& spec, RandomStream& stream);

/// The offline photometric grid applied to one image: the original, then one
/// variant per contrast factor, then one per brightness delta.
std::vector<ImageBuffer> offline_expand_image(const ImageBuffer& img, const AugSpec& spec);

/// Pair-level offline expansion; emitted labels are bit-identical copies of
/// the input label. Output count = 1 + |factors| + |deltas|.
std::vector<SamplePair> offline_expand(const SamplePair& pair, const AugSpec& spec);

/// Stable tags aligned with offline_expand output: "orig", "c<factor>",
/// "b<+/-delta>". Used to name expanded files.
std::vector<std::string> offline_variant_tags(const AugSpec& spec);

}  // namespace segfuse
