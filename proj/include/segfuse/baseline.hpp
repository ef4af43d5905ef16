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
#include "segfuse/label_map.hpp"
#include "segfuse/rng.hpp"

namespace segfuse {

/// Trivial prediction sources so fuse/evaluate run end-to-end without a
/// trained model.
struct BaselinePredictor {
  enum class Kind { kConstant, kNearestColor };

  Kind kind = Kind::kConstant;
  std::uint8_t constant_class = 0;
  ClassSet class_set;

  static BaselinePredictor constant(std::uint8_t cls, const ClassSet& cs);
  static BaselinePredictor nearest_color(const ClassSet& cs);
};

/// constant: uniform map of the class. nearest_color: per pixel, the class
/// whose palette color minimizes squared RGB distance (ties to the smallest
/// class index); requires a 3-channel input, else ChannelMismatch.
LabelMap predict(const BaselinePredictor& predictor, const ImageBuffer& img);

/// Symmetric-uniform label noise: each non-ignored pixel keeps its class
/// with probability 1-error_rate, else is replaced by a uniform draw over
/// the other C-1 classes. Pixels are visited in row-major order; ignored
/// pixels are untouched and consume no draws.
LabelMap perturb_labels(const LabelMap& gt, double error_rate, int num_classes,
                        RandomStream& stream);

}  // namespace segfuse
