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
#include <optional>
#include <vector>

#include "segfuse/grid.hpp"
#include "segfuse/label_map.hpp"

namespace segfuse {

/// C x C pixel-count table; counts(g, p) = pixels with ground truth g
/// predicted as p. 64-bit counts: corpora at the hundred-thousand-image,
/// megapixel scale overflow 32-bit counters.
struct ConfusionMatrix {
  CountGrid counts;

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(int num_classes)
      : counts(CountGrid::Zero(num_classes, num_classes)) {}

  int num_classes() const { return static_cast<int>(counts.rows()); }
  std::int64_t total() const { return counts.sum(); }

  bool operator==(const ConfusionMatrix& other) const {
    return counts.rows() == other.counts.rows() && counts.cols() == other.counts.cols() &&
           counts == other.counts;
  }
};

/// Tallies one gt/pred pair into cm. Pixels where gt equals its ignore_index
/// contribute nothing; masking is by ground truth only, so a prediction equal
/// to the ignore value at a non-ignored pixel is ClassOutOfRange like any
/// other value >= C.
void accumulate(ConfusionMatrix& cm, const LabelMap& gt, const LabelMap& pred);

/// Element-wise sum. Throws ClassCountMismatch.
ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b);

/// Per class: TP/(TP+FP+FN); nullopt when the union is empty (class absent
/// from both gt and prediction).
std::vector<std::optional<double>> iou_per_class(const ConfusionMatrix& cm);

/// Unweighted mean over present classes. Throws EmptyMatrix when no class
/// has a nonzero union.
double miou(const ConfusionMatrix& cm);

/// trace/total. Throws EmptyMatrix on an all-zero matrix.
double pixel_accuracy(const ConfusionMatrix& cm);

}  // namespace segfuse
