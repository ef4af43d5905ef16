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
#include "segfuse/metrics.hpp"

#include <string>

#include "segfuse/errors.hpp"

namespace segfuse {

void accumulate(ConfusionMatrix& cm, const LabelMap& gt, const LabelMap& pred) {
  if (!gt.same_shape(pred)) {
    throw DimensionMismatch("gt is " + std::to_string(gt.width()) + "x" +
                            std::to_string(gt.height()) + " but pred is " +
                            std::to_string(pred.width()) + "x" + std::to_string(pred.height()));
  }
  const int num_classes = cm.num_classes();
  const std::uint8_t ignore = gt.ignore_index;
  const std::uint8_t* g = gt.values.data();
  const std::uint8_t* p = pred.values.data();
  std::int64_t* counts = cm.counts.data();
  const Eigen::Index n = gt.values.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::uint8_t gv = g[i];
    if (gv == ignore) continue;
    if (gv >= num_classes) {
      throw ClassOutOfRange("gt value " + std::to_string(int(gv)) + " at pixel " +
                            std::to_string(i) + " exceeds class count " +
                            std::to_string(num_classes));
    }
    const std::uint8_t pv = p[i];
    if (pv >= num_classes) {
      throw ClassOutOfRange("pred value " + std::to_string(int(pv)) + " at pixel " +
                            std::to_string(i) + " exceeds class count " +
                            std::to_string(num_classes));
    }
    ++counts[static_cast<Eigen::Index>(gv) * num_classes + pv];
  }
}

ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b) {
  if (a.num_classes() != b.num_classes()) {
    throw ClassCountMismatch("cannot merge " + std::to_string(a.num_classes()) +
                             "-class and " + std::to_string(b.num_classes()) +
                             "-class matrices");
  }
  ConfusionMatrix out;
  out.counts = a.counts + b.counts;
  return out;
}

std::vector<std::optional<double>> iou_per_class(const ConfusionMatrix& cm) {
  const int num_classes = cm.num_classes();
  const Eigen::Vector<std::int64_t, Eigen::Dynamic> tp = cm.counts.diagonal();
  const Eigen::Vector<std::int64_t, Eigen::Dynamic> gt_totals = cm.counts.rowwise().sum();
  const Eigen::Vector<std::int64_t, Eigen::Dynamic> pred_totals =
      cm.counts.colwise().sum().transpose();

  std::vector<std::optional<double>> result(static_cast<std::size_t>(num_classes));
  for (int c = 0; c < num_classes; ++c) {
    // union = TP + FP + FN
    const std::int64_t unions = gt_totals[c] + pred_totals[c] - tp[c];
    if (unions > 0) {
      result[static_cast<std::size_t>(c)] =
          static_cast<double>(tp[c]) / static_cast<double>(unions);
    }
  }
  return result;
}

double miou(const ConfusionMatrix& cm) {
  double sum = 0.0;
  int present = 0;
  for (const std::optional<double>& iou : iou_per_class(cm)) {
    if (iou) {
      sum += *iou;
      ++present;
    }
  }
  if (present == 0) {
    throw EmptyMatrix("no class has a nonzero union");
  }
  return sum / present;
}

double pixel_accuracy(const ConfusionMatrix& cm) {
  const std::int64_t total = cm.total();
  if (total == 0) {
    throw EmptyMatrix("confusion matrix holds no pixels");
  }
  return static_cast<double>(cm.counts.trace()) / static_cast<double>(total);
}

}  // namespace segfuse
