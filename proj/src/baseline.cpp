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
#include "segfuse/baseline.hpp"

#include <limits>
#include <string>

#include "segfuse/errors.hpp"

namespace segfuse {

BaselinePredictor BaselinePredictor::constant(std::uint8_t cls, const ClassSet& cs) {
  if (cls >= cs.size()) {
    throw ClassOutOfRange("constant class " + std::to_string(int(cls)) +
                          " exceeds class count " + std::to_string(cs.size()));
  }
  BaselinePredictor p;
  p.kind = Kind::kConstant;
  p.constant_class = cls;
  p.class_set = cs;
  return p;
}

BaselinePredictor BaselinePredictor::nearest_color(const ClassSet& cs) {
  BaselinePredictor p;
  p.kind = Kind::kNearestColor;
  p.class_set = cs;
  return p;
}

LabelMap predict(const BaselinePredictor& predictor, const ImageBuffer& img) {
  if (predictor.kind == BaselinePredictor::Kind::kConstant) {
    return make_label_map(img.width(), img.height(), predictor.constant_class,
                          predictor.class_set.ignore_index());
  }

  if (img.channels != 3) {
    throw ChannelMismatch("nearest_color needs a 3-channel image, got " +
                          std::to_string(img.channels) + " channel(s)");
  }
  const ClassSet& cs = predictor.class_set;
  LabelMap out = make_label_map(img.width(), img.height(), 0, cs.ignore_index());
  const std::uint8_t* src = img.pixels.data();
  std::uint8_t* dst = out.values.data();
  const Eigen::Index n = out.values.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const int r = src[3 * i + 0];
    const int g = src[3 * i + 1];
    const int b = src[3 * i + 2];
    long best = std::numeric_limits<long>::max();
    std::uint8_t best_class = 0;
    for (const ClassDef& def : cs.classes()) {
      const long dr = r - def.color[0];
      const long dg = g - def.color[1];
      const long db = b - def.color[2];
      const long d2 = dr * dr + dg * dg + db * db;
      if (d2 < best) {  // strict: ties keep the smaller class index
        best = d2;
        best_class = static_cast<std::uint8_t>(def.index);
      }
    }
    dst[i] = best_class;
  }
  return out;
}

LabelMap perturb_labels(const LabelMap& gt, double error_rate, int num_classes,
                        RandomStream& stream) {
  if (!(error_rate >= 0.0 && error_rate <= 1.0)) {
    throw ValidationError("error_rate must be in [0,1]");
  }
  if (num_classes < 2) {
    throw ValidationError("perturb_labels needs at least 2 classes");
  }
  LabelMap out = gt;
  const double keep_probability = 1.0 - error_rate;
  std::uint8_t* v = out.values.data();
  const Eigen::Index n = out.values.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v[i] == gt.ignore_index) continue;
    if (stream.uniform_double() < keep_probability) continue;
    const auto j = static_cast<std::uint8_t>(
        stream.uniform_index(static_cast<std::uint64_t>(num_classes) - 1));
    v[i] = j >= v[i] ? static_cast<std::uint8_t>(j + 1) : j;
  }
  return out;
}

}  // namespace segfuse
