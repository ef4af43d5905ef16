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
#include <span>
#include <string>
#include <vector>

#include "segfuse/baseline.hpp"
#include "segfuse/class_set.hpp"
#include "segfuse/metrics.hpp"
#include "segfuse/report.hpp"

namespace segfuse {

/// Directory-level pipeline stages. Files pair by name, never by listing
/// order, and `threads` never changes any output byte: workers fill
/// per-chunk accumulators that merge in a fixed order, and file outputs
/// depend only on their inputs.

/// Sorted .png file names (name only) in a directory. Throws IoError if the
/// directory is missing or unreadable.
std::vector<std::string> list_png_names(const std::filesystem::path& dir);

/// The common names of two directories; any name present on one side only is
/// MissingCounterpart, as is an empty pairing.
std::vector<std::string> paired_png_names(const std::filesystem::path& a,
                                          const std::filesystem::path& b);

struct EvaluateResult {
  ReportRow row;
  ConfusionMatrix matrix;
};

/// Accumulates one confusion matrix over all name-paired gt/pred maps and
/// reduces it to a ReportRow. model_id defaults to the prediction
/// directory's name.
EvaluateResult evaluate_directories(const std::filesystem::path& gt_dir,
                                    const std::filesystem::path& pred_dir,
                                    const ClassSet& cs, int threads = 1,
                                    std::string model_id = {});

/// Hard-votes the aligned maps of every member directory into out_dir, one
/// output per file name. Every name must exist in every member directory.
/// Returns the number of fused maps.
std::size_t fuse_directories(std::span<const std::filesystem::path> member_dirs,
                             const std::filesystem::path& out_dir, int threads = 1);

/// Runs a baseline predictor over every image in images_dir.
void predict_directory(const BaselinePredictor& predictor,
                       const std::filesystem::path& images_dir,
                       const std::filesystem::path& out_dir, int threads = 1);

/// Perturbs every label map in labels_dir; each file's stream is derived
/// from (master_seed, file stem).
void perturb_directory(const std::filesystem::path& labels_dir,
                       const std::filesystem::path& out_dir, double error_rate,
                       int num_classes, std::uint64_t master_seed, int threads = 1);

/// Palette rendering of every label map in labels_dir.
void colorize_directory(const std::filesystem::path& labels_dir, const ClassSet& cs,
                        const std::filesystem::path& out_dir, int threads = 1);

}  // namespace segfuse
