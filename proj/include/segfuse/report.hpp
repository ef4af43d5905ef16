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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace segfuse {

/// One scored model (or the fused ensemble) in a comparison report.
struct ReportRow {
  std::string model_id;
  double miou = 0.0;
  std::vector<std::optional<double>> per_class_iou;
  std::int64_t pixel_count = 0;
};

/// Two-column text table, member rows first, the fused row last. mIoU fixed
/// at 4 decimals.
std::string render_table(std::span<const ReportRow> members, const ReportRow& fused);

/// `model,miou` CSV with the same rows and precision as the table.
std::string render_csv(std::span<const ReportRow> members, const ReportRow& fused);

/// Parses the CSV produced by render_csv (header + model,miou lines).
std::vector<ReportRow> parse_rows_csv(const std::filesystem::path& path);

}  // namespace segfuse
