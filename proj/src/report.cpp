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
#include "segfuse/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "segfuse/errors.hpp"

namespace segfuse {

namespace {

std::string fixed4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

}  // namespace

std::string render_table(std::span<const ReportRow> members, const ReportRow& fused) {
  std::size_t width = std::string("models").size();
  for (const ReportRow& row : members) width = std::max(width, row.model_id.size());
  width = std::max(width, fused.model_id.size());

  std::ostringstream out;
  auto line = [&](const std::string& id, const std::string& value) {
    out << id << std::string(width - id.size() + 2, ' ') << value << "\n";
  };
  line("models", "test mIoU");
  for (const ReportRow& row : members) line(row.model_id, fixed4(row.miou));
  line(fused.model_id, fixed4(fused.miou));
  return out.str();
}

std::string render_csv(std::span<const ReportRow> members, const ReportRow& fused) {
  std::ostringstream out;
  out << "model,miou\n";
  for (const ReportRow& row : members) out << row.model_id << ',' << fixed4(row.miou) << "\n";
  out << fused.model_id << ',' << fixed4(fused.miou) << "\n";
  return out.str();
}

std::vector<ReportRow> parse_rows_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open CSV: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(path.filename().string() + ": empty CSV");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "model,miou") {
    throw ParseError(path.filename().string() + ": expected header 'model,miou', got '" +
                     line + "'");
  }
  std::vector<ReportRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // The value never contains a comma, so split at the last one; model ids
    // with commas survive the round trip.
    const std::size_t pos = line.rfind(',');
    if (pos == std::string::npos) {
      throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                       ": expected model,miou");
    }
    ReportRow row;
    row.model_id = line.substr(0, pos);
    const std::string value = line.substr(pos + 1);
    char* end = nullptr;
    row.miou = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                       ": bad mIoU value '" + value + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace segfuse
