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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "segfuse/augment.hpp"
#include "segfuse/class_set.hpp"

namespace segfuse {

enum class Split { kTrain, kVal, kTest };

std::string_view to_string(Split split);
Split split_from_string(std::string_view text);  // throws UnknownSplit

/// One frame of one scene: the clear/adverse image pair plus its label.
/// Paths are stored as written in the manifest and resolved against the
/// manifest's directory.
struct SceneRecord {
  std::string scene_id;
  std::string frame_id;
  std::string clear_path;
  std::string adverse_path;
  std::string label_path;
  Split split = Split::kTrain;
  std::vector<std::string> weather_tags;

  bool operator==(const SceneRecord&) const = default;
};

struct DatasetManifest {
  std::vector<SceneRecord> records;
  std::string class_set_path;

  /// Directory the manifest was loaded from (or will live in); not
  /// serialized. Relative paths in records resolve against it.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& path) const {
    std::filesystem::path p(path);
    return p.is_absolute() ? p : base_dir / p;
  }
};

/// Manifest format: UTF-8, one record per line, tab-separated fields in the
/// order scene_id, frame_id, clear_path, adverse_path, label_path, split,
/// weather_tags (comma-joined; field omitted when empty). `#` starts a
/// comment line. An optional leading `classes<TAB>path` line names the
/// class-definition file. Throws ParseError (with line number),
/// DuplicateRecord, UnknownSplit, IoError.
DatasetManifest load_manifest(const std::filesystem::path& path);

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

enum class IssueKind { kMissingFile, kDecodeError, kDimensionMismatch, kClassOutOfRange };

std::string_view to_string(IssueKind kind);

struct VerifyIssue {
  IssueKind kind = IssueKind::kMissingFile;
  std::string scene_id;
  std::string frame_id;
  std::string path;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks every record: files exist, images decode, clear/adverse/label
/// dimensions agree, label values fit the class set. Never aborts early;
/// every failure is one report entry, in record order.
VerifyReport verify_files(const DatasetManifest& manifest, const ClassSet& cs,
                          int threads = 1);

struct CorpusStats {
  std::map<Split, std::int64_t> records_per_split;
  std::map<std::string, std::int64_t> frames_per_scene;
  std::vector<std::int64_t> class_pixels;  // size C
  std::int64_t ignored_pixels = 0;
  std::int64_t out_of_range_pixels = 0;
  std::int64_t total_pixels = 0;
  std::vector<VerifyIssue> issues;

  std::int64_t record_count() const;
  double ignored_fraction() const {
    return total_pixels > 0 ? static_cast<double>(ignored_pixels) / static_cast<double>(total_pixels) : 0.0;
  }
};

/// Per-split record counts, per-class pixel histogram over all label maps,
/// per-scene frame counts, ignored-pixel fraction. Decode failures become
/// report entries, not exceptions.
CorpusStats corpus_stats(const DatasetManifest& manifest, const ClassSet& cs,
                         int threads = 1);

/// Applies the offline photometric grid to every train-split record's
/// adverse image. Variant images land under out_dir/images/, the class file
/// is copied to out_dir/classes.tsv, and out_dir/manifest.tsv references
/// both plus the untouched originals. Train records multiply by
/// 1 + |factors| + |deltas|; val/test pass through. Input files are never
/// modified. Returns the written manifest.
DatasetManifest expand_offline(const DatasetManifest& manifest, const AugSpec& spec,
                               const std::filesystem::path& out_dir, int threads = 1);

}  // namespace segfuse
