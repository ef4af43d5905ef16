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
#include "segfuse/dataset.hpp"

#include <array>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "segfuse/errors.hpp"
#include "segfuse/parallel.hpp"
#include "segfuse/png_io.hpp"

namespace segfuse {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "?";
}

Split split_from_string(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "val") return Split::kVal;
  if (text == "test") return Split::kTest;
  throw UnknownSplit("unknown split '" + std::string(text) + "' (expected train|val|test)");
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::kMissingFile: return "MissingFile";
    case IssueKind::kDecodeError: return "DecodeError";
    case IssueKind::kDimensionMismatch: return "DimensionMismatch";
    case IssueKind::kClassOutOfRange: return "ClassOutOfRange";
  }
  return "?";
}

std::int64_t CorpusStats::record_count() const {
  std::int64_t total = 0;
  for (const auto& [split, count] : records_per_split) total += count;
  return total;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

void check_id(const std::string& id, const char* what, const std::string& where) {
  if (id.empty()) {
    throw ParseError(where + ": empty " + what);
  }
  if (id.find_first_of("/\\") != std::string::npos) {
    throw ParseError(where + ": " + what + " '" + id + "' must not contain path separators");
  }
}

std::string record_key(const SceneRecord& rec) {
  return rec.scene_id + '\t' + rec.frame_id;
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open manifest: " + path.string());
  }
  DatasetManifest manifest;
  manifest.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

  std::unordered_set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    std::vector<std::string> fields = split_fields(line, '\t');

    if (fields.size() == 2 && fields[0] == "classes") {
      if (!manifest.class_set_path.empty()) {
        throw ParseError(where + ": duplicate classes line");
      }
      if (!manifest.records.empty()) {
        throw ParseError(where + ": classes line must precede all records");
      }
      if (fields[1].empty()) {
        throw ParseError(where + ": classes line has an empty path");
      }
      manifest.class_set_path = fields[1];
      continue;
    }

    if (fields.size() != 6 && fields.size() != 7) {
      throw ParseError(where + ": expected 6 or 7 tab-separated fields, got " +
                       std::to_string(fields.size()));
    }
    SceneRecord rec;
    rec.scene_id = fields[0];
    rec.frame_id = fields[1];
    rec.clear_path = fields[2];
    rec.adverse_path = fields[3];
    rec.label_path = fields[4];
    check_id(rec.scene_id, "scene_id", where);
    check_id(rec.frame_id, "frame_id", where);
    if (rec.clear_path.empty() || rec.adverse_path.empty() || rec.label_path.empty()) {
      throw ParseError(where + ": paths must be non-empty");
    }
    try {
      rec.split = split_from_string(fields[5]);
    } catch (const UnknownSplit& e) {
      throw UnknownSplit(where + ": " + e.what());
    }
    if (fields.size() == 7 && !fields[6].empty()) {
      for (std::string& tag : split_fields(fields[6], ',')) {
        if (tag.empty()) {
          throw ParseError(where + ": empty weather tag");
        }
        rec.weather_tags.push_back(std::move(tag));
      }
    }
    if (!seen.insert(record_key(rec)).second) {
      throw DuplicateRecord(where + ": duplicate (scene_id, frame_id) = (" + rec.scene_id +
                            ", " + rec.frame_id + ")");
    }
    manifest.records.push_back(std::move(rec));
  }
  if (manifest.records.empty()) {
    throw ParseError(path.filename().string() + ": manifest has no records");
  }
  return manifest;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write manifest: " + path.string());
  }
  if (!manifest.class_set_path.empty()) {
    out << "classes\t" << manifest.class_set_path << "\n";
  }
  for (const SceneRecord& rec : manifest.records) {
    out << rec.scene_id << '\t' << rec.frame_id << '\t' << rec.clear_path << '\t'
        << rec.adverse_path << '\t' << rec.label_path << '\t' << to_string(rec.split);
    if (!rec.weather_tags.empty()) {
      out << '\t';
      for (std::size_t i = 0; i < rec.weather_tags.size(); ++i) {
        if (i) out << ',';
        out << rec.weather_tags[i];
      }
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("failed writing manifest: " + path.string());
  }
}

namespace {

struct ImageCheck {
  bool missing = false;
  std::string decode_error;
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  bool ok() const { return !missing && decode_error.empty(); }
};

struct LabelCheck : ImageCheck {
  bool out_of_range = false;
  int bad_value = 0;
};

// Thread-safe memo over file paths: manifests routinely reference one file
// from many records.
template <typename Check>
class CheckCache {
 public:
  template <typename Fn>
  const Check& get(const std::string& key, Fn&& compute) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    Check fresh = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(key, std::move(fresh)).first->second;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::string, Check> cache_;
};

ImageCheck check_image(const std::filesystem::path& path) {
  ImageCheck check;
  if (!std::filesystem::exists(path)) {
    check.missing = true;
    return check;
  }
  try {
    const ImageBuffer img = read_image_png(path);
    check.width = img.width();
    check.height = img.height();
  } catch (const Error& e) {
    check.decode_error = e.what();
  }
  return check;
}

LabelCheck check_label(const std::filesystem::path& path, const ClassSet& cs) {
  LabelCheck check;
  if (!std::filesystem::exists(path)) {
    check.missing = true;
    return check;
  }
  try {
    const LabelMap map = read_label_png(path, cs.ignore_index());
    check.width = map.width();
    check.height = map.height();
    const std::uint8_t* v = map.values.data();
    for (Eigen::Index i = 0; i < map.values.size(); ++i) {
      if (v[i] != map.ignore_index && v[i] >= cs.size()) {
        check.out_of_range = true;
        check.bad_value = v[i];
        break;
      }
    }
  } catch (const Error& e) {
    check.decode_error = e.what();
  }
  return check;
}

std::string dim_string(Eigen::Index w, Eigen::Index h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

}  // namespace

VerifyReport verify_files(const DatasetManifest& manifest, const ClassSet& cs, int threads) {
  CheckCache<ImageCheck> image_cache;
  CheckCache<LabelCheck> label_cache;
  std::vector<std::vector<VerifyIssue>> slots(manifest.records.size());

  parallel_chunks(static_cast<std::int64_t>(manifest.records.size()), threads,
                  [&](std::int64_t begin, std::int64_t end, int) {
    for (std::int64_t i = begin; i < end; ++i) {
      const SceneRecord& rec = manifest.records[static_cast<std::size_t>(i)];
      std::vector<VerifyIssue>& issues = slots[static_cast<std::size_t>(i)];
      auto add = [&](IssueKind kind, const std::string& path, std::string detail) {
        issues.push_back(VerifyIssue{kind, rec.scene_id, rec.frame_id, path, std::move(detail)});
      };
      auto report_file = [&](const ImageCheck& check, const std::string& path) {
        if (check.missing) {
          add(IssueKind::kMissingFile, path, "file not found");
        } else if (!check.decode_error.empty()) {
          add(IssueKind::kDecodeError, path, check.decode_error);
        }
      };

      const ImageCheck& clear =
          image_cache.get(rec.clear_path, [&] { return check_image(manifest.resolve(rec.clear_path)); });
      const ImageCheck& adverse =
          image_cache.get(rec.adverse_path, [&] { return check_image(manifest.resolve(rec.adverse_path)); });
      const LabelCheck& label =
          label_cache.get(rec.label_path, [&] { return check_label(manifest.resolve(rec.label_path), cs); });

      report_file(clear, rec.clear_path);
      report_file(adverse, rec.adverse_path);
      report_file(label, rec.label_path);
      if (label.ok() && label.out_of_range) {
        add(IssueKind::kClassOutOfRange, rec.label_path,
            "label value " + std::to_string(label.bad_value) + " out of range (C=" +
                std::to_string(cs.size()) + ")");
      }

      // Dimension agreement, measured against the adverse frame when it
      // decoded, otherwise against the clear frame.
      const ImageCheck* reference = adverse.ok() ? &adverse : (clear.ok() ? &clear : nullptr);
      if (reference) {
        if (clear.ok() && &clear != reference &&
            (clear.width != reference->width || clear.height != reference->height)) {
          add(IssueKind::kDimensionMismatch, rec.clear_path,
              dim_string(clear.width, clear.height) + " vs " +
                  dim_string(reference->width, reference->height));
        }
        if (label.ok() &&
            (label.width != reference->width || label.height != reference->height)) {
          add(IssueKind::kDimensionMismatch, rec.label_path,
              dim_string(label.width, label.height) + " vs " +
                  dim_string(reference->width, reference->height));
        }
      }
    }
  });

  VerifyReport report;
  for (std::vector<VerifyIssue>& issues : slots) {
    for (VerifyIssue& issue : issues) report.issues.push_back(std::move(issue));
  }
  return report;
}

namespace {

struct LabelStat {
  bool failed = false;
  std::string error;
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  std::array<std::int64_t, 256> histogram{};
};

}  // namespace

CorpusStats corpus_stats(const DatasetManifest& manifest, const ClassSet& cs, int threads) {
  // Unique label files decode once; records then add cached histograms.
  std::vector<std::string> unique_paths;
  std::unordered_map<std::string, std::size_t> path_index;
  for (const SceneRecord& rec : manifest.records) {
    if (path_index.emplace(rec.label_path, unique_paths.size()).second) {
      unique_paths.push_back(rec.label_path);
    }
  }

  std::vector<LabelStat> stats(unique_paths.size());
  parallel_chunks(static_cast<std::int64_t>(unique_paths.size()), threads,
                  [&](std::int64_t begin, std::int64_t end, int) {
    for (std::int64_t i = begin; i < end; ++i) {
      LabelStat& stat = stats[static_cast<std::size_t>(i)];
      try {
        const LabelMap map = read_label_png(
            manifest.resolve(unique_paths[static_cast<std::size_t>(i)]), cs.ignore_index());
        stat.width = map.width();
        stat.height = map.height();
        const std::uint8_t* v = map.values.data();
        for (Eigen::Index p = 0; p < map.values.size(); ++p) ++stat.histogram[v[p]];
      } catch (const Error& e) {
        stat.failed = true;
        stat.error = e.what();
      }
    }
  });

  CorpusStats out;
  out.class_pixels.assign(static_cast<std::size_t>(cs.size()), 0);
  for (const SceneRecord& rec : manifest.records) {
    ++out.records_per_split[rec.split];
    ++out.frames_per_scene[rec.scene_id];
    const LabelStat& stat = stats[path_index.at(rec.label_path)];
    if (stat.failed) {
      out.issues.push_back(VerifyIssue{IssueKind::kDecodeError, rec.scene_id, rec.frame_id,
                                       rec.label_path, stat.error});
      continue;
    }
    out.total_pixels += static_cast<std::int64_t>(stat.width) * stat.height;
    for (int v = 0; v < 256; ++v) {
      const std::int64_t count = stat.histogram[static_cast<std::size_t>(v)];
      if (count == 0) continue;
      if (v == cs.ignore_index()) {
        out.ignored_pixels += count;
      } else if (v < cs.size()) {
        out.class_pixels[static_cast<std::size_t>(v)] += count;
      } else {
        out.out_of_range_pixels += count;
      }
    }
  }
  return out;
}

namespace {

// Re-anchors a manifest-relative path so it stays valid from out_dir.
std::string rewrite_path(const DatasetManifest& manifest, const std::filesystem::path& out_dir,
                         const std::string& path) {
  const std::filesystem::path absolute = std::filesystem::absolute(manifest.resolve(path));
  std::error_code ec;
  const std::filesystem::path relative =
      std::filesystem::relative(absolute, std::filesystem::absolute(out_dir), ec);
  if (ec || relative.empty()) {
    return absolute.lexically_normal().string();
  }
  return relative.string();
}

}  // namespace

DatasetManifest expand_offline(const DatasetManifest& manifest, const AugSpec& spec,
                               const std::filesystem::path& out_dir, int threads) {
  validate(spec);
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  if (ec) {
    throw IoError("cannot create output directory: " + (out_dir / "images").string() + ": " +
                  ec.message());
  }

  DatasetManifest out;
  out.base_dir = out_dir;
  if (!manifest.class_set_path.empty()) {
    const std::filesystem::path src = manifest.resolve(manifest.class_set_path);
    std::filesystem::copy_file(src, out_dir / "classes.tsv",
                               std::filesystem::copy_options::overwrite_existing, ec);
    if (ec) {
      throw IoError("cannot copy class file " + src.string() + ": " + ec.message());
    }
    out.class_set_path = "classes.tsv";
  }

  const std::vector<std::string> tags = offline_variant_tags(spec);
  std::vector<std::vector<SceneRecord>> slots(manifest.records.size());

  parallel_chunks(static_cast<std::int64_t>(manifest.records.size()), threads,
                  [&](std::int64_t begin, std::int64_t end, int) {
    for (std::int64_t i = begin; i < end; ++i) {
      const SceneRecord& rec = manifest.records[static_cast<std::size_t>(i)];
      SceneRecord base = rec;
      base.clear_path = rewrite_path(manifest, out_dir, rec.clear_path);
      base.adverse_path = rewrite_path(manifest, out_dir, rec.adverse_path);
      base.label_path = rewrite_path(manifest, out_dir, rec.label_path);
      std::vector<SceneRecord>& emitted = slots[static_cast<std::size_t>(i)];
      emitted.push_back(base);
      if (rec.split != Split::kTrain) continue;

      const ImageBuffer adverse = read_image_png(manifest.resolve(rec.adverse_path));
      const std::vector<ImageBuffer> variants = offline_expand_image(adverse, spec);
      for (std::size_t k = 1; k < variants.size(); ++k) {
        const std::string file_name =
            rec.scene_id + "__" + rec.frame_id + "__" + tags[k] + ".png";
        write_image_png(out_dir / "images" / file_name, variants[k]);
        SceneRecord variant = base;
        variant.frame_id = rec.frame_id + "__" + tags[k];
        variant.adverse_path = "images/" + file_name;
        emitted.push_back(std::move(variant));
      }
    }
  });

  std::unordered_set<std::string> seen;
  for (std::vector<SceneRecord>& emitted : slots) {
    for (SceneRecord& rec : emitted) {
      if (!seen.insert(record_key(rec)).second) {
        throw DuplicateRecord("expansion collision on (scene_id, frame_id) = (" + rec.scene_id +
                              ", " + rec.frame_id + ")");
      }
      out.records.push_back(std::move(rec));
    }
  }
  write_manifest(out, out_dir / "manifest.tsv");
  return out;
}

}  // namespace segfuse
