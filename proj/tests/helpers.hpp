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

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "segfuse/fusion.hpp"
#include "segfuse/label_map.hpp"
#include "segfuse/metrics.hpp"
#include "segfuse/rng.hpp"

namespace segfuse::testing {

namespace fs = std::filesystem;

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    RandomStream stream(static_cast<std::uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count()));
    path_ = fs::temp_directory_path() /
            ("segfuse_" + tag + "_" + std::to_string(stream.next_u64() % 0xffffff) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Order-independent content hash of a directory tree: FNV-1a over sorted
/// (relative path, file bytes) pairs.
inline std::uint64_t dir_hash(const fs::path& root) {
  std::map<std::string, fs::path> files;
  for (const fs::directory_entry& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files.emplace(fs::relative(entry.path(), root).generic_string(), entry.path());
    }
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_bytes = [&h](const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<std::uint8_t>(data[i]);
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [rel, path] : files) {
    mix_bytes(rel.data(), rel.size());
    mix_bytes("\0", 1);
    const std::string bytes = read_text(path);
    mix_bytes(bytes.data(), bytes.size());
    mix_bytes("\0", 1);
  }
  return h;
}

inline LabelMap random_label_map(RandomStream& stream, int width, int height, int num_classes,
                                 double ignore_fraction = 0.0,
                                 std::uint8_t ignore_index = 255) {
  LabelMap map = make_label_map(width, height, 0, ignore_index);
  for (Eigen::Index i = 0; i < map.values.size(); ++i) {
    if (ignore_fraction > 0.0 && stream.uniform_double() < ignore_fraction) {
      map.values.data()[i] = ignore_index;
    } else {
      map.values.data()[i] =
          static_cast<std::uint8_t>(stream.uniform_index(static_cast<std::uint64_t>(num_classes)));
    }
  }
  return map;
}

inline ImageBuffer random_image(RandomStream& stream, int width, int height, int channels) {
  ImageBuffer img = make_image(width, height, channels);
  for (Eigen::Index i = 0; i < img.pixels.size(); ++i) {
    img.pixels.data()[i] = static_cast<std::uint8_t>(stream.uniform_index(256));
  }
  return img;
}

/// Brute-force IoU via explicit pixel-index sets: per class, A = gt pixels,
/// B = pred pixels at non-ignored sites, IoU = |A∩B| / |A∪B|. Independent of
/// the confusion-matrix path.
inline std::vector<std::optional<double>> oracle_iou(const LabelMap& gt, const LabelMap& pred,
                                                     int num_classes) {
  std::vector<std::optional<double>> result(static_cast<std::size_t>(num_classes));
  for (int c = 0; c < num_classes; ++c) {
    std::set<Eigen::Index> a, b;
    for (Eigen::Index i = 0; i < gt.values.size(); ++i) {
      if (gt.values.data()[i] == gt.ignore_index) continue;
      if (gt.values.data()[i] == c) a.insert(i);
      if (pred.values.data()[i] == c) b.insert(i);
    }
    std::int64_t intersection = 0;
    for (Eigen::Index i : a) intersection += b.count(i) ? 1 : 0;
    const std::int64_t unions =
        static_cast<std::int64_t>(a.size() + b.size()) - intersection;
    if (unions > 0) {
      result[static_cast<std::size_t>(c)] =
          static_cast<double>(intersection) / static_cast<double>(unions);
    }
  }
  return result;
}

/// Mean of present oracle IoUs in ascending class order.
inline std::optional<double> oracle_miou(const LabelMap& gt, const LabelMap& pred,
                                         int num_classes) {
  double sum = 0.0;
  int present = 0;
  for (const std::optional<double>& iou : oracle_iou(gt, pred, num_classes)) {
    if (iou) {
      sum += *iou;
      ++present;
    }
  }
  if (present == 0) return std::nullopt;
  return sum / present;
}

/// Brute-force per-pixel histogram argmax with smallest-index tie-break.
inline LabelMap oracle_vote(const VoteStack& stack) {
  const LabelMap& first = stack.members.front();
  LabelMap out = first;
  for (Eigen::Index i = 0; i < first.values.size(); ++i) {
    std::array<int, 256> histogram{};
    for (const LabelMap& member : stack.members) {
      ++histogram[member.values.data()[i]];
    }
    int best = 0;
    for (int v = 1; v < 256; ++v) {
      if (histogram[v] > histogram[best]) best = v;
    }
    out.values.data()[i] = static_cast<std::uint8_t>(best);
  }
  return out;
}

/// Runs a shell command, captures stdout, returns the exit code.
inline int run_command(const std::string& command, std::string* output = nullptr) {
  std::FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return -1;
  std::string captured;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    captured.append(buf, n);
  }
  const int status = pclose(pipe);
  if (output) *output = captured;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string cli_bin() { return std::string(SEGFUSE_CLI_BIN); }

inline std::string quoted(const fs::path& path) { return "'" + path.string() + "'"; }

}  // namespace segfuse::testing
