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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace segfuse {

struct ClassDef {
  int index = 0;
  std::string name;
  std::array<std::uint8_t, 3> color{0, 0, 0};

  bool operator==(const ClassDef&) const = default;
};

/// Ordered class metadata for one dataset: contiguous indices 0..C-1, unique
/// names, and an ignore index that is never a class index.
class ClassSet {
 public:
  ClassSet() = default;

  /// Validates and sorts by index. Throws ValidationError on gaps, duplicate
  /// indices or names, empty sets, or an ignore index colliding with a class.
  explicit ClassSet(std::vector<ClassDef> classes, std::uint8_t ignore_index = 255);

  int size() const { return static_cast<int>(classes_.size()); }
  const ClassDef& at(int index) const { return classes_.at(static_cast<std::size_t>(index)); }
  const std::vector<ClassDef>& classes() const { return classes_; }
  std::uint8_t ignore_index() const { return ignore_index_; }

 private:
  std::vector<ClassDef> classes_;
  std::uint8_t ignore_index_ = 255;
};

/// Class-definition file: one class per line, `index<TAB>name<TAB>#RRGGBB`.
/// Lines starting with `#` are comments; an optional `ignore<TAB>N` line
/// overrides the default ignore index of 255.
ClassSet load_class_set(const std::filesystem::path& path);

}  // namespace segfuse
