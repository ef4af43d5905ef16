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
#include "segfuse/class_set.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_set>

#include "segfuse/errors.hpp"

namespace segfuse {

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

int parse_int(const std::string& text, const std::string& where) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(where + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::array<std::uint8_t, 3> parse_hex_color(const std::string& text, const std::string& where) {
  auto hex_nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ParseError(where + ": bad hex color '" + text + "'");
  };
  if (text.size() != 7 || text[0] != '#') {
    throw ParseError(where + ": expected #RRGGBB, got '" + text + "'");
  }
  std::array<std::uint8_t, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    rgb[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
        hex_nibble(text[1 + 2 * c]) * 16 + hex_nibble(text[2 + 2 * c]));
  }
  return rgb;
}

}  // namespace

ClassSet::ClassSet(std::vector<ClassDef> classes, std::uint8_t ignore_index)
    : classes_(std::move(classes)), ignore_index_(ignore_index) {
  if (classes_.empty()) {
    throw ValidationError("class set: at least one class required");
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const ClassDef& a, const ClassDef& b) { return a.index < b.index; });
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const ClassDef& def = classes_[i];
    if (def.index != static_cast<int>(i)) {
      throw ValidationError("class set: indices must be contiguous from 0, got " +
                            std::to_string(def.index) + " at position " + std::to_string(i));
    }
    if (def.name.empty() || !names.insert(def.name).second) {
      throw ValidationError("class set: empty or duplicate class name '" + def.name + "'");
    }
    if (def.index == static_cast<int>(ignore_index_)) {
      throw ValidationError("class set: ignore index " + std::to_string(ignore_index_) +
                            " collides with a class index");
    }
  }
}

ClassSet load_class_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open class file: " + path.string());
  }
  std::vector<ClassDef> classes;
  int ignore_index = 255;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    std::vector<std::string> fields = split_fields(line, '\t');
    if (fields.size() == 2 && fields[0] == "ignore") {
      ignore_index = parse_int(fields[1], where);
      if (ignore_index < 0 || ignore_index > 255) {
        throw ParseError(where + ": ignore index must be in [0,255]");
      }
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(where + ": expected index<TAB>name<TAB>#RRGGBB");
    }
    ClassDef def;
    def.index = parse_int(fields[0], where);
    def.name = fields[1];
    def.color = parse_hex_color(fields[2], where);
    if (def.index < 0 || def.index > 254) {
      throw ParseError(where + ": class index must be in [0,254]");
    }
    classes.push_back(std::move(def));
  }
  if (classes.empty()) {
    throw ParseError(path.filename().string() + ": no classes defined");
  }
  return ClassSet(std::move(classes), static_cast<std::uint8_t>(ignore_index));
}

}  // namespace segfuse
