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
#include "segfuse/augment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "segfuse/errors.hpp"

namespace segfuse {

void validate(const AugSpec& spec) {
  if (spec.crop_size < 1) {
    throw ValidationError("crop_size must be >= 1, got " + std::to_string(spec.crop_size));
  }
  if (!(spec.flip_probability >= 0.0 && spec.flip_probability <= 1.0)) {
    throw ValidationError("flip_probability must be in [0,1]");
  }
  for (double f : spec.contrast_factors) {
    if (!(f > 0.0)) {
      throw InvalidFactor("contrast factor must be > 0, got " + std::to_string(f));
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  const std::string t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError(where + ": bad numeric value '" + t + "'");
  }
  return value;
}

// from_chars for double is incomplete on some libstdc++ versions; strtod it.
double parse_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw ParseError(where + ": bad numeric value '" + t + "'");
  }
  return value;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, const std::string& where, Parse parse) {
  std::vector<T> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse(item, where));
  }
  return out;
}

std::string format_factor(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", f);
  return buf;
}

}  // namespace

AugSpec load_aug_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open augmentation spec: " + path.string());
  }
  AugSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError(where + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = stripped.substr(eq + 1);
    if (key == "crop_size") {
      spec.crop_size = parse_number<int>(value, where);
    } else if (key == "flip_probability") {
      spec.flip_probability = parse_double(value, where);
    } else if (key == "pad_image_fill" || key == "pad_label_fill") {
      const int fill = parse_number<int>(value, where);
      if (fill < 0 || fill > 255) {
        throw ParseError(where + ": " + key + " must be in [0,255]");
      }
      (key == "pad_image_fill" ? spec.pad_image_fill : spec.pad_label_fill) =
          static_cast<std::uint8_t>(fill);
    } else if (key == "contrast_factors") {
      spec.contrast_factors = parse_list<double>(value, where, parse_double);
    } else if (key == "brightness_deltas") {
      spec.brightness_deltas =
          parse_list<int>(value, where, [](const std::string& s, const std::string& w) {
            return parse_number<int>(s, w);
          });
    } else if (key == "master_seed") {
      spec.master_seed = parse_number<std::uint64_t>(value, where);
    } else {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
  validate(spec);
  return spec;
}

std::string serialize(const AugSpec& spec) {
  std::ostringstream out;
  out << "crop_size = " << spec.crop_size << "\n";
  out << "flip_probability = " << spec.flip_probability << "\n";
  out << "pad_image_fill = " << int(spec.pad_image_fill) << "\n";
  out << "pad_label_fill = " << int(spec.pad_label_fill) << "\n";
  out << "contrast_factors =";
  for (std::size_t i = 0; i < spec.contrast_factors.size(); ++i) {
    out << (i ? ", " : " ") << format_factor(spec.contrast_factors[i]);
  }
  out << "\n";
  out << "brightness_deltas =";
  for (std::size_t i = 0; i < spec.brightness_deltas.size(); ++i) {
    out << (i ? ", " : " ") << spec.brightness_deltas[i];
  }
  out << "\n";
  out << "master_seed = " << spec.master_seed << "\n";
  return out.str();
}

ImageBuffer adjust_brightness(const ImageBuffer& img, int delta) {
  ImageBuffer out;
  out.channels = img.channels;
  out.pixels = (img.pixels.cast<int>().array() + delta)
                   .cwiseMax(0)
                   .cwiseMin(255)
                   .cast<std::uint8_t>()
                   .matrix();
  return out;
}

ImageBuffer adjust_contrast(const ImageBuffer& img, double factor) {
  if (!(factor > 0.0)) {
    throw InvalidFactor("contrast factor must be > 0, got " + std::to_string(factor));
  }
  // One 256-entry table; lround is round-half-away-from-zero.
  std::array<std::uint8_t, 256> lut;
  for (int v = 0; v < 256; ++v) {
    const long mapped = std::lround(128.0 + factor * (v - 128));
    lut[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(std::clamp(mapped, 0L, 255L));
  }
  ImageBuffer out;
  out.channels = img.channels;
  out.pixels = img.pixels.unaryExpr([&lut](std::uint8_t v) { return lut[v]; });
  return out;
}

ImageBuffer flip_horizontal(const ImageBuffer& img) {
  ImageBuffer out;
  out.channels = img.channels;
  if (img.channels == 1) {
    out.pixels = img.pixels.rowwise().reverse();
    return out;
  }
  // Interleaved channels: reverse pixel order, keep channel order.
  const Eigen::Index w = img.width();
  const Eigen::Index h = img.height();
  const int ch = img.channels;
  out.pixels.resize(h, w * ch);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        out.pixels(y, x * ch + c) = img.pixels(y, (w - 1 - x) * ch + c);
      }
    }
  }
  return out;
}

LabelMap flip_horizontal(const LabelMap& map) {
  LabelMap out;
  out.ignore_index = map.ignore_index;
  out.values = map.values.rowwise().reverse();
  return out;
}

SamplePair flip_horizontal(const SamplePair& pair) {
  return SamplePair{flip_horizontal(pair.image), flip_horizontal(pair.label)};
}

SamplePair pad_to_min(const SamplePair& pair, int min_w, int min_h, const AugSpec& spec) {
  const Eigen::Index w = pair.image.width();
  const Eigen::Index h = pair.image.height();
  const Eigen::Index new_w = std::max<Eigen::Index>(w, min_w);
  const Eigen::Index new_h = std::max<Eigen::Index>(h, min_h);
  if (new_w == w && new_h == h) return pair;

  SamplePair out;
  out.image.channels = pair.image.channels;
  out.image.pixels =
      ByteGrid::Constant(new_h, new_w * pair.image.channels, spec.pad_image_fill);
  out.image.pixels.topLeftCorner(h, w * pair.image.channels) = pair.image.pixels;
  out.label.ignore_index = pair.label.ignore_index;
  out.label.values = ByteGrid::Constant(new_h, new_w, spec.pad_label_fill);
  out.label.values.topLeftCorner(h, w) = pair.label.values;
  return out;
}

SamplePair random_crop(const SamplePair& pair, const AugSpec& spec, RandomStream& stream) {
  const SamplePair padded = pad_to_min(pair, spec.crop_size, spec.crop_size, spec);
  const Eigen::Index crop = spec.crop_size;
  const Eigen::Index max_x = padded.image.width() - crop;
  const Eigen::Index max_y = padded.image.height() - crop;
  const auto x0 = static_cast<Eigen::Index>(
      stream.uniform_index(static_cast<std::uint64_t>(max_x) + 1));
  const auto y0 = static_cast<Eigen::Index>(
      stream.uniform_index(static_cast<std::uint64_t>(max_y) + 1));

  SamplePair out;
  out.image.channels = padded.image.channels;
  out.image.pixels =
      padded.image.pixels.block(y0, x0 * padded.image.channels, crop, crop * padded.image.channels);
  out.label.ignore_index = padded.label.ignore_index;
  out.label.values = padded.label.values.block(y0, x0, crop, crop);
  return out;
}

SamplePair random_flip(const SamplePair& pair, const AugSpec& spec, RandomStream& stream) {
  const double u = stream.uniform_double();
  return u < spec.flip_probability ? flip_horizontal(pair) : pair;
}

std::vector<ImageBuffer> offline_expand_image(const ImageBuffer& img, const AugSpec& spec) {
  std::vector<ImageBuffer> out;
  out.reserve(1 + spec.contrast_factors.size() + spec.brightness_deltas.size());
  out.push_back(img);
  for (double f : spec.contrast_factors) {
    out.push_back(adjust_contrast(img, f));
  }
  for (int d : spec.brightness_deltas) {
    out.push_back(adjust_brightness(img, d));
  }
  return out;
}

std::vector<SamplePair> offline_expand(const SamplePair& pair, const AugSpec& spec) {
  std::vector<ImageBuffer> images = offline_expand_image(pair.image, spec);
  std::vector<SamplePair> out;
  out.reserve(images.size());
  for (ImageBuffer& img : images) {
    out.push_back(SamplePair{std::move(img), pair.label});
  }
  return out;
}

std::vector<std::string> offline_variant_tags(const AugSpec& spec) {
  std::vector<std::string> tags;
  tags.reserve(1 + spec.contrast_factors.size() + spec.brightness_deltas.size());
  tags.emplace_back("orig");
  for (double f : spec.contrast_factors) {
    tags.push_back("c" + format_factor(f));
  }
  for (int d : spec.brightness_deltas) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "b%+d", d);
    tags.emplace_back(buf);
  }
  return tags;
}

}  // namespace segfuse
