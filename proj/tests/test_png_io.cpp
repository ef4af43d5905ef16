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
#include <doctest.h>

#include "helpers.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/png_io.hpp"

using namespace segfuse;
using namespace segfuse::testing;

TEST_CASE("PNG round trip preserves gray and RGB images bit-exactly") {
  TempDir dir("png");
  RandomStream stream = derive_stream(61, "png-roundtrip");
  for (int round = 0; round < 10; ++round) {
    const int channels = round % 2 == 0 ? 1 : 3;
    const ImageBuffer img = random_image(stream, 1 + static_cast<int>(stream.uniform_index(40)),
                                         1 + static_cast<int>(stream.uniform_index(40)), channels);
    const auto path = dir / ("img" + std::to_string(round) + ".png");
    write_image_png(path, img);
    CHECK(read_image_png(path) == img);
  }
}

TEST_CASE("label maps round trip through single-channel gray") {
  TempDir dir("png_label");
  RandomStream stream = derive_stream(62, "label-roundtrip");
  const LabelMap map = random_label_map(stream, 17, 9, 5, 0.2);
  write_label_png(dir / "label.png", map);
  CHECK(read_label_png(dir / "label.png") == map);
}

TEST_CASE("reading an RGB file as a label map fails") {
  TempDir dir("png_strict");
  RandomStream stream = derive_stream(63, "strict");
  write_image_png(dir / "rgb.png", random_image(stream, 4, 4, 3));
  CHECK_THROWS_AS(read_label_png(dir / "rgb.png"), IoError);
}

TEST_CASE("missing and corrupt files raise IoError") {
  TempDir dir("png_errors");
  CHECK_THROWS_AS(read_image_png(dir / "nope.png"), IoError);
  write_text(dir / "junk.png", "this is not a png");
  CHECK_THROWS_AS(read_image_png(dir / "junk.png"), IoError);
  CHECK_THROWS_AS(read_label_png(dir / "junk.png"), IoError);
}

TEST_CASE("identical content encodes to identical bytes") {
  TempDir dir("png_det");
  RandomStream stream = derive_stream(64, "determinism");
  const ImageBuffer img = random_image(stream, 33, 21, 3);
  write_image_png(dir / "a.png", img);
  write_image_png(dir / "b.png", img);
  CHECK(read_text(dir / "a.png") == read_text(dir / "b.png"));
}
