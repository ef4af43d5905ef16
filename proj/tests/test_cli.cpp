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

#include <string>

#include "helpers.hpp"
#include "segfuse/label_map.hpp"
#include "segfuse/png_io.hpp"

using namespace segfuse;
using namespace segfuse::testing;

namespace {

constexpr const char* kTwoClasses =
    "0\tzero\t#000000\n"
    "1\tone\t#ffffff\n";

LabelMap map_1x4(std::initializer_list<int> values) {
  LabelMap map = make_label_map(4, 1);
  Eigen::Index i = 0;
  for (int v : values) map.values.data()[i++] = static_cast<std::uint8_t>(v);
  return map;
}

}  // namespace

TEST_CASE("cli: evaluate of the worked example prints 0.5833") {
  TempDir dir("cli_eval");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "gt");
  fs::create_directories(dir / "pred");
  write_label_png(dir.path() / "gt" / "x.png", map_1x4({0, 0, 1, 1}));
  write_label_png(dir.path() / "pred" / "x.png", map_1x4({0, 1, 1, 1}));

  std::string out;
  const int code = run_command(cli_bin() + " evaluate --gt " + quoted(dir / "gt") +
                                   " --pred " + quoted(dir / "pred") + " --classes " +
                                   quoted(dir / "classes.tsv") + " --csv " +
                                   quoted(dir / "row.csv") + " --id worked",
                               &out);
  CHECK(code == 0);
  CHECK(out.find("mIoU            0.5833") != std::string::npos);
  CHECK(out.find("pixel_accuracy  0.7500") != std::string::npos);
  CHECK(read_text(dir / "row.csv") == "model,miou\nworked,0.5833\n");
}

TEST_CASE("cli: evaluate perfect prediction prints 1.0000") {
  TempDir dir("cli_eval_perfect");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "gt");
  write_label_png(dir.path() / "gt" / "a.png", map_1x4({0, 1, 0, 1}));

  std::string out;
  const int code = run_command(cli_bin() + " evaluate --gt " + quoted(dir / "gt") +
                                   " --pred " + quoted(dir / "gt") + " --classes " +
                                   quoted(dir / "classes.tsv"),
                               &out);
  CHECK(code == 0);
  CHECK(out.find("1.0000") != std::string::npos);
}

TEST_CASE("cli: exit codes distinguish usage, validation, and I/O failures") {
  TempDir dir("cli_codes");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "gt");
  fs::create_directories(dir / "pred");
  write_label_png(dir.path() / "gt" / "only_gt.png", map_1x4({0, 0, 1, 1}));
  write_label_png(dir.path() / "pred" / "only_pred.png", map_1x4({0, 0, 1, 1}));

  std::string out;
  // Unknown flag: usage error.
  CHECK(run_command(cli_bin() + " evaluate --nonsense", &out) == 2);
  // No subcommand: usage error.
  CHECK(run_command(cli_bin(), &out) == 2);
  // Disjoint file names: validation failure.
  CHECK(run_command(cli_bin() + " evaluate --gt " + quoted(dir / "gt") + " --pred " +
                        quoted(dir / "pred") + " --classes " + quoted(dir / "classes.tsv"),
                    &out) == 3);
  // Missing directory: I/O failure.
  CHECK(run_command(cli_bin() + " evaluate --gt " + quoted(dir / "gt") + " --pred " +
                        quoted(dir / "missing") + " --classes " + quoted(dir / "classes.tsv"),
                    &out) == 4);
  // Help exits 0.
  CHECK(run_command(cli_bin() + " --help", &out) == 0);
}

TEST_CASE("cli: fuse majority and single-member identity") {
  TempDir dir("cli_fuse");
  fs::create_directories(dir / "m0");
  fs::create_directories(dir / "m1");
  fs::create_directories(dir / "m2");
  write_label_png(dir.path() / "m0" / "f.png", make_label_map(4, 4, 0));
  write_label_png(dir.path() / "m1" / "f.png", make_label_map(4, 4, 1));
  write_label_png(dir.path() / "m2" / "f.png", make_label_map(4, 4, 1));

  std::string out;
  const int code = run_command(cli_bin() + " fuse --member " + quoted(dir / "m0") +
                                   " --member " + quoted(dir / "m1") + " --member " +
                                   quoted(dir / "m2") + " --out " + quoted(dir / "fused"),
                               &out);
  CHECK(code == 0);
  CHECK(read_label_png(dir.path() / "fused" / "f.png") == make_label_map(4, 4, 1));

  const int single = run_command(cli_bin() + " fuse --member " + quoted(dir / "m0") +
                                     " --out " + quoted(dir / "copy"),
                                 &out);
  CHECK(single == 0);
  CHECK(read_text(dir / "copy" / "f.png") == read_text(dir / "m0" / "f.png"));
}

TEST_CASE("cli: report renders the golden table and CSV") {
  TempDir dir("cli_report");
  std::string out;
  const int code = run_command(
      cli_bin() +
          " report --row iter3000=0.4040 --row iter3500=0.4198 --row iter4000=0.4184"
          " --fused 0.4371 --csv " +
          quoted(dir / "rows.csv"),
      &out);
  CHECK(code == 0);
  CHECK(out == read_text(fs::path(SEGFUSE_GOLDEN_DIR) / "table1.txt"));
  CHECK(read_text(dir / "rows.csv") ==
        "model,miou\niter3000,0.4040\niter3500,0.4198\niter4000,0.4184\nVoting results,0.4371\n");

  CHECK(run_command(cli_bin() + " report --row bad --fused 0.5", &out) == 2);
}

TEST_CASE("cli: predict constant mode writes uniform maps") {
  TempDir dir("cli_predict");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "images");
  RandomStream stream = derive_stream(91, "cli-predict");
  write_image_png(dir.path() / "images" / "a.png", random_image(stream, 5, 4, 3));

  std::string out;
  const int code = run_command(cli_bin() + " predict --mode constant --class 1 --images " +
                                   quoted(dir / "images") + " --out " + quoted(dir / "preds") +
                                   " --classes " + quoted(dir / "classes.tsv"),
                               &out);
  CHECK(code == 0);
  CHECK(read_label_png(dir.path() / "preds" / "a.png") == make_label_map(5, 4, 1));

  CHECK(run_command(cli_bin() + " predict --mode bogus --out x --classes " +
                        quoted(dir / "classes.tsv"),
                    &out) == 2);
}

TEST_CASE("cli: SEGFUSE_THREADS env var is accepted as the thread fallback") {
  TempDir dir("cli_env");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "gt");
  write_label_png(dir.path() / "gt" / "a.png", map_1x4({0, 1, 0, 1}));

  std::string out;
  const int code = run_command("SEGFUSE_THREADS=2 " + cli_bin() + " evaluate --gt " +
                                   quoted(dir / "gt") + " --pred " + quoted(dir / "gt") +
                                   " --classes " + quoted(dir / "classes.tsv"),
                               &out);
  CHECK(code == 0);
  CHECK(out.find("1.0000") != std::string::npos);
}

TEST_CASE("cli: verify reports issues and exits 3") {
  TempDir dir("cli_verify");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "d");
  write_label_png(dir.path() / "d" / "l.png", map_1x4({0, 1, 0, 1}));
  write_image_png(dir.path() / "d" / "img.png", make_image(4, 1, 3, 100));
  write_text(dir / "manifest.tsv",
             "classes\tclasses.tsv\n"
             "s1\tf1\td/img.png\td/img.png\td/l.png\ttrain\n"
             "s1\tf2\td/img.png\td/missing.png\td/l.png\tval\n");

  std::string out;
  const int good = run_command(cli_bin() + " verify --manifest " + quoted(dir / "manifest.tsv"),
                               &out);
  CHECK(good == 3);
  CHECK(out.find("MissingFile") != std::string::npos);

  write_text(dir / "clean.tsv",
             "classes\tclasses.tsv\n"
             "s1\tf1\td/img.png\td/img.png\td/l.png\ttrain\n");
  CHECK(run_command(cli_bin() + " verify --manifest " + quoted(dir / "clean.tsv"), &out) == 0);
  CHECK(out.find("OK") != std::string::npos);
}

TEST_CASE("cli: stats prints split counts and histogram") {
  TempDir dir("cli_stats");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "d");
  write_label_png(dir.path() / "d" / "l.png", map_1x4({0, 1, 1, 1}));
  write_image_png(dir.path() / "d" / "img.png", make_image(4, 1, 3, 10));
  write_text(dir / "manifest.tsv",
             "classes\tclasses.tsv\n"
             "s1\tf1\td/img.png\td/img.png\td/l.png\ttrain\n");

  std::string out;
  CHECK(run_command(cli_bin() + " stats --manifest " + quoted(dir / "manifest.tsv"), &out) == 0);
  CHECK(out.find("records  1") != std::string::npos);
  CHECK(out.find("train 1") != std::string::npos);
  CHECK(out.find("scenes   1") != std::string::npos);
}

TEST_CASE("cli: colorize writes palette renderings") {
  TempDir dir("cli_colorize");
  write_text(dir / "classes.tsv", kTwoClasses);
  fs::create_directories(dir / "labels");
  write_label_png(dir.path() / "labels" / "l.png", make_label_map(3, 3, 1));

  std::string out;
  const int code = run_command(cli_bin() + " colorize --labels " + quoted(dir / "labels") +
                                   " --classes " + quoted(dir / "classes.tsv") + " --out " +
                                   quoted(dir / "color"),
                               &out);
  CHECK(code == 0);
  const ImageBuffer img = read_image_png(dir.path() / "color" / "l.png");
  CHECK(img.at(0, 0, 0) == 255);
  CHECK(img.at(0, 0, 1) == 255);
  CHECK(img.at(0, 0, 2) == 255);
}
