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

// segfuse command-line surface: augment -> predict -> fuse -> evaluate ->
// report, plus the verify/stats/colorize utilities.
//
// Exit codes: 0 success, 2 usage error, 3 validation failure, 4 I/O failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "segfuse/augment.hpp"
#include "segfuse/class_set.hpp"
#include "segfuse/dataset.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/parallel.hpp"
#include "segfuse/pipeline.hpp"
#include "segfuse/report.hpp"

namespace fs = std::filesystem;
using namespace segfuse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

std::string fixed4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

void print_row(const ClassSet& cs, const ReportRow& row, double accuracy) {
  std::size_t name_width = 8;
  for (const ClassDef& def : cs.classes()) {
    name_width = std::max(name_width, def.name.size());
  }
  for (int c = 0; c < cs.size(); ++c) {
    const std::optional<double>& iou = row.per_class_iou[static_cast<std::size_t>(c)];
    std::printf("class %3d  %-*s  %s\n", c, static_cast<int>(name_width),
                cs.at(c).name.c_str(), iou ? fixed4(*iou).c_str() : "absent");
  }
  std::printf("pixels          %lld\n", static_cast<long long>(row.pixel_count));
  std::printf("pixel_accuracy  %s\n", fixed4(accuracy).c_str());
  std::printf("mIoU            %s\n", fixed4(row.miou).c_str());
}

int run_evaluate(const std::string& gt, const std::string& pred, const std::string& classes,
                 const std::string& csv, const std::string& id, int threads) {
  const ClassSet cs = load_class_set(classes);
  const EvaluateResult result =
      evaluate_directories(gt, pred, cs, resolve_thread_count(threads), id);
  print_row(cs, result.row, pixel_accuracy(result.matrix));
  if (!csv.empty()) {
    write_text_file(csv, render_csv({}, result.row));
  }
  return kExitOk;
}

int run_fuse(const std::vector<std::string>& members, const std::string& out, int threads) {
  std::vector<fs::path> dirs(members.begin(), members.end());
  const std::size_t count = fuse_directories(dirs, out, resolve_thread_count(threads));
  std::printf("fused %zu map(s) from %zu member(s) into %s\n", count, dirs.size(),
              out.c_str());
  return kExitOk;
}

int run_augment(const std::string& manifest_path, const std::string& spec_path,
                const std::string& out, int threads) {
  const DatasetManifest manifest = load_manifest(manifest_path);
  const AugSpec spec = load_aug_spec(spec_path);
  const DatasetManifest expanded =
      expand_offline(manifest, spec, out, resolve_thread_count(threads));
  std::int64_t train_in = 0;
  for (const SceneRecord& rec : manifest.records) {
    if (rec.split == Split::kTrain) ++train_in;
  }
  std::int64_t train_out = 0;
  for (const SceneRecord& rec : expanded.records) {
    if (rec.split == Split::kTrain) ++train_out;
  }
  std::printf("expanded %lld train record(s) into %lld; wrote %s\n",
              static_cast<long long>(train_in), static_cast<long long>(train_out),
              (fs::path(out) / "manifest.tsv").string().c_str());
  return kExitOk;
}

ClassSet class_set_for(const DatasetManifest& manifest, const std::string& override_path,
                       const std::string& subcommand) {
  if (!override_path.empty()) return load_class_set(override_path);
  if (!manifest.class_set_path.empty()) {
    return load_class_set(manifest.resolve(manifest.class_set_path));
  }
  throw CLI::ValidationError(subcommand,
                             "no class file: pass --classes or add a classes line to the manifest");
}

void print_issues(const std::vector<VerifyIssue>& issues) {
  for (const VerifyIssue& issue : issues) {
    std::fprintf(stderr, "%s  %s/%s  %s  %s\n", std::string(to_string(issue.kind)).c_str(),
                 issue.scene_id.c_str(), issue.frame_id.c_str(), issue.path.c_str(),
                 issue.detail.c_str());
  }
}

int run_verify(const std::string& manifest_path, const std::string& classes, int threads) {
  const DatasetManifest manifest = load_manifest(manifest_path);
  const ClassSet cs = class_set_for(manifest, classes, "verify");
  const VerifyReport report = verify_files(manifest, cs, resolve_thread_count(threads));
  if (!report.ok()) {
    print_issues(report.issues);
    std::fprintf(stderr, "%zu issue(s) across %zu record(s)\n", report.issues.size(),
                 manifest.records.size());
    return kExitValidation;
  }
  std::printf("OK: %zu record(s) verified\n", manifest.records.size());
  return kExitOk;
}

int run_stats(const std::string& manifest_path, const std::string& classes, bool per_scene,
              int threads) {
  const DatasetManifest manifest = load_manifest(manifest_path);
  const ClassSet cs = class_set_for(manifest, classes, "stats");
  const CorpusStats stats = corpus_stats(manifest, cs, resolve_thread_count(threads));

  std::printf("records  %lld", static_cast<long long>(stats.record_count()));
  for (const auto& [split, count] : stats.records_per_split) {
    std::printf("  %s %lld", std::string(to_string(split)).c_str(),
                static_cast<long long>(count));
  }
  std::printf("\n");
  std::printf("scenes   %zu\n", stats.frames_per_scene.size());
  if (per_scene) {
    for (const auto& [scene, frames] : stats.frames_per_scene) {
      std::printf("scene %s  %lld frame(s)\n", scene.c_str(), static_cast<long long>(frames));
    }
  }
  std::printf("label pixels  %lld  ignored %lld (%s)  out-of-range %lld\n",
              static_cast<long long>(stats.total_pixels),
              static_cast<long long>(stats.ignored_pixels),
              fixed4(stats.ignored_fraction()).c_str(),
              static_cast<long long>(stats.out_of_range_pixels));
  for (int c = 0; c < cs.size(); ++c) {
    std::printf("class %3d  %-16s  %lld\n", c, cs.at(c).name.c_str(),
                static_cast<long long>(stats.class_pixels[static_cast<std::size_t>(c)]));
  }
  if (!stats.issues.empty()) {
    print_issues(stats.issues);
    return kExitValidation;
  }
  return kExitOk;
}

int run_predict(const std::string& mode, const std::string& images, const std::string& labels,
                const std::string& out, const std::string& classes, int constant_class,
                double error_rate, std::uint64_t seed, int threads) {
  const ClassSet cs = load_class_set(classes);
  const int workers = resolve_thread_count(threads);
  if (mode == "constant" || mode == "nearest-color") {
    if (images.empty()) {
      throw CLI::ValidationError("predict", "--images is required for mode " + mode);
    }
    const BaselinePredictor predictor =
        mode == "constant"
            ? BaselinePredictor::constant(static_cast<std::uint8_t>(constant_class), cs)
            : BaselinePredictor::nearest_color(cs);
    predict_directory(predictor, images, out, workers);
  } else if (mode == "perturb") {
    if (labels.empty()) {
      throw CLI::ValidationError("predict", "--labels is required for mode perturb");
    }
    perturb_directory(labels, out, error_rate, cs.size(), seed, workers);
  } else {
    throw CLI::ValidationError("predict", "unknown mode '" + mode + "'");
  }
  return kExitOk;
}

int run_colorize(const std::string& labels, const std::string& classes, const std::string& out,
                 int threads) {
  const ClassSet cs = load_class_set(classes);
  colorize_directory(labels, cs, out, resolve_thread_count(threads));
  return kExitOk;
}

int run_report(const std::vector<std::string>& row_args, double fused_miou,
               const std::string& fused_id, const std::string& out_path,
               const std::string& csv_path) {
  std::vector<ReportRow> rows;
  for (const std::string& arg : row_args) {
    const std::size_t pos = arg.rfind('=');
    if (pos == std::string::npos || pos == 0) {
      throw CLI::ValidationError("report", "--row expects NAME=MIOU, got '" + arg + "'");
    }
    ReportRow row;
    row.model_id = arg.substr(0, pos);
    const std::string value = arg.substr(pos + 1);
    char* end = nullptr;
    row.miou = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      throw CLI::ValidationError("report", "bad mIoU in '" + arg + "'");
    }
    rows.push_back(std::move(row));
  }
  ReportRow fused;
  fused.model_id = fused_id;
  fused.miou = fused_miou;

  const std::string table = render_table(rows, fused);
  if (out_path.empty()) {
    std::fputs(table.c_str(), stdout);
  } else {
    write_text_file(out_path, table);
  }
  if (!csv_path.empty()) {
    write_text_file(csv_path, render_csv(rows, fused));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"segfuse: offline augmentation, hard-voting fusion, and mIoU evaluation "
               "for paired adverse-weather segmentation corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "segfuse 0.1.0");

  int exit_code = kExitOk;

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against ground truth");
  std::string eval_gt, eval_pred, eval_classes, eval_csv, eval_id;
  int eval_threads = 0;
  evaluate_cmd->add_option("--gt", eval_gt, "Ground-truth label-map directory")->required();
  evaluate_cmd->add_option("--pred", eval_pred, "Prediction label-map directory")->required();
  evaluate_cmd->add_option("--classes", eval_classes, "Class-definition file")->required();
  evaluate_cmd->add_option("--csv", eval_csv, "Write a model,miou CSV row here");
  evaluate_cmd->add_option("--id", eval_id, "Model id for the report (default: --pred name)");
  evaluate_cmd->add_option("--threads", eval_threads, "Worker threads (0 = auto)");
  evaluate_cmd->callback([&] {
    exit_code = run_evaluate(eval_gt, eval_pred, eval_classes, eval_csv, eval_id, eval_threads);
  });

  // fuse
  auto* fuse_cmd = app.add_subcommand("fuse", "Hard-vote aligned prediction directories");
  std::vector<std::string> fuse_members;
  std::string fuse_out;
  int fuse_threads = 0;
  fuse_cmd->add_option("--member", fuse_members, "Member prediction directory (repeatable)")
      ->required();
  fuse_cmd->add_option("--out", fuse_out, "Output directory")->required();
  fuse_cmd->add_option("--threads", fuse_threads, "Worker threads (0 = auto)");
  fuse_cmd->callback([&] { exit_code = run_fuse(fuse_members, fuse_out, fuse_threads); });

  // augment
  auto* augment_cmd = app.add_subcommand("augment", "Offline photometric corpus expansion");
  std::string aug_manifest, aug_spec, aug_out;
  int aug_threads = 0;
  augment_cmd->add_option("--manifest", aug_manifest, "Dataset manifest (TSV)")->required();
  augment_cmd->add_option("--spec", aug_spec, "Augmentation spec (key=value)")->required();
  augment_cmd->add_option("--out", aug_out, "Output directory")->required();
  augment_cmd->add_option("--threads", aug_threads, "Worker threads (0 = auto)");
  augment_cmd->callback(
      [&] { exit_code = run_augment(aug_manifest, aug_spec, aug_out, aug_threads); });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check every manifest record's files");
  std::string verify_manifest, verify_classes;
  int verify_threads = 0;
  verify_cmd->add_option("--manifest", verify_manifest, "Dataset manifest (TSV)")->required();
  verify_cmd->add_option("--classes", verify_classes, "Class file (overrides manifest)");
  verify_cmd->add_option("--threads", verify_threads, "Worker threads (0 = auto)");
  verify_cmd->callback(
      [&] { exit_code = run_verify(verify_manifest, verify_classes, verify_threads); });

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics from a manifest");
  std::string stats_manifest, stats_classes;
  bool stats_per_scene = false;
  int stats_threads = 0;
  stats_cmd->add_option("--manifest", stats_manifest, "Dataset manifest (TSV)")->required();
  stats_cmd->add_option("--classes", stats_classes, "Class file (overrides manifest)");
  stats_cmd->add_flag("--per-scene", stats_per_scene, "List frame counts per scene");
  stats_cmd->add_option("--threads", stats_threads, "Worker threads (0 = auto)");
  stats_cmd->callback([&] {
    exit_code = run_stats(stats_manifest, stats_classes, stats_per_scene, stats_threads);
  });

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "Baseline predictors (no model needed)");
  std::string predict_mode = "constant", predict_images, predict_labels, predict_out,
              predict_classes;
  int predict_class = 0, predict_threads = 0;
  double predict_error_rate = 0.2;
  std::uint64_t predict_seed = 0;
  predict_cmd->add_option("--mode", predict_mode, "constant | nearest-color | perturb");
  predict_cmd->add_option("--images", predict_images, "Input image directory");
  predict_cmd->add_option("--labels", predict_labels, "Input label directory (perturb)");
  predict_cmd->add_option("--out", predict_out, "Output directory")->required();
  predict_cmd->add_option("--classes", predict_classes, "Class-definition file")->required();
  predict_cmd->add_option("--class", predict_class, "Class index for constant mode")
      ->check(CLI::Range(0, 255));
  predict_cmd->add_option("--error-rate", predict_error_rate, "Perturbation rate (perturb)");
  predict_cmd->add_option("--seed", predict_seed, "Master seed (perturb)");
  predict_cmd->add_option("--threads", predict_threads, "Worker threads (0 = auto)");
  predict_cmd->callback([&] {
    exit_code = run_predict(predict_mode, predict_images, predict_labels, predict_out,
                            predict_classes, predict_class, predict_error_rate, predict_seed,
                            predict_threads);
  });

  // colorize
  auto* colorize_cmd = app.add_subcommand("colorize", "Palette rendering of label maps");
  std::string colorize_labels, colorize_classes, colorize_out;
  int colorize_threads = 0;
  colorize_cmd->add_option("--labels", colorize_labels, "Label-map directory")->required();
  colorize_cmd->add_option("--classes", colorize_classes, "Class-definition file")->required();
  colorize_cmd->add_option("--out", colorize_out, "Output directory")->required();
  colorize_cmd->add_option("--threads", colorize_threads, "Worker threads (0 = auto)");
  colorize_cmd->callback([&] {
    exit_code = run_colorize(colorize_labels, colorize_classes, colorize_out, colorize_threads);
  });

  // report
  auto* report_cmd = app.add_subcommand("report", "Comparison table of member and fused scores");
  std::vector<std::string> report_rows;
  double report_fused = 0.0;
  std::string report_fused_id = "Voting results", report_out, report_csv;
  report_cmd->add_option("--row", report_rows, "Member row as NAME=MIOU (repeatable)")
      ->required();
  report_cmd->add_option("--fused", report_fused, "Fused ensemble mIoU")->required();
  report_cmd->add_option("--fused-id", report_fused_id, "Label for the fused row");
  report_cmd->add_option("--out", report_out, "Write the table here instead of stdout");
  report_cmd->add_option("--csv", report_csv, "Also write a model,miou CSV");
  report_cmd->callback([&] {
    exit_code = run_report(report_rows, report_fused, report_fused_id, report_out, report_csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return exit_code;
}
