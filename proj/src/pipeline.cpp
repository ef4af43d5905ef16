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
#include "segfuse/pipeline.hpp"

#include <algorithm>
#include <set>

#include "segfuse/errors.hpp"
#include "segfuse/fusion.hpp"
#include "segfuse/parallel.hpp"
#include "segfuse/png_io.hpp"

namespace segfuse {

namespace fs = std::filesystem;

std::vector<std::string> list_png_names(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::string> names;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      names.push_back(entry.path().filename().string());
    }
  }
  if (ec) {
    throw IoError("cannot list directory " + dir.string() + ": " + ec.message());
  }
  std::sort(names.begin(), names.end());
  return names;
}

namespace {

void require_same_names(const std::vector<std::string>& reference, const fs::path& ref_dir,
                        const std::vector<std::string>& names, const fs::path& dir) {
  std::set<std::string> ref_set(reference.begin(), reference.end());
  std::set<std::string> set(names.begin(), names.end());
  for (const std::string& name : reference) {
    if (!set.count(name)) {
      throw MissingCounterpart("'" + name + "' is in " + ref_dir.string() + " but not in " +
                               dir.string());
    }
  }
  for (const std::string& name : names) {
    if (!ref_set.count(name)) {
      throw MissingCounterpart("'" + name + "' is in " + dir.string() + " but not in " +
                               ref_dir.string());
    }
  }
}

void create_output_dir(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  }
}

// Shared skeleton: one output file per input file, any chunking of the name
// list produces the same bytes.
template <typename Fn>
void transform_pngs(const fs::path& in_dir, const fs::path& out_dir, int threads, Fn&& fn) {
  const std::vector<std::string> names = list_png_names(in_dir);
  if (names.empty()) {
    throw ValidationError("no .png files in " + in_dir.string());
  }
  create_output_dir(out_dir);
  parallel_chunks(static_cast<std::int64_t>(names.size()), threads,
                  [&](std::int64_t begin, std::int64_t end, int) {
                    for (std::int64_t i = begin; i < end; ++i) {
                      fn(names[static_cast<std::size_t>(i)]);
                    }
                  });
}

}  // namespace

std::vector<std::string> paired_png_names(const fs::path& a, const fs::path& b) {
  const std::vector<std::string> names_a = list_png_names(a);
  const std::vector<std::string> names_b = list_png_names(b);
  if (names_a.empty() && names_b.empty()) {
    throw MissingCounterpart("no .png files in " + a.string() + " or " + b.string());
  }
  require_same_names(names_a, a, names_b, b);
  return names_a;
}

EvaluateResult evaluate_directories(const fs::path& gt_dir, const fs::path& pred_dir,
                                    const ClassSet& cs, int threads, std::string model_id) {
  const std::vector<std::string> names = paired_png_names(gt_dir, pred_dir);

  const int workers = std::max(1, threads);
  std::vector<ConfusionMatrix> partial(static_cast<std::size_t>(workers),
                                       ConfusionMatrix(cs.size()));
  parallel_chunks(static_cast<std::int64_t>(names.size()), workers,
                  [&](std::int64_t begin, std::int64_t end, int worker) {
                    ConfusionMatrix& cm = partial[static_cast<std::size_t>(worker)];
                    for (std::int64_t i = begin; i < end; ++i) {
                      const std::string& name = names[static_cast<std::size_t>(i)];
                      const LabelMap gt = read_label_png(gt_dir / name, cs.ignore_index());
                      const LabelMap pred = read_label_png(pred_dir / name, cs.ignore_index());
                      try {
                        accumulate(cm, gt, pred);
                      } catch (const DimensionMismatch& e) {
                        throw DimensionMismatch(name + ": " + e.what());
                      } catch (const ClassOutOfRange& e) {
                        throw ClassOutOfRange(name + ": " + e.what());
                      }
                    }
                  });

  ConfusionMatrix total = std::move(partial.front());
  for (std::size_t w = 1; w < partial.size(); ++w) {
    total = merge(total, partial[w]);
  }

  EvaluateResult result;
  result.row.model_id = model_id.empty() ? pred_dir.filename().string() : std::move(model_id);
  result.row.per_class_iou = iou_per_class(total);
  result.row.miou = miou(total);
  result.row.pixel_count = total.total();
  result.matrix = std::move(total);
  return result;
}

std::size_t fuse_directories(std::span<const fs::path> member_dirs, const fs::path& out_dir,
                             int threads) {
  if (member_dirs.empty()) {
    throw EmptyStack("no member directories given");
  }
  const std::vector<std::string> names = list_png_names(member_dirs.front());
  if (names.empty()) {
    throw ValidationError("no .png files in " + member_dirs.front().string());
  }
  for (std::size_t k = 1; k < member_dirs.size(); ++k) {
    require_same_names(names, member_dirs.front(), list_png_names(member_dirs[k]),
                       member_dirs[k]);
  }
  create_output_dir(out_dir);

  std::vector<std::string> member_ids;
  member_ids.reserve(member_dirs.size());
  for (const fs::path& dir : member_dirs) member_ids.push_back(dir.filename().string());

  parallel_chunks(static_cast<std::int64_t>(names.size()), threads,
                  [&](std::int64_t begin, std::int64_t end, int) {
                    for (std::int64_t i = begin; i < end; ++i) {
                      const std::string& name = names[static_cast<std::size_t>(i)];
                      VoteStack stack;
                      stack.member_ids = member_ids;
                      stack.members.reserve(member_dirs.size());
                      for (const fs::path& dir : member_dirs) {
                        stack.members.push_back(read_label_png(dir / name));
                      }
                      try {
                        write_label_png(out_dir / name, hard_vote(stack));
                      } catch (const MemberShapeMismatch& e) {
                        throw MemberShapeMismatch(name + ": " + e.what());
                      }
                    }
                  });
  return names.size();
}

void predict_directory(const BaselinePredictor& predictor, const fs::path& images_dir,
                       const fs::path& out_dir, int threads) {
  transform_pngs(images_dir, out_dir, threads, [&](const std::string& name) {
    const ImageBuffer img = read_image_png(images_dir / name);
    try {
      write_label_png(out_dir / name, predict(predictor, img));
    } catch (const ChannelMismatch& e) {
      throw ChannelMismatch(name + ": " + e.what());
    }
  });
}

void perturb_directory(const fs::path& labels_dir, const fs::path& out_dir, double error_rate,
                       int num_classes, std::uint64_t master_seed, int threads) {
  transform_pngs(labels_dir, out_dir, threads, [&](const std::string& name) {
    const LabelMap gt = read_label_png(labels_dir / name);
    RandomStream stream = derive_stream(master_seed, fs::path(name).stem().string());
    write_label_png(out_dir / name, perturb_labels(gt, error_rate, num_classes, stream));
  });
}

void colorize_directory(const fs::path& labels_dir, const ClassSet& cs, const fs::path& out_dir,
                        int threads) {
  transform_pngs(labels_dir, out_dir, threads, [&](const std::string& name) {
    const LabelMap map = read_label_png(labels_dir / name, cs.ignore_index());
    try {
      write_image_png(out_dir / name, colorize(map, cs));
    } catch (const ClassOutOfRange& e) {
      throw ClassOutOfRange(name + ": " + e.what());
    }
  });
}

}  // namespace segfuse
