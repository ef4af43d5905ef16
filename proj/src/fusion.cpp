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
#include "segfuse/fusion.hpp"

#include <array>
#include <cstdint>
#include <string>

#include "segfuse/errors.hpp"

namespace segfuse {

namespace {

void check_stack(const VoteStack& stack) {
  if (stack.members.empty()) {
    throw EmptyStack("vote stack has no members");
  }
  const LabelMap& first = stack.members.front();
  for (std::size_t k = 1; k < stack.members.size(); ++k) {
    const LabelMap& m = stack.members[k];
    if (!m.same_shape(first)) {
      const std::string id = k < stack.member_ids.size() ? stack.member_ids[k]
                                                         : "#" + std::to_string(k);
      throw MemberShapeMismatch("member " + id + " is " + std::to_string(m.width()) + "x" +
                                std::to_string(m.height()) + ", expected " +
                                std::to_string(first.width()) + "x" +
                                std::to_string(first.height()));
    }
  }
}

// Per-pixel tally over the 256 possible labels. The running (count, label)
// maximum prefers the smaller label on equal counts, which yields the
// smallest max-count label regardless of member order.
template <typename PixelFn>
void tallyize(const VoteStack& stack, PixelFn&& per_pixel) {
  const std::size_t num_members = stack.members.size();
  const Eigen::Index n = stack.members.front().values.size();
  std::array<std::uint32_t, 256> counts{};
  for (Eigen::Index i = 0; i < n; ++i) {
    std::uint32_t best_count = 0;
    std::uint8_t best_label = 0;
    for (std::size_t k = 0; k < num_members; ++k) {
      const std::uint8_t v = stack.members[k].values.data()[i];
      const std::uint32_t c = ++counts[v];
      if (c > best_count || (c == best_count && v < best_label)) {
        best_count = c;
        best_label = v;
      }
    }
    per_pixel(i, best_label, best_count);
    for (std::size_t k = 0; k < num_members; ++k) {
      counts[stack.members[k].values.data()[i]] = 0;
    }
  }
}

}  // namespace

LabelMap hard_vote(const VoteStack& stack) {
  check_stack(stack);
  const LabelMap& first = stack.members.front();
  LabelMap out;
  out.ignore_index = first.ignore_index;
  out.values.resize(first.values.rows(), first.values.cols());
  std::uint8_t* dst = out.values.data();
  tallyize(stack, [dst](Eigen::Index i, std::uint8_t label, std::uint32_t) { dst[i] = label; });
  return out;
}

Grid<double> agreement_map(const VoteStack& stack) {
  check_stack(stack);
  const LabelMap& first = stack.members.front();
  const double k = static_cast<double>(stack.members.size());
  Grid<double> out(first.values.rows(), first.values.cols());
  double* dst = out.data();
  tallyize(stack, [dst, k](Eigen::Index i, std::uint8_t, std::uint32_t count) {
    dst[i] = static_cast<double>(count) / k;
  });
  return out;
}

}  // namespace segfuse
