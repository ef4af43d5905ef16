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

#include <algorithm>

#include "helpers.hpp"
#include "segfuse/errors.hpp"
#include "segfuse/fusion.hpp"

using namespace segfuse;
using namespace segfuse::testing;

namespace {

LabelMap map_1x4(std::initializer_list<int> values) {
  LabelMap map = make_label_map(4, 1);
  Eigen::Index i = 0;
  for (int v : values) map.values.data()[i++] = static_cast<std::uint8_t>(v);
  return map;
}

VoteStack random_stack(RandomStream& stream, int k, int w, int h, int num_classes,
                       double ignore_fraction = 0.0) {
  VoteStack stack;
  for (int i = 0; i < k; ++i) {
    stack.members.push_back(random_label_map(stream, w, h, num_classes, ignore_fraction));
  }
  return stack;
}

}  // namespace

TEST_CASE("hard_vote: single member is the identity") {
  RandomStream stream = derive_stream(21, "vote-identity");
  const LabelMap only = random_label_map(stream, 5, 4, 3);
  VoteStack stack;
  stack.members = {only};
  CHECK(hard_vote(stack) == only);
}

TEST_CASE("hard_vote: worked 1x4 K=3 example") {
  VoteStack stack;
  stack.members = {map_1x4({0, 1, 2, 0}), map_1x4({0, 2, 2, 1}), map_1x4({1, 2, 0, 1})};
  CHECK(hard_vote(stack) == map_1x4({0, 2, 2, 1}));
}

TEST_CASE("hard_vote: three-way tie resolves to the smallest index") {
  VoteStack stack;
  stack.members = {map_1x4({0, 2, 1, 5}), map_1x4({1, 0, 2, 3}), map_1x4({2, 1, 0, 1})};
  // Every pixel sees three distinct labels; the smallest must win.
  CHECK(hard_vote(stack) == map_1x4({0, 0, 0, 1}));
}

TEST_CASE("hard_vote: unanimous ignore stays ignore") {
  VoteStack stack;
  stack.members = {make_label_map(2, 2, 255), make_label_map(2, 2, 255),
                   make_label_map(2, 2, 255)};
  CHECK(hard_vote(stack) == make_label_map(2, 2, 255));
}

TEST_CASE("hard_vote: errors") {
  CHECK_THROWS_AS(hard_vote(VoteStack{}), EmptyStack);
  VoteStack stack;
  stack.members = {make_label_map(2, 2), make_label_map(3, 2)};
  CHECK_THROWS_AS(hard_vote(stack), MemberShapeMismatch);
}

TEST_CASE("agreement_map: unanimity, 2/3 splits, full disagreement") {
  VoteStack stack;
  stack.members = {map_1x4({0, 0, 0, 2}), map_1x4({0, 0, 1, 1}), map_1x4({0, 1, 1, 0})};
  const Grid<double> agreement = agreement_map(stack);
  CHECK(agreement(0, 0) == 1.0);
  CHECK(agreement(0, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(agreement(0, 2) == doctest::Approx(2.0 / 3.0));
  CHECK(agreement(0, 3) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("property: voter-permutation invariance") {
  RandomStream stream = derive_stream(22, "vote-perm");
  for (int round = 0; round < 50; ++round) {
    VoteStack stack = random_stack(stream, 2 + static_cast<int>(stream.uniform_index(4)), 6, 6, 4);
    const LabelMap fused = hard_vote(stack);
    VoteStack shuffled = stack;
    for (std::size_t i = shuffled.members.size(); i > 1; --i) {
      std::swap(shuffled.members[i - 1], shuffled.members[stream.uniform_index(i)]);
    }
    CHECK(hard_vote(shuffled) == fused);
  }
}

TEST_CASE("property: strict majority always wins") {
  RandomStream stream = derive_stream(23, "vote-majority");
  for (int round = 0; round < 50; ++round) {
    const int k = 3 + static_cast<int>(stream.uniform_index(3));  // K in [3,5]
    const LabelMap majority = random_label_map(stream, 5, 5, 4);
    VoteStack stack;
    const int majority_votes = k / 2 + 1;
    for (int i = 0; i < majority_votes; ++i) stack.members.push_back(majority);
    for (int i = majority_votes; i < k; ++i) {
      stack.members.push_back(random_label_map(stream, 5, 5, 4));
    }
    CHECK(hard_vote(stack) == majority);
  }
}

TEST_CASE("property: consensus is idempotent") {
  RandomStream stream = derive_stream(24, "vote-consensus");
  const LabelMap map = random_label_map(stream, 7, 3, 5);
  VoteStack stack;
  stack.members = {map, map, map, map};
  CHECK(hard_vote(stack) == map);
}

TEST_CASE("property: duplicating the current output never changes the result") {
  RandomStream stream = derive_stream(25, "vote-stable");
  for (int round = 0; round < 50; ++round) {
    VoteStack stack = random_stack(stream, 1 + static_cast<int>(stream.uniform_index(5)), 4, 4, 3);
    const LabelMap fused = hard_vote(stack);
    VoteStack extended = stack;
    extended.members.push_back(fused);
    CHECK(hard_vote(extended) == fused);
  }
}

TEST_CASE("property: hard_vote matches the histogram-argmax oracle") {
  RandomStream stream = derive_stream(26, "vote-oracle");
  for (int round = 0; round < 200; ++round) {
    const int k = 1 + static_cast<int>(stream.uniform_index(5));
    VoteStack stack = random_stack(stream, k, 8, 8, 4, 0.1);
    CHECK(hard_vote(stack) == oracle_vote(stack));
  }
}
