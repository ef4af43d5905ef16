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

#include <string>
#include <vector>

#include "segfuse/grid.hpp"
#include "segfuse/label_map.hpp"

namespace segfuse {

/// K aligned prediction maps from K models for one frame.
struct VoteStack {
  std::vector<LabelMap> members;
  std::vector<std::string> member_ids;  // optional; aligned with members when set
};

/// Per-pixel plurality over the members' labels. Ties break to the smallest
/// class index, which makes the result independent of voter order. Ignore
/// votes participate like any other label: a pixel unanimously ignored stays
/// ignored. Throws EmptyStack and MemberShapeMismatch.
LabelMap hard_vote(const VoteStack& stack);

/// Per-pixel (max vote count)/K in (0,1]; a diagnostic for ensemble
/// diversity. Same preconditions as hard_vote.
Grid<double> agreement_map(const VoteStack& stack);

}  // namespace segfuse
