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

#include <cstdint>
#include <functional>

namespace segfuse {

/// Splits [0, n) into at most `threads` contiguous chunks and runs
/// fn(begin, end, worker) on each. Exceptions from workers are rethrown on
/// the calling thread after all workers join. threads <= 1 runs inline.
void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(std::int64_t, std::int64_t, int)>& fn);

/// requested >= 1 wins; otherwise the SEGFUSE_THREADS environment variable;
/// otherwise hardware concurrency. Always >= 1.
int resolve_thread_count(int requested);

}  // namespace segfuse
