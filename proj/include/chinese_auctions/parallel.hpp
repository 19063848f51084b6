// Copyright 2026 The chinese_auctions Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace chinese_auctions {

// Runs fn over [begin, end) split into at most `threads` contiguous ranges.
// Callers own any per-range output slots, so results stay deterministic
// regardless of thread count.
inline void ParallelFor(std::int64_t begin, std::int64_t end, int threads,
                        const std::function<void(std::int64_t, std::int64_t)>& fn) {
  const std::int64_t total = end - begin;
  if (total <= 0) return;
  if (threads < 1) threads = 1;
  const auto workers = static_cast<std::int64_t>(threads);
  if (workers == 1 || total == 1) {
    fn(begin, end);
    return;
  }
  const std::int64_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::int64_t lo = begin; lo < end; lo += chunk) {
    const std::int64_t hi = std::min(end, lo + chunk);
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace chinese_auctions
