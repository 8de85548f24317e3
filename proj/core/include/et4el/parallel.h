// Copyright 2026 The ET4EL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ET4EL_PARALLEL_H_
#define ET4EL_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace et4el {

inline size_t NumShards(size_t n, int workers) {
  return std::max<size_t>(1, std::min<size_t>(std::max(workers, 1), n));
}

// Calls fn(shard, begin, end) for `workers` contiguous shards of [0, n).
// Runs inline when workers <= 1. The first exception thrown by any shard is
// rethrown after all shards finish.
template <typename Fn>
void ParallelShards(size_t n, int workers, Fn &&fn) {
  size_t shards = NumShards(n, workers);
  if (shards <= 1) {
    fn(size_t{0}, size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> threads;
  threads.reserve(shards);
  for (size_t s = 0; s < shards; ++s) {
    size_t begin = n * s / shards;
    size_t end = n * (s + 1) / shards;
    threads.emplace_back([&, s, begin, end] {
      try {
        fn(s, begin, end);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto &t : threads) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace et4el

#endif  // ET4EL_PARALLEL_H_
