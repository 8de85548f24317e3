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

#ifndef ET4EL_RANDOM_H_
#define ET4EL_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace et4el {

// Deterministic random source. std::mt19937_64 output is fixed by the
// standard, but the std distributions are not, so bounded draws and shuffles
// are implemented here to keep results identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformIndex(uint64_t bound);

  // Uniform double in [0, 1) with 53 bits of precision.
  double UniformDouble();

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = UniformIndex(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives a seed for a named sub-stream so that independent consumers of one
// user seed do not share a sequence.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream);

}  // namespace et4el

#endif  // ET4EL_RANDOM_H_
