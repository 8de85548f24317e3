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

#ifndef ET4EL_FEATURES_H_
#define ET4EL_FEATURES_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "et4el/mention.h"

namespace et4el {

// Sparse feature vector over a hashed space [0, dim).
struct FeatureVector {
  std::vector<uint32_t> indices;  // strictly increasing
  std::vector<double> values;

  size_t size() const { return indices.size(); }
  bool operator==(const FeatureVector &) const = default;
};

// Seeded 64-bit string hash: FNV-1a over the bytes, starting from the FNV
// offset basis xor Mix64(seed), followed by the Mix64 finalizer.
uint64_t Mix64(uint64_t x);
uint64_t HashFeature(std::string_view feature, uint64_t seed);

// HashFeature(feature, seed) mod dim.
uint32_t FeatureIndex(std::string_view feature, uint64_t seed, uint32_t dim);

// Hashed bag of lowercased feature strings, one namespace per source:
//   ctx=<w>    every context token outside the mention span
//   l<d>=<w>   token d positions left of the span, d in 1..3
//   r<d>=<w>   token d positions right of the span, d in 1..3
//   men=<w>    every mention token
//   ch3=<g>    character 3-grams of "<" + mention + ">"
//   ch4=<g>    character 4-grams of the same padded string
// Repeated features (and hash collisions) accumulate their counts.
FeatureVector Featurize(const MentionExample &example, uint32_t dim,
                        uint64_t seed);

}  // namespace et4el

#endif  // ET4EL_FEATURES_H_
