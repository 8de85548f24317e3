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

#include "et4el/features.h"

#include <algorithm>
#include <string>
#include <utility>

#include "et4el/text.h"

namespace et4el {
namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;
constexpr size_t kNearWindow = 3;

}  // namespace

uint64_t Mix64(uint64_t x) {
  // splitmix64 finalizer.
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

uint64_t HashFeature(std::string_view feature, uint64_t seed) {
  uint64_t h = kFnvOffset ^ Mix64(seed);
  for (unsigned char c : feature) {
    h ^= c;
    h *= kFnvPrime;
  }
  return Mix64(h);
}

uint32_t FeatureIndex(std::string_view feature, uint64_t seed, uint32_t dim) {
  return static_cast<uint32_t>(HashFeature(feature, seed) % dim);
}

FeatureVector Featurize(const MentionExample &example, uint32_t dim,
                        uint64_t seed) {
  std::vector<uint32_t> hashed;
  auto add = [&](std::string_view prefix, std::string_view value) {
    std::string feature;
    feature.reserve(prefix.size() + value.size());
    feature.append(prefix).append(value);
    hashed.push_back(FeatureIndex(feature, seed, dim));
  };

  const auto &tokens = example.tokens;
  const size_t start = std::min(example.span.start, tokens.size());
  const size_t end = std::clamp(example.span.end, start, tokens.size());

  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i >= start && i < end) continue;
    add("ctx=", AsciiLower(tokens[i]));
  }
  for (size_t d = 1; d <= kNearWindow; ++d) {
    if (start >= d) {
      add("l" + std::to_string(d) + "=", AsciiLower(tokens[start - d]));
    }
    if (end + d - 1 < tokens.size()) {
      add("r" + std::to_string(d) + "=", AsciiLower(tokens[end + d - 1]));
    }
  }
  for (size_t i = start; i < end; ++i) add("men=", AsciiLower(tokens[i]));

  const std::string padded = "<" + AsciiLower(example.mention) + ">";
  for (size_t n : {3, 4}) {
    std::string prefix = "ch" + std::to_string(n) + "=";
    for (size_t i = 0; i + n <= padded.size(); ++i) {
      add(prefix, std::string_view(padded).substr(i, n));
    }
  }

  std::sort(hashed.begin(), hashed.end());
  FeatureVector x;
  for (uint32_t index : hashed) {
    if (!x.indices.empty() && x.indices.back() == index) {
      x.values.back() += 1.0;
    } else {
      x.indices.push_back(index);
      x.values.push_back(1.0);
    }
  }
  return x;
}

}  // namespace et4el
