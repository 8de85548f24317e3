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

#include <gtest/gtest.h>

#include <map>

namespace et4el {
namespace {

constexpr uint32_t kDim = 1u << 16;
constexpr uint64_t kSeed = 5;

std::map<uint32_t, double> AsMap(const FeatureVector &x) {
  std::map<uint32_t, double> out;
  for (size_t k = 0; k < x.size(); ++k) out[x.indices[k]] = x.values[k];
  return out;
}

std::map<uint32_t, double> Hashed(const std::vector<std::string> &features) {
  std::map<uint32_t, double> out;
  for (const auto &f : features) out[FeatureIndex(f, kSeed, kDim)] += 1.0;
  return out;
}

TEST(HashTest, SeedAndStringSensitive) {
  EXPECT_EQ(Mix64(0), 0u);
  EXPECT_EQ(HashFeature("ctx=a", 0), HashFeature("ctx=a", 0));
  EXPECT_NE(HashFeature("ctx=a", 0), HashFeature("ctx=a", 1));
  EXPECT_NE(HashFeature("ctx=a", 0), HashFeature("ctx=b", 0));
  EXPECT_LT(FeatureIndex("ctx=a", 0, 7), 7u);
}

TEST(FeaturizeTest, MentionOnly) {
  MentionExample e;
  e.mention = "x";
  e.tokens = {"x"};
  e.span = {0, 1};
  EXPECT_EQ(AsMap(Featurize(e, kDim, kSeed)),
            Hashed({"men=x", "ch3=<x>"}));
}

TEST(FeaturizeTest, MatchesBruteForceEnumeration) {
  MentionExample e;
  e.mention = "Apache Ant";
  e.tokens = {"Install", "the", "Apache", "Ant", "build", "tool", "now", "."};
  e.span = {2, 4};
  std::vector<std::string> expected = {
      "ctx=install", "ctx=the", "ctx=build", "ctx=tool", "ctx=now", "ctx=.",
      "l1=the",      "l2=install", "r1=build", "r2=tool", "r3=now",
      "men=apache",  "men=ant"};
  const std::string padded = "<apache ant>";
  for (size_t n : {3, 4}) {
    for (size_t i = 0; i + n <= padded.size(); ++i) {
      expected.push_back("ch" + std::to_string(n) + "=" +
                         padded.substr(i, n));
    }
  }
  FeatureVector x = Featurize(e, kDim, kSeed);
  EXPECT_EQ(AsMap(x), Hashed(expected));
  for (size_t k = 1; k < x.size(); ++k) {
    EXPECT_LT(x.indices[k - 1], x.indices[k]);
  }
}

TEST(FeaturizeTest, RepeatedTokensAccumulate) {
  MentionExample e;
  e.mention = "m";
  e.tokens = {"a", "m", "a"};
  e.span = {1, 2};
  auto x = AsMap(Featurize(e, kDim, kSeed));
  EXPECT_EQ(x[FeatureIndex("ctx=a", kSeed, kDim)], 2.0);
}

TEST(FeaturizeTest, Deterministic) {
  MentionExample e;
  e.mention = "Paris";
  e.tokens = {"In", "Paris", "today"};
  e.span = {1, 2};
  EXPECT_EQ(Featurize(e, kDim, kSeed), Featurize(e, kDim, kSeed));
}

}  // namespace
}  // namespace et4el
