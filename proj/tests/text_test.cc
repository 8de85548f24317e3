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


#include "et4el/text.h"

#include <gtest/gtest.h>

#include "et4el/random.h"

namespace et4el {
namespace {

TEST(TextTest, SplitWhitespaceDropsEmptyRuns) {
  EXPECT_EQ(SplitWhitespace("  a \t b\nc  "),
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(SplitWhitespace(" \t ").empty());
}

TEST(TextTest, JoinTokensRange) {
  std::vector<std::string> tokens = {"New", "York", "City"};
  EXPECT_EQ(JoinTokens(tokens, 0, 2), "New York");
  EXPECT_EQ(JoinTokens(tokens), "New York City");
  EXPECT_EQ(JoinTokens(tokens, 1, 1), "");
}

TEST(TextTest, TrimAndLower) {
  EXPECT_EQ(Trim("  x y \r\n"), "x y");
  EXPECT_EQ(AsciiLower("MiXeD-Ünï"), "mixed-Ünï");
}

TEST(TextTest, SplitFieldsKeepsEmptyFields) {
  auto fields = SplitFields("a\t\tb", '\t');
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_EQ(fields[1], "");
}

TEST(RandomTest, UniformIndexStaysInRange) {
  Rng rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.UniformIndex(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(RandomTest, ShuffleIsSeededPermutation) {
  std::vector<int> a(50), b;
  for (int i = 0; i < 50; ++i) a[i] = i;
  b = a;
  Rng r1(9), r2(9);
  r1.Shuffle(std::span<int>(a));
  r2.Shuffle(std::span<int>(b));
  EXPECT_EQ(a, b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(RandomTest, DerivedStreamsDiffer) {
  EXPECT_NE(DeriveSeed(13, 1), DeriveSeed(13, 2));
  EXPECT_EQ(DeriveSeed(13, 1), DeriveSeed(13, 1));
}

}  // namespace
}  // namespace et4el
