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


#include "et4el/prior_store.h"

#include <gtest/gtest.h>

#include <sstream>

#include "et4el/error.h"
#include "et4el/random.h"

namespace et4el {
namespace {

PriorTable AntTable() {
  PriorTable table;
  table.Add("Ant", "Ant", 960);
  table.Add("Ant", "Apache_Ant", 8);
  table.Add("Ant", "Ant_(comedy)", 32);
  return table;
}

TEST(PriorTableTest, AntProportions) {
  PriorTable table = AntTable();
  EXPECT_EQ(table.Total("Ant"), 1000u);
  EXPECT_DOUBLE_EQ(table.Probability("Ant", "Ant"), 0.96);
  EXPECT_DOUBLE_EQ(table.Probability("Ant", "Apache_Ant"), 0.008);
  EXPECT_EQ(table.Probability("Ant", "Bee"), 0.0);
  EXPECT_EQ(table.Probability("Unknown", "Ant"), 0.0);
}

TEST(PriorTableTest, AccumulateFromStream) {
  std::vector<AnchorLink> links;
  for (int i = 0; i < 960; ++i) links.emplace_back("Ant", "Ant");
  for (int i = 0; i < 8; ++i) links.emplace_back("Ant", "Apache_Ant");
  for (int i = 0; i < 32; ++i) links.emplace_back("Ant", "Ant_(comedy)");
  EXPECT_EQ(Accumulate(links), AntTable());
  EXPECT_EQ(AccumulateParallel(links, 3), AntTable());
}

TEST(PriorTableTest, SinglePair) {
  PriorTable table;
  table.Add("m", "e");
  EXPECT_EQ(table.Probability("m", "e"), 1.0);
}

TEST(CandidatesTest, ThresholdClipsApacheAnt) {
  CandidateSet set = AntTable().Candidates("Ant", 0.05);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.candidates[0].entity, "Ant");
  EXPECT_DOUBLE_EQ(set.candidates[0].prior, 0.96);
  EXPECT_FALSE(set.Contains("Apache_Ant"));
}

TEST(CandidatesTest, ZeroThresholdKeepsAllOrdered) {
  CandidateSet set = AntTable().Candidates("Ant", 0.0);
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set.candidates[0].entity, "Ant");
  EXPECT_EQ(set.candidates[1].entity, "Ant_(comedy)");
  EXPECT_EQ(set.candidates[2].entity, "Apache_Ant");
}

TEST(CandidatesTest, ThresholdIsInclusive) {
  PriorTable table;
  table.Add("m", "B");
  table.Add("m", "A");
  CandidateSet set = table.Candidates("m", 0.5);
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.candidates[0].entity, "A");
  EXPECT_EQ(set.candidates[1].entity, "B");
}

TEST(CandidatesTest, UnknownMentionIsEmpty) {
  EXPECT_TRUE(AntTable().Candidates("Bee").empty());
  EXPECT_THROW(AntTable().Candidates("Ant", 1.5), Error);
}

TEST(PriorTableTest, FoldCase) {
  PriorTable folded(true);
  folded.Add("ANT", "Ant");
  folded.Add("ant", "Ant");
  EXPECT_EQ(folded.Count("Ant", "Ant"), 2u);
  PriorTable exact;
  exact.Add("ANT", "Ant");
  EXPECT_EQ(exact.Count("ant", "Ant"), 0u);
}

TEST(PriorTableTest, TsvRoundTrip) {
  PriorTable table = AntTable();
  table.Add("New York", "New York City", 5);
  std::stringstream buffer;
  table.Write(buffer);
  EXPECT_EQ(PriorTable::Read(buffer), table);
  std::stringstream bad("m\te\tnot-a-number\n");
  EXPECT_THROW(PriorTable::Read(bad), Error);
}

TEST(GoldRecallTest, Counts) {
  CandidateSet with{"m", {{"g", 1.0}}};
  CandidateSet without{"m", {{"x", 1.0}}};
  std::vector<std::pair<CandidateSet, std::string>> records;
  for (int i = 0; i < 7; ++i) records.emplace_back(with, "g");
  records.emplace_back(without, "g");
  EXPECT_DOUBLE_EQ(GoldRecall(records), 0.875);
  records.resize(1);
  EXPECT_DOUBLE_EQ(GoldRecall(records), 1.0);
  records[0].first = without;
  EXPECT_DOUBLE_EQ(GoldRecall(records), 0.0);
  EXPECT_THROW(GoldRecall({}), Error);
}

TEST(CandidateSetJsonTest, RoundTrip) {
  CandidateSet set{"Ant", {{"Ant", 0.96}, {"Apache \"Ant\"", 0.125}}};
  EXPECT_EQ(CandidateSetFromJson(CandidateSetToJson(set)), set);
}

std::vector<AnchorLink> RandomLinks(Rng &rng, size_t n) {
  std::vector<AnchorLink> links;
  for (size_t i = 0; i < n; ++i) {
    links.emplace_back("m" + std::to_string(rng.UniformIndex(6)),
                       "e" + std::to_string(rng.UniformIndex(8)));
  }
  return links;
}

TEST(PriorTablePropertyTest, MergeIsAssociativeAndMatchesWhole) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto links = RandomLinks(rng, 1 + rng.UniformIndex(200));
    size_t a = rng.UniformIndex(links.size() + 1);
    size_t b = a + rng.UniformIndex(links.size() - a + 1);
    std::span<const AnchorLink> all(links);
    PriorTable x = Accumulate(all.subspan(0, a));
    PriorTable y = Accumulate(all.subspan(a, b - a));
    PriorTable z = Accumulate(all.subspan(b));
    PriorTable left = x, right = y;
    left.Merge(y);
    left.Merge(z);
    right.Merge(z);
    PriorTable x2 = x;
    x2.Merge(right);
    ASSERT_EQ(left, x2);
    ASSERT_EQ(left, Accumulate(all));
  }
}

TEST(PriorTablePropertyTest, HigherThresholdGivesSubset) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    PriorTable table = Accumulate(RandomLinks(rng, 100));
    double lo = rng.UniformDouble() * 0.5;
    double hi = lo + rng.UniformDouble() * 0.5;
    for (int m = 0; m < 6; ++m) {
      std::string mention = "m" + std::to_string(m);
      CandidateSet small = table.Candidates(mention, hi);
      CandidateSet big = table.Candidates(mention, lo);
      for (const auto &c : small.candidates) {
        ASSERT_TRUE(big.Contains(c.entity));
        ASSERT_GE(c.prior, hi);
      }
    }
  }
}

}  // namespace
}  // namespace et4el
