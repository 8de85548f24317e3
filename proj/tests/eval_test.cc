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


#include "et4el/eval.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "et4el/error.h"
#include "et4el/text.h"
#include "test_util.h"

namespace et4el {
namespace {

using Tokens = std::vector<std::string>;

TEST(LinkingAccuracyTest, Counts) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < 50; ++i) {
    pairs.emplace_back(i < 43 ? "g" : "x", "g");
  }
  EXPECT_DOUBLE_EQ(LinkingAccuracy(pairs), 0.86);
  pairs.assign(3, {"g", "g"});
  EXPECT_EQ(LinkingAccuracy(pairs), 1.0);
  pairs.assign(3, {"x", "g"});
  EXPECT_EQ(LinkingAccuracy(pairs), 0.0);
  EXPECT_THROW(LinkingAccuracy({}), Error);
}

TEST(F1Test, ZeroWhenBothZero) {
  EXPECT_EQ(F1Score(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(F1Score(0.762, 0.461), 2 * 0.762 * 0.461 / 1.223);
}

TEST(TypingMetricsTest, TwoThirds) {
  CategoryVocab vocab({"c"});
  // Gold positives in e0..e2; predicted e0, e1, e3.
  std::vector<TypePosterior> preds = {
      {{0.9}}, {{0.8}}, {{0.2}}, {{0.7}}};
  std::vector<LabelSet> golds = {{0}, {0}, {0}, {}};
  TypingReport r = TypingMetrics(preds, golds, vocab);
  ASSERT_EQ(r.per_category.size(), 1u);
  EXPECT_DOUBLE_EQ(r.per_category[0].prf.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.per_category[0].prf.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.per_category[0].prf.f1, 2.0 / 3.0);
  EXPECT_EQ(r.per_category[0].support, 3u);
}

TEST(TypingMetricsTest, BucketedConfusionFixture) {
  auto f = testing::MakeConfusionFixture();
  TypingReport r = TypingMetrics(f.predictions, f.golds, f.vocab);
  ASSERT_EQ(r.buckets.size(), 5u);
  for (size_t b = 0; b < 5; ++b) {
    const auto &want = testing::kConfusionExpected[b];
    EXPECT_EQ(r.buckets[b].label, want.label);
    EXPECT_DOUBLE_EQ(r.buckets[b].macro.precision, want.precision) << b;
    EXPECT_DOUBLE_EQ(r.buckets[b].macro.recall, want.recall) << b;
    EXPECT_DOUBLE_EQ(r.buckets[b].macro.f1, want.f1) << b;
    EXPECT_EQ(r.buckets[b].num_categories, want.categories) << b;
  }
  EXPECT_EQ(r.per_category.size(), 5u);
}

TEST(TypingMetricsTest, PerfectPredictions) {
  auto f = testing::MakeConfusionFixture();
  for (size_t e = 0; e < f.golds.size(); ++e) {
    std::fill(f.predictions[e].probs.begin(), f.predictions[e].probs.end(),
              0.0);
    for (uint32_t id : f.golds[e]) f.predictions[e].probs[id] = 1.0;
  }
  TypingReport r = TypingMetrics(f.predictions, f.golds, f.vocab);
  for (const auto &b : r.buckets) {
    if (b.num_categories == 0) continue;
    EXPECT_EQ(b.macro.precision, 1.0);
    EXPECT_EQ(b.macro.recall, 1.0);
    EXPECT_EQ(b.macro.f1, 1.0);
  }
}

TEST(TypingMetricsTest, ThresholdOneRecallsNothing) {
  auto f = testing::MakeConfusionFixture();
  f.predictions[0].probs[0] = 1.0;
  TypingReport r = TypingMetrics(f.predictions, f.golds, f.vocab, 1.0);
  for (const auto &m : r.per_category) {
    EXPECT_EQ(m.predicted, 0u);
    EXPECT_EQ(m.prf.recall, 0.0);
  }
}

TEST(TypingMetricsTest, PermutationInvariant) {
  auto f = testing::MakeConfusionFixture();
  TypingReport a = TypingMetrics(f.predictions, f.golds, f.vocab);
  std::reverse(f.predictions.begin(), f.predictions.end());
  std::reverse(f.golds.begin(), f.golds.end());
  TypingReport b = TypingMetrics(f.predictions, f.golds, f.vocab);
  for (size_t k = 0; k < a.buckets.size(); ++k) {
    EXPECT_EQ(a.buckets[k].macro.f1, b.buckets[k].macro.f1);
  }
}

TEST(TypingMetricsTest, MismatchedLengths) {
  auto f = testing::MakeConfusionFixture();
  f.golds.pop_back();
  EXPECT_THROW(TypingMetrics(f.predictions, f.golds, f.vocab), Error);
}

MentionExample Example() {
  MentionExample e;
  e.mention = "Michael Johnson";
  e.tokens = {"Michael", "Johnson", "(", "U.S.", ")", "20.02"};
  e.span = {0, 2};
  e.doc_first_sentence =
      Tokens{"ATHLETICS", "-", "BERLIN", "GRAND", "PRIX", "RESULTS", "."};
  e.left_extra = Tokens{"x", "y", "z"};
  e.right_extra = Tokens{"after"};
  return e;
}

TEST(BuildContextTest, SentenceOnlyIsIdentity) {
  EXPECT_EQ(BuildContext(Example(), ContextMode::kSentenceOnly), Example());
}

TEST(BuildContextTest, WindowShiftsSpan) {
  MentionExample out =
      BuildContext(Example(), ContextMode::kSentencePlusWindow50);
  EXPECT_EQ(out.span, (TokenSpan{3, 5}));
  EXPECT_EQ(out.tokens.front(), "x");
  EXPECT_EQ(out.tokens.back(), "after");
  EXPECT_EQ(JoinTokens(out.tokens, out.span.start, out.span.end),
            out.mention);
}

TEST(BuildContextTest, WindowTruncatesToNearestTokens) {
  MentionExample out =
      BuildContext(Example(), ContextMode::kSentencePlusWindow50, 2);
  EXPECT_EQ(out.tokens.front(), "y");
  EXPECT_EQ(out.span, (TokenSpan{2, 4}));
}

TEST(BuildContextTest, AthleticsHeadline) {
  MentionExample out =
      BuildContext(Example(), ContextMode::kSentencePlusFirstDocSentence);
  EXPECT_EQ(JoinTokens(out.tokens),
            "ATHLETICS - BERLIN GRAND PRIX RESULTS . Michael Johnson ( U.S. ) "
            "20.02");
  EXPECT_EQ(JoinTokens(out.tokens, out.span.start, out.span.end),
            "Michael Johnson");
}

TEST(BuildContextTest, MissingFieldIsNamed) {
  MentionExample e = Example();
  e.doc_first_sentence.reset();
  try {
    BuildContext(e, ContextMode::kSentencePlusFirstDocSentence);
    FAIL();
  } catch (const Error &err) {
    EXPECT_EQ(err.code(), ErrorCode::kMissingField);
    EXPECT_NE(std::string(err.what()).find("doc_first_sentence"),
              std::string::npos);
  }
}

TEST(ContextModeTest, NamesRoundTrip) {
  for (auto mode : {ContextMode::kSentenceOnly,
                    ContextMode::kSentencePlusWindow50,
                    ContextMode::kSentencePlusFirstDocSentence}) {
    EXPECT_EQ(ParseContextMode(ContextModeName(mode)), mode);
  }
  EXPECT_THROW(ParseContextMode("paragraph"), Error);
}

TEST(EvalReportTest, JsonAndTable) {
  auto f = testing::MakeConfusionFixture();
  EvalReport report;
  report.num_examples = 50;
  report.linking_accuracy = 0.86;
  report.most_frequent_entity_accuracy = 0.5;
  report.gold_recall = 0.9;
  report.typing = TypingMetrics(f.predictions, f.golds, f.vocab);
  std::string json = EvalReportToJson(report);
  EXPECT_NE(json.find("\"linking_accuracy\""), std::string::npos);
  EXPECT_NE(json.find("\"typing_buckets\""), std::string::npos);
  EXPECT_NE(json.find("\"501-10000\""), std::string::npos);
  std::string table = FormatEvalReport(report);
  EXPECT_NE(table.find("0.8600"), std::string::npos);
}

}  // namespace
}  // namespace et4el
