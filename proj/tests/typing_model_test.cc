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


#include "et4el/typing_model.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "et4el/error.h"
#include "test_util.h"

namespace et4el {
namespace {

using testing::MaxGradientError;
using testing::NumberedVocab;
using testing::RandomBatch;
using testing::RandomModel;

FeatureVector OneHot(uint32_t index, double value = 1.0) {
  return {{index}, {value}};
}

TEST(PredictTest, ZeroModelIsOneHalf) {
  TypingModel model(NumberedVocab(4), 16, 0);
  auto t = model.Predict(OneHot(3));
  ASSERT_EQ(t.size(), 4u);
  for (double p : t.probs) EXPECT_EQ(p, 0.5);
}

TEST(PredictTest, LogThreeGivesThreeQuarters) {
  TypingModel model(NumberedVocab(3), 16, 0);
  model.set_weight(1, 7, std::log(3.0));
  auto t = model.Predict(OneHot(7));
  EXPECT_NEAR(t.probs[1], 0.75, 1e-15);
  EXPECT_EQ(t.probs[0], 0.5);
}

TEST(PredictTest, NegatingRowComplementsProbability) {
  Rng rng(1);
  TypingModel model = RandomModel(rng, 3, 8);
  FeatureVector x{{1, 4, 6}, {1.0, 2.0, -0.5}};
  double before = model.Predict(x).probs[2];
  for (uint32_t j = 0; j < 8; ++j) model.set_weight(2, j, -model.weight(2, j));
  model.set_bias(2, -model.bias(2));
  EXPECT_NEAR(model.Predict(x).probs[2], 1.0 - before, 1e-12);
}

TEST(PredictTest, ExtremeLogitsStayInRange) {
  TypingModel model(NumberedVocab(2), 4, 0);
  model.set_weight(0, 0, 1e4);
  model.set_weight(1, 0, -1e4);
  auto t = model.Predict(OneHot(0));
  EXPECT_EQ(t.probs[0], 1.0);
  EXPECT_EQ(t.probs[1], 0.0);
}

TEST(LossTest, ZeroModelIsLogTwo) {
  TypingModel model(NumberedVocab(1), 4, 0);
  for (LabelSet labels : {LabelSet{}, LabelSet{0}}) {
    std::vector<TrainingExample> batch = {{OneHot(2), labels}};
    EXPECT_NEAR(ComputeLoss(model, batch, 0.0), std::log(2.0), 1e-15);
  }
}

TEST(LossTest, StableForSaturatedLogits) {
  TypingModel model(NumberedVocab(1), 4, 0);
  model.set_weight(0, 0, 800.0);
  std::vector<TrainingExample> wrong = {{OneHot(0), {}}};
  EXPECT_NEAR(ComputeLoss(model, wrong, 0.0), 800.0, 1e-9);
  std::vector<TrainingExample> right = {{OneHot(0), {0}}};
  EXPECT_NEAR(ComputeLoss(model, right, 0.0), 0.0, 1e-12);
}

TEST(GradientTest, MatchesFiniteDifferences) {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    size_t categories = 1 + rng.UniformIndex(5);
    uint32_t dim = 1 + static_cast<uint32_t>(rng.UniformIndex(8));
    TypingModel model = RandomModel(rng, categories, dim);
    auto batch = RandomBatch(rng, categories, dim, 1 + rng.UniformIndex(6));
    double l2 = trial % 2 ? 0.0 : 0.3;
    EXPECT_LT(MaxGradientError(model, batch, l2), 1e-4) << "trial " << trial;
  }
}

TEST(GradientTest, RowsAreIndependent) {
  // Changing labels of category 0 leaves category 1's gradient untouched.
  Rng rng(5);
  TypingModel model = RandomModel(rng, 2, 6);
  auto batch = RandomBatch(rng, 2, 6, 4);
  for (auto &example : batch) {
    auto &labels = example.labels;
    labels.erase(std::remove(labels.begin(), labels.end(), 0u), labels.end());
  }
  auto a = ComputeLossAndGradient(model, batch, 0.0);
  for (auto &example : batch) example.labels.insert(example.labels.begin(), 0);
  auto b = ComputeLossAndGradient(model, batch, 0.0);
  EXPECT_EQ(a.gradient.bias[1], b.gradient.bias[1]);
  EXPECT_NE(a.gradient.bias[0], b.gradient.bias[0]);
  for (const auto &[feature, column] : a.gradient.columns) {
    EXPECT_EQ(column[1], b.gradient.columns.at(feature)[1]);
  }
}

TEST(GradientTest, OutOfRangeLabelIsAnError) {
  TypingModel model(NumberedVocab(2), 4, 0);
  std::vector<TrainingExample> batch = {{OneHot(0), {5}}};
  EXPECT_THROW(ComputeLoss(model, batch, 0.0), Error);
}

// Two categories with disjoint feature vocabularies.
std::vector<TrainingExample> SeparableToy() {
  std::vector<TrainingExample> data;
  for (uint32_t k = 0; k < 20; ++k) {
    data.push_back({{{k % 5, 10 + k % 3}, {1.0, 1.0}}, {0}});
    data.push_back({{{5 + k % 5, 13 + k % 3}, {1.0, 1.0}}, {1}});
  }
  return data;
}

TrainConfig ToyConfig() {
  TrainConfig config;
  config.learning_rate = 1.0;
  config.epochs = 60;
  config.batch_size = 4;
  config.seed = 9;
  return config;
}

TEST(TrainTest, SeparableToyIsLearned) {
  auto data = SeparableToy();
  TypingModel model = Train(data, NumberedVocab(2), 16, 0, ToyConfig());
  for (const auto &example : data) {
    auto t = model.Predict(example.features);
    uint32_t gold = example.labels.front();
    EXPECT_GT(t.probs[gold], 0.9);
    EXPECT_LT(t.probs[1 - gold], 0.1);
  }
}

TEST(TrainTest, SameSeedGivesIdenticalBytes) {
  auto data = SeparableToy();
  TrainConfig config = ToyConfig();
  config.epochs = 3;
  std::stringstream a, b;
  Train(data, NumberedVocab(2), 16, 0, config).Write(a);
  Train(data, NumberedVocab(2), 16, 0, config).Write(b);
  EXPECT_EQ(a.str(), b.str());
  config.seed = 10;
  std::stringstream c;
  Train(data, NumberedVocab(2), 16, 0, config).Write(c);
  EXPECT_NE(a.str(), c.str());
}

TEST(TrainTest, ParallelGradientMatchesSerial) {
  auto data = SeparableToy();
  TrainConfig config = ToyConfig();
  config.epochs = 2;
  config.batch_size = 16;
  TypingModel serial = Train(data, NumberedVocab(2), 16, 0, config);
  config.workers = 3;
  TypingModel parallel = Train(data, NumberedVocab(2), 16, 0, config);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(serial.bias(i), parallel.bias(i), 1e-12);
    for (uint32_t j = 0; j < 16; ++j) {
      EXPECT_NEAR(serial.weight(i, j), parallel.weight(i, j), 1e-12);
    }
  }
}

TEST(TrainTest, FullBatchLossIsMonotone) {
  Rng rng(31);
  auto data = RandomBatch(rng, 3, 12, 40);
  TrainConfig config;
  config.learning_rate = 0.5;
  config.epochs = 25;
  config.batch_size = static_cast<int>(data.size());
  TrainReport report;
  Train(data, NumberedVocab(3), 12, 0, config, {}, &report);
  ASSERT_EQ(report.step_losses.size(), 25u);
  for (size_t k = 1; k < report.step_losses.size(); ++k) {
    EXPECT_LE(report.step_losses[k], report.step_losses[k - 1]);
  }
}

TEST(TrainTest, ReportsDevLoss) {
  auto data = SeparableToy();
  TrainReport report;
  TrainConfig config = ToyConfig();
  config.epochs = 4;
  Train(data, NumberedVocab(2), 16, 0, config, data, &report);
  ASSERT_EQ(report.epoch_dev_losses.size(), 4u);
  EXPECT_LT(report.epoch_dev_losses.back(), report.epoch_dev_losses.front());
}

TEST(TrainTest, RejectsBadConfigAndEmptyData) {
  TrainConfig config;
  config.learning_rate = 0.0;
  auto data = SeparableToy();
  EXPECT_THROW(Train(data, NumberedVocab(2), 16, 0, config), Error);
  try {
    Train({}, NumberedVocab(2), 16, 0, TrainConfig{});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(TrainTest, DivergenceIsReported) {
  TrainConfig config;
  config.learning_rate = 1e308;
  config.epochs = 3;
  config.batch_size = 1;
  auto data = SeparableToy();
  try {
    Train(data, NumberedVocab(2), 16, 0, config);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDiverged);
  }
}

TEST(ModelIoTest, RoundTripIsExact) {
  Rng rng(77);
  TypingModel model = RandomModel(rng, 3, 5);
  model.set_weight(0, 0, 0.1);
  model.set_weight(1, 1, -1e-300);
  std::stringstream buffer;
  model.Write(buffer);
  std::string bytes = buffer.str();
  TypingModel back = TypingModel::Read(buffer);
  EXPECT_EQ(back, model);
  std::stringstream again;
  back.Write(again);
  EXPECT_EQ(again.str(), bytes);
}

TEST(ModelIoTest, MissingFile) {
  try {
    TypingModel::Load("/nonexistent/model.json");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kModelNotFound);
  }
}

TEST(ModelIoTest, RejectsMalformed) {
  std::stringstream bad(R"({"format_version":1,"dim":2})");
  EXPECT_THROW(TypingModel::Read(bad), Error);
  std::stringstream wrong(R"({"format_version":99})");
  EXPECT_THROW(TypingModel::Read(wrong), Error);
}

TEST(LabelsForTest, MapsAndSorts) {
  MentionExample e;
  e.categories = std::vector<std::string>{"c2", "zz", "c0", "c2"};
  EXPECT_EQ(LabelsFor(e, NumberedVocab(3)), (LabelSet{0, 2}));
}

}  // namespace
}  // namespace et4el
