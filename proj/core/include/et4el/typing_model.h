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

#ifndef ET4EL_TYPING_MODEL_H_
#define ET4EL_TYPING_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "et4el/category_system.h"
#include "et4el/features.h"
#include "et4el/mention.h"

namespace et4el {

inline constexpr int kModelFormatVersion = 1;

// Sorted vocabulary ids of the categories that apply to a mention.
using LabelSet = std::vector<uint32_t>;

// Independent per-category probabilities, one per vocabulary entry.
struct TypePosterior {
  std::vector<double> probs;

  size_t size() const { return probs.size(); }
};

struct TrainingExample {
  FeatureVector features;
  LabelSet labels;
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 5;
  int batch_size = 64;
  double l2_penalty = 0.0;
  uint64_t seed = 0;
  // Batches are sharded over this many threads and the gradients merged.
  int workers = 1;

  // Throws Error(kInvalidArgument) on out-of-range fields.
  void Validate() const;
};

// Linear multi-label decoder t = sigmoid(W x + b) over hashed features.
// W has one row per category and `dim` columns; it is stored feature-major so
// that a sparse input touches contiguous memory.
class TypingModel {
 public:
  TypingModel(CategoryVocab vocab, uint32_t dim, uint64_t hash_seed);

  const CategoryVocab &vocab() const { return vocab_; }
  size_t num_categories() const { return vocab_.size(); }
  uint32_t dim() const { return dim_; }
  uint64_t hash_seed() const { return hash_seed_; }

  double weight(size_t category, uint32_t feature) const {
    return weights_[static_cast<size_t>(feature) * num_categories() +
                    category];
  }
  void set_weight(size_t category, uint32_t feature, double value) {
    weights_[static_cast<size_t>(feature) * num_categories() + category] =
        value;
  }
  double bias(size_t category) const { return bias_[category]; }
  void set_bias(size_t category, double value) { bias_[category] = value; }

  // Per-category weights of one feature.
  std::span<const double> FeatureColumn(uint32_t feature) const;
  std::span<double> MutableFeatureColumn(uint32_t feature);
  std::span<double> MutableWeights() { return weights_; }
  std::span<const double> Weights() const { return weights_; }

  std::vector<double> Logits(const FeatureVector &x) const;
  TypePosterior Predict(const FeatureVector &x) const;
  TypePosterior PredictExample(const MentionExample &example) const;
  FeatureVector Featurize(const MentionExample &example) const;

  // Single JSON document:
  //   {"format_version":1,"dim":D,"hash_seed":S,"vocab":[...],
  //    "bias":[...],"weights":[[row 0],[row 1],...]}
  // Numbers use the shortest round-trip decimal form.
  void Write(std::ostream &out) const;
  void Save(const std::filesystem::path &path) const;
  // Throws Error(kModelNotFound) for a missing file and Error(kParseError)
  // for a malformed one.
  static TypingModel Load(const std::filesystem::path &path);
  static TypingModel Read(std::istream &in);

  bool operator==(const TypingModel &) const = default;

 private:
  CategoryVocab vocab_;
  uint32_t dim_;
  uint64_t hash_seed_;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// Gradient of the multi-label binary cross-entropy objective. The data term
// is kept sparse: one dense per-category column for each active feature.
struct Gradient {
  std::vector<double> bias;
  std::map<uint32_t, std::vector<double>> columns;
  double l2_penalty = 0.0;

  // d objective / d W[category, feature], including the L2 term.
  double WeightAt(const TypingModel &model, size_t category,
                  uint32_t feature) const;
};

struct LossAndGradient {
  double loss = 0.0;
  Gradient gradient;
};

// Objective: sum over examples and categories of
//   -[y log t + (1 - y) log(1 - t)]  +  l2_penalty * ||W||^2 / 2.
// Throws Error(kDiverged) when the loss is not finite.
double ComputeLoss(const TypingModel &model,
                   std::span<const TrainingExample> batch, double l2_penalty);
LossAndGradient ComputeLossAndGradient(const TypingModel &model,
                                       std::span<const TrainingExample> batch,
                                       double l2_penalty);

struct TrainReport {
  std::vector<double> step_losses;  // objective / batch size, before each step
  std::vector<double> epoch_train_losses;
  std::vector<double> epoch_dev_losses;  // mean per example, no L2 term
};

// Mini-batch gradient descent from zero weights. Each step applies
//   theta -= learning_rate / |batch| * gradient.
// Deterministic given config.seed when config.workers == 1.
// Throws Error(kInsufficientData) for an empty training set.
TypingModel Train(std::span<const TrainingExample> train,
                  const CategoryVocab &vocab, uint32_t dim, uint64_t hash_seed,
                  const TrainConfig &config,
                  std::span<const TrainingExample> dev = {},
                  TrainReport *report = nullptr);

// Vocabulary ids of the example's categories; unknown categories are ignored.
LabelSet LabelsFor(const MentionExample &example, const CategoryVocab &vocab);

}  // namespace et4el

#endif  // ET4EL_TYPING_MODEL_H_
