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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "et4el/error.h"
#include "et4el/parallel.h"
#include "et4el/random.h"
#include "json.hpp"

namespace et4el {
namespace {

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// -[y log sigmoid(z) + (1 - y) log(1 - sigmoid(z))] without overflow.
double BinaryCrossEntropy(double z, bool y) {
  double softplus = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  return y ? softplus - z : softplus;
}

void WriteNumber(std::ostream &out, double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.write(buffer, ptr - buffer);
}

void WriteDoubleArray(std::ostream &out, std::span<const double> values) {
  out << '[';
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    WriteNumber(out, values[i]);
  }
  out << ']';
}

double SquaredNorm(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return sum;
}

// Adds the data term of the objective over `batch` to loss/gradient.
void AccumulateBatch(const TypingModel &model,
                     std::span<const TrainingExample *const> batch,
                     double &loss, Gradient &gradient) {
  const size_t num_categories = model.num_categories();
  std::vector<char> labels(num_categories);
  std::vector<double> delta(num_categories);
  for (const TrainingExample *example : batch) {
    std::fill(labels.begin(), labels.end(), 0);
    for (uint32_t id : example->labels) {
      if (id >= num_categories) {
        throw Error(ErrorCode::kInvalidArgument,
                    "label id " + std::to_string(id) + " outside vocabulary");
      }
      labels[id] = 1;
    }
    std::vector<double> logits = model.Logits(example->features);
    for (size_t i = 0; i < num_categories; ++i) {
      loss += BinaryCrossEntropy(logits[i], labels[i] != 0);
      delta[i] = Sigmoid(logits[i]) - (labels[i] != 0 ? 1.0 : 0.0);
      gradient.bias[i] += delta[i];
    }
    const auto &x = example->features;
    for (size_t k = 0; k < x.size(); ++k) {
      auto [it, inserted] = gradient.columns.try_emplace(x.indices[k]);
      if (inserted) it->second.assign(num_categories, 0.0);
      for (size_t i = 0; i < num_categories; ++i) {
        it->second[i] += x.values[k] * delta[i];
      }
    }
  }
}

void MergeGradient(Gradient &into, const Gradient &from) {
  for (size_t i = 0; i < into.bias.size(); ++i) into.bias[i] += from.bias[i];
  for (const auto &[feature, column] : from.columns) {
    auto [it, inserted] = into.columns.try_emplace(feature, column);
    if (!inserted) {
      for (size_t i = 0; i < column.size(); ++i) it->second[i] += column[i];
    }
  }
}

Gradient EmptyGradient(const TypingModel &model, double l2_penalty) {
  Gradient gradient;
  gradient.bias.assign(model.num_categories(), 0.0);
  gradient.l2_penalty = l2_penalty;
  return gradient;
}

LossAndGradient BatchLossAndGradient(
    const TypingModel &model, std::span<const TrainingExample *const> batch,
    double l2_penalty, int workers) {
  LossAndGradient result;
  result.gradient = EmptyGradient(model, l2_penalty);
  size_t shards = NumShards(batch.size(), workers);
  if (shards <= 1) {
    AccumulateBatch(model, batch, result.loss, result.gradient);
  } else {
    std::vector<double> losses(shards, 0.0);
    std::vector<Gradient> partial(shards, result.gradient);
    ParallelShards(batch.size(), workers,
                   [&](size_t shard, size_t begin, size_t end) {
                     AccumulateBatch(model, batch.subspan(begin, end - begin),
                                     losses[shard], partial[shard]);
                   });
    for (size_t s = 0; s < shards; ++s) {
      result.loss += losses[s];
      MergeGradient(result.gradient, partial[s]);
    }
  }
  if (l2_penalty > 0.0) {
    result.loss += 0.5 * l2_penalty * SquaredNorm(model.Weights());
  }
  if (!std::isfinite(result.loss)) {
    throw Error(ErrorCode::kDiverged,
                "non-finite loss over a batch of " +
                    std::to_string(batch.size()) + " examples");
  }
  return result;
}

std::vector<const TrainingExample *> Pointers(
    std::span<const TrainingExample> examples) {
  std::vector<const TrainingExample *> pointers;
  pointers.reserve(examples.size());
  for (const auto &example : examples) pointers.push_back(&example);
  return pointers;
}

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string &message) {
    throw Error(ErrorCode::kInvalidArgument, message);
  };
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    fail("learning_rate must be > 0");
  }
  if (epochs < 1) fail("epochs must be >= 1");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (!(l2_penalty >= 0.0) || !std::isfinite(l2_penalty)) {
    fail("l2_penalty must be >= 0");
  }
  if (workers < 1) fail("workers must be >= 1");
}

TypingModel::TypingModel(CategoryVocab vocab, uint32_t dim, uint64_t hash_seed)
    : vocab_(std::move(vocab)), dim_(dim), hash_seed_(hash_seed) {
  if (dim_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "feature dimension must be > 0");
  }
  weights_.assign(static_cast<size_t>(dim_) * vocab_.size(), 0.0);
  bias_.assign(vocab_.size(), 0.0);
}

std::span<const double> TypingModel::FeatureColumn(uint32_t feature) const {
  return std::span<const double>(weights_).subspan(
      static_cast<size_t>(feature) * num_categories(), num_categories());
}

std::span<double> TypingModel::MutableFeatureColumn(uint32_t feature) {
  return std::span<double>(weights_).subspan(
      static_cast<size_t>(feature) * num_categories(), num_categories());
}

std::vector<double> TypingModel::Logits(const FeatureVector &x) const {
  std::vector<double> z(bias_);
  for (size_t k = 0; k < x.size(); ++k) {
    if (x.indices[k] >= dim_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "feature index " + std::to_string(x.indices[k]) +
                      " outside dimension " + std::to_string(dim_));
    }
    auto column = FeatureColumn(x.indices[k]);
    const double value = x.values[k];
    for (size_t i = 0; i < z.size(); ++i) z[i] += column[i] * value;
  }
  return z;
}

TypePosterior TypingModel::Predict(const FeatureVector &x) const {
  TypePosterior posterior;
  posterior.probs = Logits(x);
  for (double &p : posterior.probs) p = Sigmoid(p);
  return posterior;
}

FeatureVector TypingModel::Featurize(const MentionExample &example) const {
  return et4el::Featurize(example, dim_, hash_seed_);
}

TypePosterior TypingModel::PredictExample(const MentionExample &example) const {
  return Predict(Featurize(example));
}

void TypingModel::Write(std::ostream &out) const {
  out << "{\"format_version\":" << kModelFormatVersion << ",\"dim\":" << dim_
      << ",\"hash_seed\":" << hash_seed_ << ",\"vocab\":"
      << nlohmann::json(vocab_.entries()).dump() << ",\"bias\":";
  WriteDoubleArray(out, bias_);
  out << ",\"weights\":[";
  std::vector<double> row(dim_);
  for (size_t i = 0; i < num_categories(); ++i) {
    for (uint32_t j = 0; j < dim_; ++j) row[j] = weight(i, j);
    out << (i > 0 ? ",\n" : "\n");
    WriteDoubleArray(out, row);
  }
  out << "\n]}\n";
}

void TypingModel::Save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  Write(out);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

TypingModel TypingModel::Read(std::istream &in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("model is not valid JSON: ") + e.what());
  }
  try {
    int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorCode::kParseError,
                  "unsupported model format_version " +
                      std::to_string(version));
    }
    auto dim = j.at("dim").get<uint32_t>();
    auto hash_seed = j.at("hash_seed").get<uint64_t>();
    CategoryVocab vocab(j.at("vocab").get<std::vector<std::string>>());
    TypingModel model(std::move(vocab), dim, hash_seed);
    const auto &bias = j.at("bias");
    const auto &weights = j.at("weights");
    if (bias.size() != model.num_categories() ||
        weights.size() != model.num_categories()) {
      throw Error(ErrorCode::kParseError,
                  "bias/weights rows do not match the vocabulary size");
    }
    for (size_t i = 0; i < model.num_categories(); ++i) {
      double b = bias[i].get<double>();
      if (!std::isfinite(b)) {
        throw Error(ErrorCode::kParseError, "non-finite bias");
      }
      model.set_bias(i, b);
      const auto &row = weights[i];
      if (!row.is_array() || row.size() != dim) {
        throw Error(ErrorCode::kParseError,
                    "weight row " + std::to_string(i) + " has wrong length");
      }
      for (uint32_t f = 0; f < dim; ++f) {
        double w = row[f].get<double>();
        if (!std::isfinite(w)) {
          throw Error(ErrorCode::kParseError, "non-finite weight");
        }
        model.set_weight(i, f, w);
      }
    }
    return model;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed model: ") + e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError,
                std::string("malformed model: ") + e.what());
  }
}

TypingModel TypingModel::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kModelNotFound,
                "model file " + path.string() + " not found");
  }
  return Read(in);
}

double Gradient::WeightAt(const TypingModel &model, size_t category,
                          uint32_t feature) const {
  double data = 0.0;
  if (auto it = columns.find(feature); it != columns.end()) {
    data = it->second[category];
  }
  return data + l2_penalty * model.weight(category, feature);
}

double ComputeLoss(const TypingModel &model,
                   std::span<const TrainingExample> batch, double l2_penalty) {
  double loss = 0.0;
  for (const auto &example : batch) {
    std::vector<double> logits = model.Logits(example.features);
    std::vector<char> labels(model.num_categories(), 0);
    for (uint32_t id : example.labels) {
      if (id >= labels.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "label id " + std::to_string(id) + " outside vocabulary");
      }
      labels[id] = 1;
    }
    for (size_t i = 0; i < logits.size(); ++i) {
      loss += BinaryCrossEntropy(logits[i], labels[i] != 0);
    }
  }
  if (l2_penalty > 0.0) {
    loss += 0.5 * l2_penalty * SquaredNorm(model.Weights());
  }
  if (!std::isfinite(loss)) {
    throw Error(ErrorCode::kDiverged, "non-finite loss");
  }
  return loss;
}

LossAndGradient ComputeLossAndGradient(const TypingModel &model,
                                       std::span<const TrainingExample> batch,
                                       double l2_penalty) {
  auto pointers = Pointers(batch);
  return BatchLossAndGradient(model, pointers, l2_penalty, 1);
}

TypingModel Train(std::span<const TrainingExample> train,
                  const CategoryVocab &vocab, uint32_t dim, uint64_t hash_seed,
                  const TrainConfig &config,
                  std::span<const TrainingExample> dev, TrainReport *report) {
  config.Validate();
  if (train.empty()) {
    throw Error(ErrorCode::kInsufficientData, "empty training set");
  }
  TypingModel model(vocab, dim, hash_seed);
  std::vector<const TrainingExample *> order = Pointers(train);
  const size_t batch_size = static_cast<size_t>(config.batch_size);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng(DeriveSeed(config.seed, static_cast<uint64_t>(epoch)));
    rng.Shuffle(std::span<const TrainingExample *>(order));
    double epoch_loss = 0.0;
    for (size_t begin = 0; begin < order.size(); begin += batch_size) {
      size_t end = std::min(order.size(), begin + batch_size);
      std::span<const TrainingExample *const> batch(order.data() + begin,
                                                    end - begin);
      LossAndGradient step = BatchLossAndGradient(
          model, batch, config.l2_penalty, config.workers);
      const double n = static_cast<double>(batch.size());
      double penalty = config.l2_penalty > 0.0
                           ? 0.5 * config.l2_penalty *
                                 SquaredNorm(model.Weights())
                           : 0.0;
      epoch_loss += step.loss - penalty;
      if (report != nullptr) report->step_losses.push_back(step.loss / n);

      const double scale = config.learning_rate / n;
      if (config.l2_penalty > 0.0) {
        const double decay = 1.0 - scale * config.l2_penalty;
        for (double &w : model.MutableWeights()) w *= decay;
      }
      for (size_t i = 0; i < model.num_categories(); ++i) {
        model.set_bias(i, model.bias(i) - scale * step.gradient.bias[i]);
      }
      for (const auto &[feature, column] : step.gradient.columns) {
        auto weights = model.MutableFeatureColumn(feature);
        for (size_t i = 0; i < column.size(); ++i) {
          weights[i] -= scale * column[i];
        }
      }
    }
    if (report != nullptr) {
      report->epoch_train_losses.push_back(epoch_loss /
                                           static_cast<double>(train.size()));
      if (!dev.empty()) {
        report->epoch_dev_losses.push_back(ComputeLoss(model, dev, 0.0) /
                                           static_cast<double>(dev.size()));
      }
    }
  }
  return model;
}

LabelSet LabelsFor(const MentionExample &example, const CategoryVocab &vocab) {
  LabelSet labels;
  if (!example.categories) return labels;
  for (const auto &category : *example.categories) {
    if (auto id = vocab.Find(category)) labels.push_back(*id);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

}  // namespace et4el
