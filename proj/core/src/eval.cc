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

#include <cstdio>

#include "et4el/error.h"
#include "json.hpp"

namespace et4el {
namespace {

std::string BucketLabel(uint32_t low, std::optional<uint32_t> high) {
  if (!high) return std::to_string(low) + "+";
  return std::to_string(low) + "-" + std::to_string(*high);
}

std::vector<std::string> TakeLast(const std::vector<std::string> &tokens,
                                  size_t n) {
  size_t take = std::min(n, tokens.size());
  return {tokens.end() - take, tokens.end()};
}

std::vector<std::string> TakeFirst(const std::vector<std::string> &tokens,
                                   size_t n) {
  size_t take = std::min(n, tokens.size());
  return {tokens.begin(), tokens.begin() + take};
}

const std::vector<std::string> &Require(
    const std::optional<std::vector<std::string>> &field, const char *name) {
  if (!field) {
    throw Error(ErrorCode::kMissingField,
                std::string("context mode needs missing field '") + name +
                    "'");
  }
  return *field;
}

}  // namespace

double LinkingAccuracy(
    std::span<const std::pair<std::string, std::string>> predictions) {
  if (predictions.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "accuracy of empty input");
  }
  size_t correct = 0;
  for (const auto &[chosen, gold] : predictions) {
    if (chosen == gold) ++correct;
  }
  return static_cast<double>(correct) /
         static_cast<double>(predictions.size());
}

double F1Score(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

TypingReport TypingMetrics(std::span<const TypePosterior> predictions,
                           std::span<const LabelSet> golds,
                           const CategoryVocab &vocab, double threshold,
                           std::span<const uint32_t> bucket_bounds) {
  if (predictions.size() != golds.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "typing metrics: " + std::to_string(predictions.size()) +
                    " predictions vs " + std::to_string(golds.size()) +
                    " gold label sets");
  }
  const size_t num_categories = vocab.size();
  std::vector<uint64_t> tp(num_categories), predicted(num_categories),
      support(num_categories);
  std::vector<char> gold_mask(num_categories);
  for (size_t e = 0; e < predictions.size(); ++e) {
    if (predictions[e].size() != num_categories) {
      throw Error(ErrorCode::kInvalidArgument,
                  "posterior length does not match the vocabulary");
    }
    std::fill(gold_mask.begin(), gold_mask.end(), 0);
    for (uint32_t id : golds[e]) {
      if (id >= num_categories) {
        throw Error(ErrorCode::kInvalidArgument, "gold label outside vocab");
      }
      gold_mask[id] = 1;
    }
    for (size_t i = 0; i < num_categories; ++i) {
      bool is_predicted = predictions[e].probs[i] > threshold;
      predicted[i] += is_predicted;
      support[i] += gold_mask[i];
      tp[i] += is_predicted && gold_mask[i];
    }
  }

  TypingReport report;
  for (size_t i = 0; i < num_categories; ++i) {
    if (predicted[i] == 0 && support[i] == 0) continue;
    CategoryMetrics m;
    m.category = vocab.at(static_cast<uint32_t>(i));
    m.rank = static_cast<uint32_t>(i + 1);
    m.support = support[i];
    m.predicted = predicted[i];
    m.true_positives = tp[i];
    m.prf.precision = predicted[i] == 0 ? 0.0
                                        : static_cast<double>(tp[i]) /
                                              static_cast<double>(predicted[i]);
    m.prf.recall = support[i] == 0 ? 0.0
                                   : static_cast<double>(tp[i]) /
                                         static_cast<double>(support[i]);
    m.prf.f1 = F1Score(m.prf.precision, m.prf.recall);
    report.per_category.push_back(std::move(m));
  }

  auto macro = [&](std::string label, uint32_t low,
                   std::optional<uint32_t> high) {
    BucketMetrics bucket;
    bucket.label = std::move(label);
    double p = 0.0, r = 0.0;
    for (const auto &m : report.per_category) {
      if (m.rank < low || (high && m.rank > *high)) continue;
      p += m.prf.precision;
      r += m.prf.recall;
      ++bucket.num_categories;
    }
    if (bucket.num_categories > 0) {
      bucket.macro.precision = p / static_cast<double>(bucket.num_categories);
      bucket.macro.recall = r / static_cast<double>(bucket.num_categories);
      bucket.macro.f1 = F1Score(bucket.macro.precision, bucket.macro.recall);
    }
    report.buckets.push_back(std::move(bucket));
  };
  macro("Total", 1, std::nullopt);
  uint32_t low = 1;
  for (uint32_t bound : bucket_bounds) {
    macro(BucketLabel(low, bound), low, bound);
    low = bound + 1;
  }
  macro(BucketLabel(low, std::nullopt), low, std::nullopt);
  return report;
}

std::string_view ContextModeName(ContextMode mode) {
  switch (mode) {
    case ContextMode::kSentenceOnly: return "sentence_only";
    case ContextMode::kSentencePlusWindow50: return "sentence_plus_window50";
    case ContextMode::kSentencePlusFirstDocSentence:
      return "sentence_plus_first_doc_sentence";
  }
  return "sentence_only";
}

ContextMode ParseContextMode(std::string_view name) {
  for (auto mode : {ContextMode::kSentenceOnly,
                    ContextMode::kSentencePlusWindow50,
                    ContextMode::kSentencePlusFirstDocSentence}) {
    if (ContextModeName(mode) == name) return mode;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown context mode '" + std::string(name) + "'");
}

MentionExample BuildContext(const MentionExample &example, ContextMode mode,
                            size_t window) {
  MentionExample out = example;
  std::vector<std::string> prefix;
  std::vector<std::string> suffix;
  switch (mode) {
    case ContextMode::kSentenceOnly:
      return out;
    case ContextMode::kSentencePlusWindow50:
      prefix = TakeLast(Require(example.left_extra, "left_extra"), window);
      suffix = TakeFirst(Require(example.right_extra, "right_extra"), window);
      break;
    case ContextMode::kSentencePlusFirstDocSentence:
      prefix = Require(example.doc_first_sentence, "doc_first_sentence");
      break;
  }
  out.tokens = std::move(prefix);
  out.tokens.insert(out.tokens.end(), example.tokens.begin(),
                    example.tokens.end());
  out.tokens.insert(out.tokens.end(), suffix.begin(), suffix.end());
  size_t shift = out.tokens.size() - example.tokens.size() - suffix.size();
  out.span = {example.span.start + shift, example.span.end + shift};
  return out;
}

std::string EvalReportToJson(const EvalReport &report) {
  nlohmann::ordered_json j;
  j["num_examples"] = report.num_examples;
  j["linking_accuracy"] = report.linking_accuracy;
  j["most_frequent_entity_accuracy"] = report.most_frequent_entity_accuracy;
  j["gold_recall"] = report.gold_recall;
  j["backoff_rate"] = report.backoff_rate;
  if (report.typing) {
    nlohmann::ordered_json buckets = nlohmann::ordered_json::array();
    for (const auto &b : report.typing->buckets) {
      nlohmann::ordered_json item;
      item["label"] = b.label;
      item["precision"] = b.macro.precision;
      item["recall"] = b.macro.recall;
      item["f1"] = b.macro.f1;
      item["categories"] = b.num_categories;
      buckets.push_back(std::move(item));
    }
    nlohmann::ordered_json per_category = nlohmann::ordered_json::array();
    for (const auto &m : report.typing->per_category) {
      nlohmann::ordered_json item;
      item["category"] = m.category;
      item["rank"] = m.rank;
      item["precision"] = m.prf.precision;
      item["recall"] = m.prf.recall;
      item["f1"] = m.prf.f1;
      item["support"] = m.support;
      item["predicted"] = m.predicted;
      item["true_positives"] = m.true_positives;
      per_category.push_back(std::move(item));
    }
    j["typing_buckets"] = std::move(buckets);
    j["per_category"] = std::move(per_category);
  } else {
    j["typing_buckets"] = nullptr;
    j["per_category"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string FormatEvalReport(const EvalReport &report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "examples                        %zu\n",
                report.num_examples);
  out += line;
  std::snprintf(line, sizeof(line), "linking accuracy (ET4EL)        %.4f\n",
                report.linking_accuracy);
  out += line;
  std::snprintf(line, sizeof(line), "most frequent entity accuracy   %.4f\n",
                report.most_frequent_entity_accuracy);
  out += line;
  std::snprintf(line, sizeof(line), "candidate gold recall           %.4f\n",
                report.gold_recall);
  out += line;
  std::snprintf(line, sizeof(line), "prior backoff rate              %.4f\n",
                report.backoff_rate);
  out += line;
  if (report.typing) {
    out += "\ntyping (macro-averaged)\n";
    std::snprintf(line, sizeof(line), "%-12s %8s %8s %8s %10s\n", "bucket",
                  "P", "R", "F1", "categories");
    out += line;
    for (const auto &b : report.typing->buckets) {
      std::snprintf(line, sizeof(line), "%-12s %8.4f %8.4f %8.4f %10zu\n",
                    b.label.c_str(), b.macro.precision, b.macro.recall,
                    b.macro.f1, b.num_categories);
      out += line;
    }
  }
  return out;
}

}  // namespace et4el
