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

#ifndef ET4EL_EVAL_H_
#define ET4EL_EVAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "et4el/category_system.h"
#include "et4el/mention.h"
#include "et4el/typing_model.h"

namespace et4el {

// Exact-match fraction over (chosen, gold) pairs. Throws on empty input.
double LinkingAccuracy(
    std::span<const std::pair<std::string, std::string>> predictions);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Harmonic mean, 0 when both are 0.
double F1Score(double precision, double recall);

struct CategoryMetrics {
  std::string category;
  uint32_t rank = 0;  // 1-based vocabulary rank
  PrecisionRecall prf;
  uint64_t support = 0;  // gold positives
  uint64_t predicted = 0;
  uint64_t true_positives = 0;
};

// Macro precision and recall are means over the bucket's categories; F1 is
// the harmonic mean of those two means.
struct BucketMetrics {
  std::string label;
  PrecisionRecall macro;
  size_t num_categories = 0;
};

struct TypingReport {
  std::vector<BucketMetrics> buckets;  // "Total" first, then rank buckets
  std::vector<CategoryMetrics> per_category;
};

// Upper rank bounds of the frequency buckets 1-100, 101-500, 501-10000 and
// 10001+.
inline constexpr uint32_t kDefaultBucketBounds[] = {100, 500, 10000};

// A category counts as predicted when t_i > threshold. Categories with no
// gold and no predicted occurrence are left out of every macro average.
// Throws Error(kInvalidArgument) on mismatched lengths.
TypingReport TypingMetrics(std::span<const TypePosterior> predictions,
                           std::span<const LabelSet> golds,
                           const CategoryVocab &vocab, double threshold = 0.5,
                           std::span<const uint32_t> bucket_bounds =
                               kDefaultBucketBounds);

enum class ContextMode {
  kSentenceOnly,
  kSentencePlusWindow50,
  kSentencePlusFirstDocSentence,
};

std::string_view ContextModeName(ContextMode mode);
ContextMode ParseContextMode(std::string_view name);

// Extends the token sequence per mode and re-indexes the span. Throws
// Error(kMissingField) naming the absent auxiliary field.
MentionExample BuildContext(const MentionExample &example, ContextMode mode,
                            size_t window = 50);

struct EvalReport {
  size_t num_examples = 0;
  double linking_accuracy = 0.0;
  double most_frequent_entity_accuracy = 0.0;
  double gold_recall = 0.0;
  double backoff_rate = 0.0;
  std::optional<TypingReport> typing;
};

std::string EvalReportToJson(const EvalReport &report);
std::string FormatEvalReport(const EvalReport &report);

}  // namespace et4el

#endif  // ET4EL_EVAL_H_
