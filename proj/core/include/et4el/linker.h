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

#ifndef ET4EL_LINKER_H_
#define ET4EL_LINKER_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "et4el/category_system.h"
#include "et4el/prior_store.h"
#include "et4el/typing_model.h"
#include "et4el/wiki_ingest.h"

namespace et4el {

// Entity -> sorted vocabulary ids of its (expanded) categories.
class EntityCategoryIndex {
 public:
  // Ids are sorted and deduplicated. Entities may have empty sets.
  void Set(std::string entity, std::vector<uint32_t> category_ids);
  const std::vector<uint32_t> *Find(std::string_view entity) const;
  size_t size() const { return entities_.size(); }

  static EntityCategoryIndex Build(
      const CategoryAssignments &assignments, const CategoryVocab &vocab,
      const PrepositionList &preps = PrepositionList::Default());

 private:
  std::unordered_map<std::string, std::vector<uint32_t>> entities_;
};

// kSum is the linking score; the other two exist for ablations.
enum class ScoringMode { kSum, kMean, kLogOdds };

std::string_view ScoringModeName(ScoringMode mode);
ScoringMode ParseScoringMode(std::string_view name);

struct LinkOptions {
  // Back off to the prior when the best candidate has fewer categories.
  size_t backoff_min_categories = 2;
  // Back off when the top two scores are within this distance.
  double tie_epsilon = 1e-9;
  ScoringMode mode = ScoringMode::kSum;
};

struct LinkDiagnostics {
  std::atomic<uint64_t> unindexed_candidates{0};
  std::atomic<uint64_t> backoffs{0};
};

struct ScoredCandidate {
  std::string entity;
  double score = 0.0;
};

struct LinkPrediction {
  std::string mention;
  std::vector<ScoredCandidate> scores;  // descending
  std::string chosen;
  bool used_backoff = false;
};

// Score of each candidate, in candidate order. For kSum the score is the sum
// of t_i over the candidate's category ids, accumulated in ascending id order.
// Candidates missing from the index score as if they had no categories.
// Throws Error(kInvalidArgument) for an empty candidate set.
std::vector<ScoredCandidate> ScoreCandidates(
    const TypePosterior &posterior, const CandidateSet &candidates,
    const EntityCategoryIndex &index, ScoringMode mode = ScoringMode::kSum,
    LinkDiagnostics *diagnostics = nullptr);

// Picks the score argmax, or the prior argmax when the decision is
// unreliable (see LinkOptions). Remaining ties go to the higher prior, then
// the smaller entity string. Priors come from `prior` when given, otherwise
// from the candidate set itself.
LinkPrediction Link(const TypePosterior &posterior,
                    const CandidateSet &candidates,
                    const EntityCategoryIndex &index, const PriorTable *prior,
                    const LinkOptions &options = {},
                    LinkDiagnostics *diagnostics = nullptr);

// Highest-prior candidate; ties by ascending entity string.
std::string MostFrequentEntity(const CandidateSet &candidates);

// {"mention":...,"chosen":...,"used_backoff":...,"scores":[[entity,score],...]}
// chosen is null when the candidate set was empty.
std::string PredictionToJson(const std::optional<LinkPrediction> &prediction,
                             std::string_view mention);
struct PredictionRecord {
  std::string mention;
  std::optional<std::string> chosen;
  bool used_backoff = false;
  std::vector<ScoredCandidate> scores;
};
PredictionRecord PredictionFromJson(std::string_view line);

}  // namespace et4el

#endif  // ET4EL_LINKER_H_
