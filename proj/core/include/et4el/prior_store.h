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

#ifndef ET4EL_PRIOR_STORE_H_
#define ET4EL_PRIOR_STORE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace et4el {

inline constexpr double kDefaultCandidateThreshold = 0.05;

struct Candidate {
  std::string entity;
  double prior = 0.0;

  bool operator==(const Candidate &) const = default;
};

// Candidates ordered by descending prior, then ascending entity string.
struct CandidateSet {
  std::string mention;
  std::vector<Candidate> candidates;

  bool empty() const { return candidates.empty(); }
  size_t size() const { return candidates.size(); }
  bool Contains(std::string_view entity) const;
  bool operator==(const CandidateSet &) const = default;
};

// Anchor-count statistics behind the mention-entity prior p(e|m).
class PriorTable {
 public:
  // With fold_case, mention keys are ASCII-lowercased on insert and lookup.
  explicit PriorTable(bool fold_case = false) : fold_case_(fold_case) {}

  // Zero counts are ignored so that every stored count stays >= 1.
  void Add(std::string_view mention, std::string_view entity,
           uint64_t count = 1);
  void Merge(const PriorTable &other);

  uint64_t Count(std::string_view mention, std::string_view entity) const;
  uint64_t Total(std::string_view mention) const;
  double Probability(std::string_view mention, std::string_view entity) const;

  // All entities whose prior is >= threshold (inclusive). Unknown mentions
  // give an empty set. Throws Error(kInvalidArgument) unless
  // 0 <= threshold <= 1.
  CandidateSet Candidates(std::string_view mention,
                          double threshold = kDefaultCandidateThreshold) const;

  size_t num_mentions() const { return rows_.size(); }
  bool fold_case() const { return fold_case_; }

  // Sorted (mention, entity, count) triples; the canonical content of the
  // table independent of insertion order.
  std::vector<std::tuple<std::string, std::string, uint64_t>> Triples() const;

  // TSV: mention<TAB>entity<TAB>count, sorted by mention then entity.
  void Write(std::ostream &out) const;
  void Save(const std::filesystem::path &path) const;
  // Accepts any line order; repeated (mention, entity) lines are summed.
  static PriorTable Read(std::istream &in, bool fold_case = false);
  static PriorTable Load(const std::filesystem::path &path,
                         bool fold_case = false);

  bool operator==(const PriorTable &other) const;

 private:
  struct Row {
    std::unordered_map<std::string, uint64_t> counts;
    uint64_t total = 0;
  };

  std::string Key(std::string_view mention) const;
  const Row *FindRow(std::string_view mention) const;

  bool fold_case_;
  std::unordered_map<std::string, Row> rows_;
};

using AnchorLink = std::pair<std::string, std::string>;  // (mention, entity)

PriorTable Accumulate(std::span<const AnchorLink> links,
                      bool fold_case = false);

// Shard-parallel accumulate; identical result to Accumulate.
PriorTable AccumulateParallel(std::span<const AnchorLink> links, int workers,
                              bool fold_case = false);

// Fraction of records whose candidate list contains the gold entity.
// Throws Error(kInvalidArgument) on empty input.
double GoldRecall(
    std::span<const std::pair<CandidateSet, std::string>> records);

// Precomputed candidate lists, one JSON object per line:
//   {"mention":"...","candidates":[["entity",0.5],...]}
std::string CandidateSetToJson(const CandidateSet &set);
CandidateSet CandidateSetFromJson(std::string_view line);
std::vector<CandidateSet> ReadCandidateSets(const std::filesystem::path &path);
void WriteCandidateSets(const std::filesystem::path &path,
                        std::span<const CandidateSet> sets);

}  // namespace et4el

#endif  // ET4EL_PRIOR_STORE_H_
