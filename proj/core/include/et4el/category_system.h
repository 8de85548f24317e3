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

#ifndef ET4EL_CATEGORY_SYSTEM_H_
#define ET4EL_CATEGORY_SYSTEM_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace et4el {

// Lowercase words at which a category is split during expansion.
class PrepositionList {
 public:
  // in, from, for, of, by, involving.
  static PrepositionList Default();

  // Lowercases and removes duplicates, keeping first occurrence order.
  // Throws Error(kInvalidArgument) when the resulting list is empty.
  explicit PrepositionList(std::vector<std::string> words);

  // Whole-token, case-insensitive match. Surrounding parentheses on the token
  // are ignored, so "(in" matches "in".
  bool Matches(std::string_view token) const;

  const std::vector<std::string> &words() const { return words_; }

 private:
  std::vector<std::string> words_;
};

// Expands a raw category at its first preposition. The result always starts
// with the raw string, followed by each word left of the preposition and then
// the prepositional phrase itself; duplicates are dropped.
//
//   "Cities in New York (state)"
//     -> {"Cities in New York (state)", "Cities", "in New York (state)"}
//
// Categories without a preposition, or starting with one, expand to {raw}.
std::vector<std::string> ExpandCategory(std::string_view raw,
                                        const PrepositionList &preps);

// Ordered category vocabulary. Ids are positions in rank order.
class CategoryVocab {
 public:
  CategoryVocab() = default;
  // Throws Error(kInvalidArgument) on empty or duplicate entries.
  explicit CategoryVocab(std::vector<std::string> entries);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::string> &entries() const { return entries_; }
  const std::string &at(uint32_t id) const { return entries_.at(id); }
  std::optional<uint32_t> Find(std::string_view category) const;

  // One category per line, rank order.
  void Save(const std::filesystem::path &path) const;
  static CategoryVocab Load(const std::filesystem::path &path);

  bool operator==(const CategoryVocab &other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<std::string> entries_;
  std::unordered_map<std::string, uint32_t> index_;
};

// Mergeable category -> distinct-mention counter used for vocabulary
// selection. Shards can be filled independently and merged by set union.
class CategoryMentionCounter {
 public:
  void Add(std::string_view mention, std::span<const std::string> categories);
  void Merge(const CategoryMentionCounter &other);

  // Number of distinct mentions seen with the category.
  size_t Count(std::string_view category) const;
  size_t num_categories() const { return mentions_.size(); }

  // Top-n categories by distinct-mention count, ties broken by ascending
  // category string. Throws Error(kInvalidArgument) when n == 0.
  CategoryVocab Select(size_t n) const;

 private:
  std::unordered_map<std::string, std::unordered_set<std::string>> mentions_;
};

// One (mention, candidate entity) pair with the candidate's expanded
// categories, as produced from unlabeled target-domain data.
struct CandidateCategories {
  std::string mention;
  std::string entity;
  std::vector<std::string> categories;
};

CategoryVocab SelectVocabulary(std::span<const CandidateCategories> stream,
                               size_t n);

}  // namespace et4el

#endif  // ET4EL_CATEGORY_SYSTEM_H_
