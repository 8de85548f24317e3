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

#ifndef ET4EL_SYNTHETIC_H_
#define ET4EL_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "et4el/mention.h"
#include "et4el/wiki_ingest.h"

namespace et4el {

// Parameters of a generated linking benchmark. Every category owns a small
// set of indicative context words; each ambiguous mention string names
// several entities with disjoint category sets. Every other mention is held
// out: its entities never appear in the article corpus and only its test
// examples mention them, so no test (mention, entity) pair is ever seen in
// training sentences.
struct SyntheticConfig {
  size_t num_categories = 50;
  size_t categories_per_entity = 3;
  size_t words_per_category = 8;
  size_t num_mentions = 60;
  size_t entities_per_mention = 4;
  size_t train_sentences = 5000;
  size_t sentences_per_article = 10;
  size_t test_examples = 300;
  size_t indicative_words = 5;  // per sentence
  size_t noise_words = 3;       // per sentence
  uint64_t seed = 7;
};

struct SyntheticCorpus {
  std::vector<RawArticle> articles;
  std::vector<CategoryAssignment> assignments;
  // Anchor counts beyond the article corpus, as (mention, entity, count).
  // Merged with the corpus links they skew the prior toward one entity per
  // mention.
  std::vector<std::tuple<std::string, std::string, uint64_t>> extra_counts;
  std::vector<MentionExample> test_examples;
  std::vector<std::string> category_names;
};

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticConfig &config);

// Writes articles.txt, categories.tsv, anchor_counts.tsv and
// test_mentions.jsonl into `dir`.
void WriteSyntheticCorpus(const SyntheticCorpus &corpus,
                          const std::filesystem::path &dir);

}  // namespace et4el

#endif  // ET4EL_SYNTHETIC_H_
