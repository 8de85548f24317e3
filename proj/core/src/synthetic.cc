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

#include "et4el/synthetic.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "et4el/error.h"
#include "et4el/random.h"
#include "et4el/text.h"

namespace et4el {
namespace {

constexpr const char *kCategoryNames[] = {
    "Software",   "Insects",     "Rivers",      "Cities",      "Novels",
    "Films",      "Painters",    "Composers",   "Footballers", "Mountains",
    "Lakes",      "Islands",     "Bridges",     "Castles",     "Airports",
    "Universities", "Newspapers", "Albums",     "Songs",       "Operas",
    "Poets",      "Chemists",    "Physicists",  "Sculptors",   "Architects",
    "Railways",   "Ships",       "Aircraft",    "Birds",       "Mammals",
    "Reptiles",   "Fungi",       "Minerals",    "Languages",   "Religions",
    "Festivals",  "Dances",      "Cuisines",    "Beverages",   "Sports",
    "Boxers",     "Cyclists",    "Swimmers",    "Racehorses",  "Volcanoes",
    "Deserts",    "Forests",     "Comets",      "Galaxies",    "Satellites",
};

constexpr const char *kNoiseWords[] = {
    "the",  "a",     "was",  "and",   "with",   "on",    "at",    "into",
    "after", "during", "near", "its", "their", "also", "then", "later",
};

class WordMaker {
 public:
  explicit WordMaker(Rng &rng) : rng_(rng) {}

  std::string Make() {
    static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    while (true) {
      std::string word;
      size_t syllables = 2 + rng_.UniformIndex(2);
      for (size_t s = 0; s < syllables; ++s) {
        word.push_back(kConsonants[rng_.UniformIndex(kConsonants.size())]);
        word.push_back(kVowels[rng_.UniformIndex(kVowels.size())]);
      }
      if (used_.insert(word).second) return word;
    }
  }

 private:
  Rng &rng_;
  std::set<std::string> used_;
};

std::string Capitalize(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') {
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
  }
  return word;
}

struct Entity {
  std::string title;
  std::vector<size_t> categories;
};

struct MentionGroup {
  std::vector<std::string> mention_tokens;
  std::vector<size_t> train_entities;
  std::vector<size_t> test_entities;
  size_t dominant = 0;
};

}  // namespace

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticConfig &config) {
  const size_t per_mention_categories =
      config.categories_per_entity * config.entities_per_mention;
  if (config.entities_per_mention < 2 || config.num_mentions < 2 ||
      config.categories_per_entity == 0 ||
      per_mention_categories > config.num_categories ||
      config.sentences_per_article == 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid synthetic config");
  }
  Rng rng(config.seed);
  WordMaker words(rng);
  SyntheticCorpus corpus;

  for (size_t c = 0; c < config.num_categories; ++c) {
    corpus.category_names.push_back(
        c < std::size(kCategoryNames) ? std::string(kCategoryNames[c])
                                      : "Category" + std::to_string(c));
  }
  std::vector<std::vector<std::string>> category_words(config.num_categories);
  for (auto &list : category_words) {
    for (size_t k = 0; k < config.words_per_category; ++k) {
      list.push_back(words.Make());
    }
  }

  // Entities grouped under ambiguous mentions; siblings get disjoint
  // category sets so that the right types always separate them.
  std::vector<Entity> entities;
  std::vector<MentionGroup> groups(config.num_mentions);
  std::vector<size_t> category_order(config.num_categories);
  std::iota(category_order.begin(), category_order.end(), size_t{0});
  for (size_t m = 0; m < config.num_mentions; ++m) {
    MentionGroup &group = groups[m];
    group.mention_tokens.push_back(Capitalize(words.Make()));
    if (m % 5 == 4) group.mention_tokens.push_back(Capitalize(words.Make()));
    std::string mention = JoinTokens(group.mention_tokens);
    rng.Shuffle(std::span<size_t>(category_order));
    for (size_t e = 0; e < config.entities_per_mention; ++e) {
      Entity entity;
      for (size_t k = 0; k < config.categories_per_entity; ++k) {
        entity.categories.push_back(
            category_order[e * config.categories_per_entity + k]);
      }
      entity.title =
          mention + " (" + corpus.category_names[entity.categories[0]] + ")";
      (m % 2 == 1 ? group.test_entities : group.train_entities)
          .push_back(entities.size());
      entities.push_back(std::move(entity));
    }
    group.dominant = m % 2 == 1 ? group.test_entities.front()
                                : group.train_entities.front();
  }

  for (const auto &entity : entities) {
    CategoryAssignment assignment;
    assignment.entity = entity.title;
    for (size_t c : entity.categories) {
      assignment.raw_categories.push_back(corpus.category_names[c]);
    }
    corpus.assignments.push_back(std::move(assignment));
  }

  auto noise = [&](size_t n) {
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) {
      out.emplace_back(kNoiseWords[rng.UniformIndex(std::size(kNoiseWords))]);
    }
    return out;
  };
  // Context words for one mention of `entity`, with the mention inserted.
  auto sentence = [&](const Entity &entity, const MentionGroup &group,
                      TokenSpan &span) {
    std::vector<std::string> content = noise(config.noise_words);
    for (size_t i = 0; i < config.indicative_words; ++i) {
      size_t c = entity.categories[rng.UniformIndex(entity.categories.size())];
      const auto &list = category_words[c];
      content.push_back(list[rng.UniformIndex(list.size())]);
    }
    rng.Shuffle(std::span<std::string>(content));
    size_t at = rng.UniformIndex(content.size() + 1);
    std::vector<std::string> tokens(content.begin(), content.begin() + at);
    span.start = tokens.size();
    tokens.insert(tokens.end(), group.mention_tokens.begin(),
                  group.mention_tokens.end());
    span.end = tokens.size();
    tokens.insert(tokens.end(), content.begin() + at, content.end());
    tokens.push_back(".");
    return tokens;
  };
  auto headline = [&] {
    std::vector<std::string> tokens = noise(4);
    for (auto &t : tokens) t = Capitalize(t);
    tokens.push_back(".");
    return tokens;
  };

  // Article corpus: training pairs only.
  std::vector<size_t> train_groups;
  for (size_t m = 0; m < groups.size(); ++m) {
    if (!groups[m].train_entities.empty()) train_groups.push_back(m);
  }
  std::map<std::pair<std::string, std::string>, uint64_t> corpus_counts;
  RawArticle article;
  for (size_t s = 0; s < config.train_sentences; ++s) {
    const MentionGroup &group =
        groups[train_groups[rng.UniformIndex(train_groups.size())]];
    const Entity &entity = entities[group.train_entities[rng.UniformIndex(
        group.train_entities.size())]];
    TokenSpan span;
    auto tokens = sentence(entity, group, span);
    std::string mention = JoinTokens(tokens, span.start, span.end);
    ++corpus_counts[{mention, entity.title}];

    if (article.title.empty()) {
      article.title = "Synthetic article " + std::to_string(corpus.articles.size());
      article.body = JoinTokens(headline());
    }
    std::string line = JoinTokens(tokens, 0, span.start);
    if (!line.empty()) line.push_back(' ');
    line += "[[" + entity.title + "|" + mention + "]]";
    if (span.end < tokens.size()) {
      line += " " + JoinTokens(tokens, span.end, tokens.size());
    }
    article.body += "\n" + line;
    if (s % config.sentences_per_article == config.sentences_per_article - 1 ||
        s + 1 == config.train_sentences) {
      corpus.articles.push_back(std::move(article));
      article = RawArticle();
    }
  }

  // Dump-level anchor counts: one dominant entity per mention.
  for (const auto &group : groups) {
    std::string mention = JoinTokens(group.mention_tokens);
    std::vector<size_t> all = group.train_entities;
    all.insert(all.end(), group.test_entities.begin(),
               group.test_entities.end());
    for (size_t e : all) {
      uint64_t target = e == group.dominant ? 400 : 40 + rng.UniformIndex(41);
      uint64_t seen = 0;
      if (auto it = corpus_counts.find({mention, entities[e].title});
          it != corpus_counts.end()) {
        seen = it->second;
      }
      if (target > seen) {
        corpus.extra_counts.emplace_back(mention, entities[e].title,
                                         target - seen);
      }
    }
  }

  // Test examples: held-out pairs only.
  std::vector<std::pair<size_t, size_t>> test_pairs;  // (group, entity)
  for (size_t m = 0; m < groups.size(); ++m) {
    for (size_t e : groups[m].test_entities) test_pairs.emplace_back(m, e);
  }
  rng.Shuffle(std::span<std::pair<size_t, size_t>>(test_pairs));
  for (size_t t = 0; t < config.test_examples; ++t) {
    auto [m, e] = test_pairs[t % test_pairs.size()];
    MentionExample example;
    example.tokens = sentence(entities[e], groups[m], example.span);
    example.mention =
        JoinTokens(example.tokens, example.span.start, example.span.end);
    example.entity = entities[e].title;
    example.doc_first_sentence = headline();
    example.left_extra = noise(10);
    example.right_extra = noise(10);
    corpus.test_examples.push_back(std::move(example));
  }
  return corpus;
}

void WriteSyntheticCorpus(const SyntheticCorpus &corpus,
                          const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char *name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) {
      throw Error(ErrorCode::kIoError, "cannot write " + (dir / name).string());
    }
    return out;
  };
  {
    auto out = open("articles.txt");
    WriteArticles(out, corpus.articles);
  }
  {
    auto out = open("categories.tsv");
    for (const auto &a : corpus.assignments) {
      for (const auto &c : a.raw_categories) out << a.entity << '\t' << c << '\n';
    }
  }
  {
    auto out = open("anchor_counts.tsv");
    for (const auto &[mention, entity, count] : corpus.extra_counts) {
      out << mention << '\t' << entity << '\t' << count << '\n';
    }
  }
  WriteMentionsJsonl(dir / "test_mentions.jsonl", corpus.test_examples);
}

}  // namespace et4el
