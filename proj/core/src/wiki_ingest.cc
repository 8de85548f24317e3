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

#include "et4el/wiki_ingest.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "et4el/error.h"
#include "et4el/parallel.h"
#include "et4el/random.h"
#include "et4el/text.h"

namespace et4el {
namespace {

constexpr std::string_view kOpen = "[[";
constexpr std::string_view kClose = "]]";
constexpr std::string_view kRecordSeparator = "%%%%";

void Bump(std::atomic<uint64_t> IngestDiagnostics::*counter,
          IngestDiagnostics *diagnostics) {
  if (diagnostics != nullptr) ++(diagnostics->*counter);
}

// Plain text between links. Stray "]]" left over from malformed markup acts
// as whitespace.
void AppendPlain(std::string_view text, std::vector<std::string> &tokens) {
  std::string cleaned(text);
  for (size_t pos = cleaned.find(kClose); pos != std::string::npos;
       pos = cleaned.find(kClose, pos)) {
    cleaned.replace(pos, kClose.size(), "  ");
  }
  for (auto &token : SplitWhitespace(cleaned)) tokens.push_back(std::move(token));
}

std::string StripCarriageReturn(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::vector<std::string> SplitSentences(std::string_view body, bool split) {
  std::vector<std::string> sentences;
  auto emit = [&](std::string_view piece) {
    std::string_view trimmed = Trim(piece);
    if (!trimmed.empty()) sentences.emplace_back(trimmed);
  };
  for (std::string_view line : SplitFields(body, '\n')) {
    if (!split) {
      emit(line);
      continue;
    }
    size_t start = 0;
    bool in_link = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line.substr(i, 2) == kOpen) {
        in_link = true;
        ++i;
      } else if (line.substr(i, 2) == kClose) {
        in_link = false;
        ++i;
      } else if (!in_link && (line[i] == '.' || line[i] == '!' ||
                              line[i] == '?') &&
                 i + 1 < line.size() && line[i + 1] == ' ') {
        emit(line.substr(start, i + 1 - start));
        start = i + 1;
      }
    }
    emit(line.substr(start));
  }
  return sentences;
}

ParsedSentence ParseSentence(std::string_view sentence,
                             IngestDiagnostics *diagnostics) {
  ParsedSentence parsed;
  size_t pos = 0;
  while (pos < sentence.size()) {
    size_t open = sentence.find(kOpen, pos);
    if (open == std::string_view::npos) {
      AppendPlain(sentence.substr(pos), parsed.tokens);
      break;
    }
    AppendPlain(sentence.substr(pos, open - pos), parsed.tokens);
    size_t body = open + kOpen.size();
    size_t close = sentence.find(kClose, body);
    if (close == std::string_view::npos) {
      Bump(&IngestDiagnostics::unclosed_links, diagnostics);
      AppendPlain(sentence.substr(body), parsed.tokens);
      break;
    }
    size_t nested = sentence.find(kOpen, body);
    if (nested < close) {
      // Drop the outer opener; the inner link is parsed on its own.
      Bump(&IngestDiagnostics::nested_links, diagnostics);
      AppendPlain(sentence.substr(body, nested - body), parsed.tokens);
      pos = nested;
      continue;
    }
    std::string_view inner = sentence.substr(body, close - body);
    pos = close + kClose.size();

    std::string_view target = inner;
    std::string_view anchor = inner;
    if (size_t bar = inner.find('|'); bar != std::string_view::npos) {
      target = inner.substr(0, bar);
      anchor = inner.substr(bar + 1);
    }
    target = Trim(target);
    if (Trim(anchor).empty()) anchor = target;
    if (target.empty()) {
      Bump(&IngestDiagnostics::empty_targets, diagnostics);
      AppendPlain(anchor, parsed.tokens);
      continue;
    }
    std::vector<std::string> anchor_tokens = SplitWhitespace(anchor);
    LinkOccurrence link;
    link.entity = std::string(target);
    link.span.start = parsed.tokens.size();
    for (auto &token : anchor_tokens) parsed.tokens.push_back(std::move(token));
    link.span.end = parsed.tokens.size();
    link.mention = JoinTokens(parsed.tokens, link.span.start, link.span.end);
    parsed.links.push_back(std::move(link));
  }
  for (auto &link : parsed.links) link.tokens = parsed.tokens;
  return parsed;
}

std::vector<LinkOccurrence> ExtractLinks(const RawArticle &article,
                                         const ExtractOptions &options,
                                         IngestDiagnostics *diagnostics) {
  std::vector<LinkOccurrence> links;
  auto sentences = SplitSentences(article.body, options.split_sentences);
  for (size_t s = 0; s < sentences.size(); ++s) {
    ParsedSentence parsed = ParseSentence(sentences[s], diagnostics);
    for (auto &link : parsed.links) {
      link.sentence_index = s;
      links.push_back(std::move(link));
    }
  }
  return links;
}

std::vector<MentionExample> ExtractExamples(const RawArticle &article,
                                            const ExtractOptions &options,
                                            IngestDiagnostics *diagnostics) {
  auto sentences = SplitSentences(article.body, options.split_sentences);
  std::vector<ParsedSentence> parsed;
  parsed.reserve(sentences.size());
  for (const auto &sentence : sentences) {
    parsed.push_back(ParseSentence(sentence, diagnostics));
  }

  std::vector<std::string> first_sentence;
  if (article.first_sentence_end) {
    for (const auto &p : parsed) {
      for (const auto &token : p.tokens) {
        if (first_sentence.size() >= *article.first_sentence_end) break;
        first_sentence.push_back(token);
      }
    }
  } else if (!parsed.empty()) {
    first_sentence = parsed.front().tokens;
  }

  const size_t window = options.context_window;
  std::vector<MentionExample> examples;
  for (size_t s = 0; s < parsed.size(); ++s) {
    if (parsed[s].links.empty()) continue;
    // Up to `window` tokens from the preceding and following sentences.
    std::vector<std::string> left;
    for (size_t k = s; k > 0 && left.size() < window; --k) {
      const auto &tokens = parsed[k - 1].tokens;
      size_t take = std::min(window - left.size(), tokens.size());
      left.insert(left.begin(), tokens.end() - take, tokens.end());
    }
    std::vector<std::string> right;
    for (size_t k = s + 1; k < parsed.size() && right.size() < window; ++k) {
      const auto &tokens = parsed[k].tokens;
      size_t take = std::min(window - right.size(), tokens.size());
      right.insert(right.end(), tokens.begin(), tokens.begin() + take);
    }
    for (auto &link : parsed[s].links) {
      MentionExample example;
      example.mention = std::move(link.mention);
      example.tokens = parsed[s].tokens;
      example.span = link.span;
      example.entity = std::move(link.entity);
      example.doc_first_sentence = first_sentence;
      example.left_extra = left;
      example.right_extra = right;
      examples.push_back(std::move(example));
    }
  }
  return examples;
}

std::vector<MentionExample> ExtractAllExamples(
    std::span<const RawArticle> articles, const ExtractOptions &options,
    int workers, IngestDiagnostics *diagnostics) {
  std::vector<std::vector<MentionExample>> shards(
      NumShards(articles.size(), workers));
  ParallelShards(articles.size(), workers,
                 [&](size_t shard, size_t begin, size_t end) {
                   for (size_t i = begin; i < end; ++i) {
                     auto examples =
                         ExtractExamples(articles[i], options, diagnostics);
                     std::move(examples.begin(), examples.end(),
                               std::back_inserter(shards[shard]));
                   }
                 });
  std::vector<MentionExample> all;
  for (auto &shard : shards) {
    std::move(shard.begin(), shard.end(), std::back_inserter(all));
  }
  return all;
}

std::vector<RawArticle> ReadArticles(std::istream &in) {
  std::vector<RawArticle> articles;
  std::vector<std::string> record;
  auto flush = [&] {
    auto first = std::find_if(record.begin(), record.end(), [](const auto &l) {
      return !Trim(l).empty();
    });
    if (first != record.end()) {
      RawArticle article;
      article.title = std::string(Trim(*first));
      for (auto it = first + 1; it != record.end(); ++it) {
        if (!article.body.empty()) article.body.push_back('\n');
        article.body += *it;
      }
      articles.push_back(std::move(article));
    }
    record.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    line = StripCarriageReturn(std::move(line));
    if (line == kRecordSeparator) {
      flush();
    } else {
      record.push_back(std::move(line));
    }
  }
  flush();
  return articles;
}

std::vector<RawArticle> ReadArticles(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  return ReadArticles(in);
}

void WriteArticles(std::ostream &out, std::span<const RawArticle> articles) {
  for (const auto &article : articles) {
    out << article.title << '\n';
    if (!article.body.empty()) out << article.body << '\n';
    out << kRecordSeparator << '\n';
  }
}

CategoryAssignments ReadCategoryAssignments(std::istream &in) {
  CategoryAssignments assignments;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = StripCarriageReturn(std::move(line));
    if (Trim(line).empty()) continue;
    auto fields = SplitFields(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || Trim(fields[1]).empty()) {
      throw Error(ErrorCode::kParseError,
                  "categories line " + std::to_string(line_number) +
                      ": expected entity<TAB>category");
    }
    auto &assignment = assignments[std::string(fields[0])];
    assignment.entity = std::string(fields[0]);
    std::string category(fields[1]);
    auto &raw = assignment.raw_categories;
    if (std::find(raw.begin(), raw.end(), category) == raw.end()) {
      raw.push_back(std::move(category));
    }
  }
  return assignments;
}

CategoryAssignments ReadCategoryAssignments(
    const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  return ReadCategoryAssignments(in);
}

std::vector<MentionExample> AttachCategories(
    std::span<const MentionExample> links,
    const CategoryAssignments &assignments, const CategoryVocab &vocab,
    const PrepositionList &preps, IngestDiagnostics *diagnostics) {
  // Vocabulary ids per entity, computed once.
  std::unordered_map<std::string, std::vector<uint32_t>> cache;
  auto ids_for = [&](const std::string &entity)
      -> const std::vector<uint32_t> * {
    auto cached = cache.find(entity);
    if (cached != cache.end()) return &cached->second;
    auto it = assignments.find(entity);
    if (it == assignments.end()) return nullptr;
    std::vector<uint32_t> ids;
    for (const auto &raw : it->second.raw_categories) {
      for (const auto &category : ExpandCategory(raw, preps)) {
        if (auto id = vocab.Find(category)) ids.push_back(*id);
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return &cache.emplace(entity, std::move(ids)).first->second;
  };

  std::vector<MentionExample> out;
  for (const auto &link : links) {
    if (!link.entity) continue;
    const std::vector<uint32_t> *ids = ids_for(*link.entity);
    if (ids == nullptr) {
      Bump(&IngestDiagnostics::missing_assignments, diagnostics);
      continue;
    }
    if (ids->empty()) {
      Bump(&IngestDiagnostics::no_vocab_categories, diagnostics);
      continue;
    }
    MentionExample example = link;
    std::vector<std::string> categories;
    categories.reserve(ids->size());
    for (uint32_t id : *ids) categories.push_back(vocab.at(id));
    example.categories = std::move(categories);
    out.push_back(std::move(example));
  }
  return out;
}

TrainDevSplit SampleTrainingSet(std::span<const MentionExample> examples,
                                size_t n_train, size_t n_dev, uint64_t seed) {
  size_t wanted = n_train + n_dev;
  if (wanted > examples.size()) {
    throw Error(ErrorCode::kInsufficientData,
                "requested " + std::to_string(n_train) + " train + " +
                    std::to_string(n_dev) + " dev examples but only " +
                    std::to_string(examples.size()) + " are available");
  }
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  // Partial Fisher-Yates: the first `wanted` slots become a uniform sample.
  Rng rng(seed);
  for (size_t i = 0; i < wanted; ++i) {
    size_t j = i + rng.UniformIndex(order.size() - i);
    std::swap(order[i], order[j]);
  }
  TrainDevSplit split;
  split.train.reserve(n_train);
  split.dev.reserve(n_dev);
  for (size_t i = 0; i < n_train; ++i) split.train.push_back(examples[order[i]]);
  for (size_t i = n_train; i < wanted; ++i) {
    split.dev.push_back(examples[order[i]]);
  }
  return split;
}

}  // namespace et4el
