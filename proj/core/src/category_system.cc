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

#include "et4el/category_system.h"

#include <algorithm>
#include <fstream>
#include <utility>

#include "et4el/error.h"
#include "et4el/text.h"

namespace et4el {
namespace {

struct Token {
  std::string_view text;
  size_t offset;
};

std::vector<Token> TokenizeWithOffsets(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.push_back({text.substr(start, i - start), start});
  }
  return tokens;
}

void AddUnique(std::vector<std::string> &out, std::string value) {
  if (std::find(out.begin(), out.end(), value) == out.end()) {
    out.push_back(std::move(value));
  }
}

}  // namespace

PrepositionList PrepositionList::Default() {
  return PrepositionList({"in", "from", "for", "of", "by", "involving"});
}

PrepositionList::PrepositionList(std::vector<std::string> words) {
  for (auto &word : words) {
    std::string lowered = AsciiLower(Trim(word));
    if (lowered.empty()) continue;
    AddUnique(words_, std::move(lowered));
  }
  if (words_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "preposition list is empty");
  }
}

bool PrepositionList::Matches(std::string_view token) const {
  while (!token.empty() && token.front() == '(') token.remove_prefix(1);
  while (!token.empty() && token.back() == ')') token.remove_suffix(1);
  if (token.empty()) return false;
  std::string lowered = AsciiLower(token);
  return std::find(words_.begin(), words_.end(), lowered) != words_.end();
}

std::vector<std::string> ExpandCategory(std::string_view raw,
                                        const PrepositionList &preps) {
  std::string_view trimmed = Trim(raw);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty category");
  }
  std::vector<std::string> out{std::string(raw)};
  std::vector<Token> tokens = TokenizeWithOffsets(trimmed);
  auto first = std::find_if(tokens.begin(), tokens.end(), [&](const Token &t) {
    return preps.Matches(t.text);
  });
  // No preposition, or nothing to its left.
  if (first == tokens.end() || first == tokens.begin()) return out;

  for (auto it = tokens.begin(); it != first; ++it) {
    AddUnique(out, std::string(it->text));
  }
  AddUnique(out, std::string(trimmed.substr(first->offset)));
  return out;
}

CategoryVocab::CategoryVocab(std::vector<std::string> entries)
    : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (uint32_t id = 0; id < entries_.size(); ++id) {
    if (entries_[id].empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty vocabulary entry");
    }
    if (!index_.emplace(entries_[id], id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate vocabulary entry '" + entries_[id] + "'");
    }
  }
}

std::optional<uint32_t> CategoryVocab::Find(std::string_view category) const {
  auto it = index_.find(std::string(category));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void CategoryVocab::Save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  for (const auto &entry : entries_) out << entry << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

CategoryVocab CategoryVocab::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    entries.push_back(line);
  }
  try {
    return CategoryVocab(std::move(entries));
  } catch (const Error &e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void CategoryMentionCounter::Add(std::string_view mention,
                                 std::span<const std::string> categories) {
  for (const auto &category : categories) {
    mentions_[category].emplace(mention);
  }
}

void CategoryMentionCounter::Merge(const CategoryMentionCounter &other) {
  for (const auto &[category, mentions] : other.mentions_) {
    mentions_[category].insert(mentions.begin(), mentions.end());
  }
}

size_t CategoryMentionCounter::Count(std::string_view category) const {
  auto it = mentions_.find(std::string(category));
  return it == mentions_.end() ? 0 : it->second.size();
}

CategoryVocab CategoryMentionCounter::Select(size_t n) const {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary size must be > 0");
  }
  std::vector<std::pair<size_t, const std::string *>> ranked;
  ranked.reserve(mentions_.size());
  for (const auto &[category, mentions] : mentions_) {
    ranked.emplace_back(mentions.size(), &category);
  }
  auto by_rank = [](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  };
  size_t keep = std::min(n, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                    by_rank);
  std::vector<std::string> entries;
  entries.reserve(keep);
  for (size_t i = 0; i < keep; ++i) entries.push_back(*ranked[i].second);
  return CategoryVocab(std::move(entries));
}

CategoryVocab SelectVocabulary(std::span<const CandidateCategories> stream,
                               size_t n) {
  CategoryMentionCounter counter;
  for (const auto &item : stream) counter.Add(item.mention, item.categories);
  return counter.Select(n);
}

}  // namespace et4el
