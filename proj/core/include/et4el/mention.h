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

#ifndef ET4EL_MENTION_H_
#define ET4EL_MENTION_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace et4el {

// Half-open token interval [start, end).
struct TokenSpan {
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start; }
  bool operator==(const TokenSpan &) const = default;
};

// A mention in a tokenized sentence, optionally labeled with its entity and
// the entity's categories. The extra context fields feed the context-amount
// variants used at evaluation time.
struct MentionExample {
  std::string mention;
  std::vector<std::string> tokens;
  TokenSpan span;
  std::optional<std::string> entity;
  std::optional<std::vector<std::string>> categories;
  std::optional<std::vector<std::string>> doc_first_sentence;
  std::optional<std::vector<std::string>> left_extra;
  std::optional<std::vector<std::string>> right_extra;

  bool operator==(const MentionExample &) const = default;
};

// Checks the structural invariants: a non-empty span inside the token
// sequence, a mention equal to the joined span tokens, and no categories
// without an entity. Throws Error(kInvalidArgument) naming the violation.
void ValidateMention(const MentionExample &example);

// JSONL codec. Keys are written in the fixed order mention, tokens, span,
// entity, categories, doc_first_sentence, left_extra, right_extra.
std::string MentionToJson(const MentionExample &example);
MentionExample MentionFromJson(std::string_view line);

void WriteMentionsJsonl(std::ostream &out,
                        const std::vector<MentionExample> &examples);
void WriteMentionsJsonl(const std::filesystem::path &path,
                        const std::vector<MentionExample> &examples);
std::vector<MentionExample> ReadMentionsJsonl(std::istream &in);
std::vector<MentionExample> ReadMentionsJsonl(
    const std::filesystem::path &path);

}  // namespace et4el

#endif  // ET4EL_MENTION_H_
