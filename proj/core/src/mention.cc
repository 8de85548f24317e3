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

#include "et4el/mention.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "et4el/error.h"
#include "et4el/text.h"
#include "json.hpp"

namespace et4el {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json OptionalTokens(
    const std::optional<std::vector<std::string>> &tokens) {
  if (!tokens) return nullptr;
  return ordered_json(*tokens);
}

std::optional<std::vector<std::string>> ReadOptionalTokens(
    const nlohmann::json &object, const char *key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) {
    throw Error(ErrorCode::kParseError,
                std::string("field '") + key + "' must be an array or null");
  }
  return it->get<std::vector<std::string>>();
}

}  // namespace

void ValidateMention(const MentionExample &example) {
  const TokenSpan &span = example.span;
  if (span.start >= span.end || span.end > example.tokens.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "span [" + std::to_string(span.start) + "," +
                    std::to_string(span.end) + ") outside " +
                    std::to_string(example.tokens.size()) + " tokens");
  }
  if (JoinTokens(example.tokens, span.start, span.end) != example.mention) {
    throw Error(ErrorCode::kInvalidArgument,
                "mention '" + example.mention + "' does not match its span");
  }
  if (example.categories && !example.entity) {
    throw Error(ErrorCode::kInvalidArgument,
                "categories present without an entity");
  }
}

std::string MentionToJson(const MentionExample &example) {
  ordered_json j;
  j["mention"] = example.mention;
  j["tokens"] = example.tokens;
  j["span"] = {example.span.start, example.span.end};
  j["entity"] = example.entity ? ordered_json(*example.entity)
                               : ordered_json(nullptr);
  j["categories"] = OptionalTokens(example.categories);
  j["doc_first_sentence"] = OptionalTokens(example.doc_first_sentence);
  j["left_extra"] = OptionalTokens(example.left_extra);
  j["right_extra"] = OptionalTokens(example.right_extra);
  return j.dump();
}

MentionExample MentionFromJson(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("invalid mention JSON: ") + e.what());
  }
  MentionExample example;
  try {
    example.mention = j.at("mention").get<std::string>();
    example.tokens = j.at("tokens").get<std::vector<std::string>>();
    const auto &span = j.at("span");
    if (!span.is_array() || span.size() != 2) {
      throw Error(ErrorCode::kParseError, "span must be [start,end)");
    }
    example.span = {span[0].get<size_t>(), span[1].get<size_t>()};
    if (auto it = j.find("entity"); it != j.end() && !it->is_null()) {
      example.entity = it->get<std::string>();
    }
    example.categories = ReadOptionalTokens(j, "categories");
    example.doc_first_sentence = ReadOptionalTokens(j, "doc_first_sentence");
    example.left_extra = ReadOptionalTokens(j, "left_extra");
    example.right_extra = ReadOptionalTokens(j, "right_extra");
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed mention record: ") + e.what());
  }
  try {
    ValidateMention(example);
  } catch (const Error &e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return example;
}

void WriteMentionsJsonl(std::ostream &out,
                        const std::vector<MentionExample> &examples) {
  for (const auto &example : examples) out << MentionToJson(example) << '\n';
}

void WriteMentionsJsonl(const std::filesystem::path &path,
                        const std::vector<MentionExample> &examples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
  WriteMentionsJsonl(out, examples);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::vector<MentionExample> ReadMentionsJsonl(std::istream &in) {
  std::vector<MentionExample> examples;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    try {
      examples.push_back(MentionFromJson(line));
    } catch (const Error &e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return examples;
}

std::vector<MentionExample> ReadMentionsJsonl(
    const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  return ReadMentionsJsonl(in);
}

}  // namespace et4el
