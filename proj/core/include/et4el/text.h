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

#ifndef ET4EL_TEXT_H_
#define ET4EL_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace et4el {

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Joins tokens[begin, end) with single spaces.
std::string JoinTokens(std::span<const std::string> tokens, size_t begin,
                       size_t end);
std::string JoinTokens(std::span<const std::string> tokens);

std::string_view Trim(std::string_view text);

// Lowercases ASCII letters only; other bytes (including UTF-8 sequences)
// pass through unchanged.
std::string AsciiLower(std::string_view text);

// Splits on a single delimiter character, keeping empty fields.
std::vector<std::string_view> SplitFields(std::string_view line, char delim);

}  // namespace et4el

#endif  // ET4EL_TEXT_H_
