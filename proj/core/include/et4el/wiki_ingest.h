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

#ifndef ET4EL_WIKI_INGEST_H_
#define ET4EL_WIKI_INGEST_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "et4el/category_system.h"
#include "et4el/mention.h"

namespace et4el {

// One source article. The body holds one sentence per line unless sentence
// splitting is requested at extraction time.
struct RawArticle {
  std::string title;
  std::string body;
  // Token count of the document's first sentence after markup removal, when
  // the source marks it explicitly. Otherwise the first body sentence is used.
  std::optional<size_t> first_sentence_end;
};

struct CategoryAssignment {
  std::string entity;
  std::vector<std::string> raw_categories;  // no duplicates, input order
};

using CategoryAssignments = std::map<std::string, CategoryAssignment>;

// A single hyperlink occurrence after markup removal.
struct LinkOccurrence {
  std::string mention;
  std::string entity;
  std::vector<std::string> tokens;
  TokenSpan span;
  size_t sentence_index = 0;
};

// Counters shared by concurrent ingestion workers.
struct IngestDiagnostics {
  std::atomic<uint64_t> unclosed_links{0};
  std::atomic<uint64_t> nested_links{0};
  std::atomic<uint64_t> empty_targets{0};
  std::atomic<uint64_t> missing_assignments{0};
  std::atomic<uint64_t> no_vocab_categories{0};

  uint64_t skipped_links() const {
    return unclosed_links + nested_links + empty_targets;
  }
};

struct ExtractOptions {
  // Split body lines further on ". ", "! " and "? ".
  bool split_sentences = false;
  // Tokens of neighbouring sentences kept on each side for the window
  // context variant.
  size_t context_window = 50;
};

// Sentences of an article body: its lines, optionally split at sentence
// delimiters that occur outside link markup. Blank sentences are dropped.
std::vector<std::string> SplitSentences(std::string_view body, bool split);

// Parses one sentence. Link grammar: [[Target]] or [[Target|anchor]]. Link
// boundaries are token boundaries. Malformed links (unclosed, nested, empty
// target) are skipped and counted in diagnostics; their text is kept as plain
// tokens.
struct ParsedSentence {
  std::vector<std::string> tokens;
  std::vector<LinkOccurrence> links;
};
ParsedSentence ParseSentence(std::string_view sentence,
                             IngestDiagnostics *diagnostics = nullptr);

// One tuple per well-formed link occurrence, in document order.
std::vector<LinkOccurrence> ExtractLinks(const RawArticle &article,
                                         const ExtractOptions &options = {},
                                         IngestDiagnostics *diagnostics =
                                             nullptr);

// Same links as ExtractLinks, packaged as MentionExamples with the document
// first sentence and neighbouring-sentence context filled in. categories is
// left unset.
std::vector<MentionExample> ExtractExamples(const RawArticle &article,
                                            const ExtractOptions &options = {},
                                            IngestDiagnostics *diagnostics =
                                                nullptr);

// Runs ExtractExamples over all articles with `workers` threads; output keeps
// article order.
std::vector<MentionExample> ExtractAllExamples(
    std::span<const RawArticle> articles, const ExtractOptions &options,
    int workers, IngestDiagnostics *diagnostics = nullptr);

// Article file: records separated by a line "%%%%"; the first line of a record
// is the title, the remaining lines the body.
std::vector<RawArticle> ReadArticles(std::istream &in);
std::vector<RawArticle> ReadArticles(const std::filesystem::path &path);
void WriteArticles(std::ostream &out, std::span<const RawArticle> articles);

// Categories TSV: entity<TAB>category per line.
CategoryAssignments ReadCategoryAssignments(std::istream &in);
CategoryAssignments ReadCategoryAssignments(const std::filesystem::path &path);

// Labels link examples with their entity's expanded categories restricted to
// the vocabulary, in vocabulary rank order. Examples without an assignment
// record or without any in-vocabulary category are dropped and counted.
std::vector<MentionExample> AttachCategories(
    std::span<const MentionExample> links,
    const CategoryAssignments &assignments, const CategoryVocab &vocab,
    const PrepositionList &preps = PrepositionList::Default(),
    IngestDiagnostics *diagnostics = nullptr);

struct TrainDevSplit {
  std::vector<MentionExample> train;
  std::vector<MentionExample> dev;
};

// Disjoint uniform samples without replacement, deterministic in seed.
// Throws Error(kInsufficientData) when n_train + n_dev exceeds the input.
TrainDevSplit SampleTrainingSet(std::span<const MentionExample> examples,
                                size_t n_train, size_t n_dev, uint64_t seed);

}  // namespace et4el

#endif  // ET4EL_WIKI_INGEST_H_
