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

#ifndef ET4EL_PIPELINE_H_
#define ET4EL_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "et4el/eval.h"
#include "et4el/linker.h"
#include "et4el/typing_model.h"

namespace et4el {

// File-based pipeline stages. Each stage reads its inputs from disk and
// writes exactly its declared outputs, so `pipeline` is the same as running
// ingest, build-prior, build-vocab, train, link and eval in that order.
struct PipelineConfig {
  // Inputs.
  std::filesystem::path articles;
  std::filesystem::path categories;
  std::filesystem::path test_mentions;
  std::optional<std::filesystem::path> extra_counts;  // prior TSV to merge
  std::optional<std::filesystem::path> candidates;    // candidate JSONL

  // Stage outputs.
  std::filesystem::path mentions;  // ingest
  std::filesystem::path prior;     // build-prior
  std::filesystem::path vocab;     // build-vocab
  std::filesystem::path model;     // train
  std::filesystem::path dev;       // train
  std::filesystem::path predictions;  // link
  std::filesystem::path report;       // eval (JSON)
  std::filesystem::path report_table; // eval (text)

  bool split_sentences = false;
  size_t context_window = 50;
  bool fold_case = false;
  size_t vocab_size = 60000;
  double threshold = kDefaultCandidateThreshold;
  size_t n_train = 6000000;
  size_t n_dev = 10000;
  TrainConfig train;
  uint32_t hash_bits = 20;
  ContextMode context_mode = ContextMode::kSentencePlusFirstDocSentence;
  LinkOptions link;
  double typing_threshold = 0.5;
  uint64_t seed = 0;
  int workers = 1;

  // Places every stage output under `dir` with fixed file names.
  void SetWorkdir(const std::filesystem::path &dir);
  uint32_t dim() const { return uint32_t{1} << hash_bits; }
  void Validate() const;
};

// Stage messages (counts, per-epoch losses) go to `log`.
void RunIngest(const PipelineConfig &config, std::ostream &log);
void RunBuildPrior(const PipelineConfig &config, std::ostream &log);
void RunBuildVocab(const PipelineConfig &config, std::ostream &log);
void RunTrain(const PipelineConfig &config, std::ostream &log);
void RunLink(const PipelineConfig &config, std::ostream &log);
EvalReport RunEval(const PipelineConfig &config, std::ostream &log);
EvalReport RunPipeline(const PipelineConfig &config, std::ostream &log);

}  // namespace et4el

#endif  // ET4EL_PIPELINE_H_
