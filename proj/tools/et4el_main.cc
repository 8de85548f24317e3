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

// Command line entry point for the entity-typing entity linker. Every stage
// reads and writes files; `pipeline` runs all of them in order.
//
// Failures print a single line "error <CODE>: <message>" to stderr and exit
// with status 1.

#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "et4el/error.h"
#include "et4el/pipeline.h"
#include "et4el/synthetic.h"

namespace {

using et4el::PipelineConfig;

struct Flags {
  PipelineConfig config;
  std::string context_mode = "sentence_plus_first_doc_sentence";
  std::string scoring = "sum";
  std::string workdir;
  std::string extra_counts;
  std::string candidates;
  std::string fixture_dir;
  size_t fixture_sentences = 5000;
  size_t fixture_tests = 300;
};

void AddCommon(CLI::App *cmd, Flags &f) {
  cmd->add_option("--seed", f.config.seed, "Seed for all randomness");
  cmd->add_option("--workers", f.config.workers,
                  "Intra-stage threads (1 is the deterministic mode)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--fold-case", f.config.fold_case,
                "Case-fold mention keys of the prior");
}

void AddIngest(CLI::App *cmd, Flags &f, bool with_outputs) {
  cmd->add_option("--articles", f.config.articles, "Article file")
      ->required();
  cmd->add_flag("--split", f.config.split_sentences,
                "Split body lines on '. ', '! ', '? '");
  cmd->add_option("--context-window", f.config.context_window,
                  "Neighbouring-sentence tokens kept per side");
  if (with_outputs) {
    cmd->add_option("--mentions", f.config.mentions, "Output mentions JSONL")
        ->required();
  }
}

void AddPriorInputs(CLI::App *cmd, Flags &f) {
  cmd->add_option("--threshold", f.config.threshold,
                  "Candidate prior threshold (inclusive)");
  cmd->add_option("--candidates", f.candidates,
                  "Precomputed candidate-set JSONL, one line per test mention");
}

void AddBuildPrior(CLI::App *cmd, Flags &f) {
  cmd->add_option("--extra-counts", f.extra_counts,
                  "Additional mention<TAB>entity<TAB>count TSV to merge");
}

void AddVocab(CLI::App *cmd, Flags &f) {
  cmd->add_option("--vocab-size", f.config.vocab_size,
                  "Number of categories kept");
}

void AddTrain(CLI::App *cmd, Flags &f) {
  auto &t = f.config.train;
  cmd->add_option("--n-train", f.config.n_train, "Training sample size");
  cmd->add_option("--n-dev", f.config.n_dev, "Development sample size");
  cmd->add_option("--epochs", t.epochs, "Training epochs");
  cmd->add_option("--lr", t.learning_rate, "Learning rate");
  cmd->add_option("--batch-size", t.batch_size, "Mini-batch size");
  cmd->add_option("--l2", t.l2_penalty, "L2 penalty on W");
  cmd->add_option("--hash-bits", f.config.hash_bits,
                  "log2 of the hashed feature dimension");
}

void AddContext(CLI::App *cmd, Flags &f) {
  cmd->add_option("--context-mode", f.context_mode,
                  "sentence_only | sentence_plus_window50 | "
                  "sentence_plus_first_doc_sentence");
}

void AddLink(CLI::App *cmd, Flags &f) {
  cmd->add_option("--backoff-min-cats", f.config.link.backoff_min_categories,
                  "Back off to the prior below this many categories");
  cmd->add_option("--tie-eps", f.config.link.tie_epsilon,
                  "Back off when the top two scores are this close");
  cmd->add_option("--scoring", f.scoring, "sum | mean | log_odds");
}

void Finalize(Flags &f) {
  f.config.context_mode = et4el::ParseContextMode(f.context_mode);
  f.config.link.mode = et4el::ParseScoringMode(f.scoring);
  if (!f.extra_counts.empty()) f.config.extra_counts = f.extra_counts;
  if (!f.candidates.empty()) f.config.candidates = f.candidates;
  f.config.Validate();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Entity linking by fine-grained entity typing"};
  app.require_subcommand(1);
  Flags f;
  std::function<void()> action;

  auto *ingest = app.add_subcommand(
      "ingest", "Extract hyperlink mentions from an article file");
  AddCommon(ingest, f);
  AddIngest(ingest, f, true);
  ingest->callback([&] { action = [&] { et4el::RunIngest(f.config, std::cerr); }; });

  auto *build_prior = app.add_subcommand(
      "build-prior", "Count anchor statistics into a prior TSV");
  AddCommon(build_prior, f);
  build_prior->add_option("--mentions", f.config.mentions, "Mentions JSONL")
      ->required();
  build_prior->add_option("--prior", f.config.prior, "Output prior TSV")
      ->required();
  AddBuildPrior(build_prior, f);
  build_prior->callback(
      [&] { action = [&] { et4el::RunBuildPrior(f.config, std::cerr); }; });

  auto *build_vocab = app.add_subcommand(
      "build-vocab", "Select categories by distinct candidate mentions");
  AddCommon(build_vocab, f);
  build_vocab->add_option("--test-mentions", f.config.test_mentions,
                          "Target-domain mentions JSONL")
      ->required();
  build_vocab->add_option("--prior", f.config.prior, "Prior TSV")->required();
  build_vocab->add_option("--categories", f.config.categories,
                          "Categories TSV")
      ->required();
  build_vocab->add_option("--vocab", f.config.vocab, "Output vocab file")
      ->required();
  AddPriorInputs(build_vocab, f);
  AddVocab(build_vocab, f);
  build_vocab->callback(
      [&] { action = [&] { et4el::RunBuildVocab(f.config, std::cerr); }; });

  auto *train = app.add_subcommand("train", "Train the typing model");
  AddCommon(train, f);
  train->add_option("--mentions", f.config.mentions, "Mentions JSONL")
      ->required();
  train->add_option("--categories", f.config.categories, "Categories TSV")
      ->required();
  train->add_option("--vocab", f.config.vocab, "Vocab file")->required();
  train->add_option("--model", f.config.model, "Output model file")
      ->required();
  train->add_option("--dev", f.config.dev, "Output development JSONL")
      ->required();
  AddTrain(train, f);
  AddContext(train, f);
  train->callback([&] { action = [&] { et4el::RunTrain(f.config, std::cerr); }; });

  auto *link = app.add_subcommand("link", "Link test mentions");
  AddCommon(link, f);
  link->add_option("--test-mentions", f.config.test_mentions,
                   "Test mentions JSONL")
      ->required();
  link->add_option("--model", f.config.model, "Model file")->required();
  link->add_option("--prior", f.config.prior, "Prior TSV")->required();
  link->add_option("--categories", f.config.categories, "Categories TSV")
      ->required();
  link->add_option("--predictions", f.config.predictions,
                   "Output predictions JSONL")
      ->required();
  AddPriorInputs(link, f);
  AddContext(link, f);
  AddLink(link, f);
  link->callback([&] { action = [&] { et4el::RunLink(f.config, std::cerr); }; });

  auto *eval = app.add_subcommand("eval", "Score predictions and typing");
  AddCommon(eval, f);
  eval->add_option("--test-mentions", f.config.test_mentions,
                   "Test mentions JSONL")
      ->required();
  eval->add_option("--predictions", f.config.predictions, "Predictions JSONL")
      ->required();
  eval->add_option("--prior", f.config.prior, "Prior TSV")->required();
  eval->add_option("--report", f.config.report, "Output report JSON")
      ->required();
  eval->add_option("--report-table", f.config.report_table,
                   "Output human-readable report");
  eval->add_option("--model", f.config.model,
                   "Model file (needed with --dev)");
  eval->add_option("--dev", f.config.dev, "Development JSONL for typing");
  eval->add_option("--typing-threshold", f.config.typing_threshold,
                   "Posterior threshold for a predicted category");
  AddPriorInputs(eval, f);
  AddContext(eval, f);
  eval->callback([&] {
    action = [&] { et4el::RunEval(f.config, std::cout); };
  });

  auto *pipeline = app.add_subcommand("pipeline", "Run every stage in order");
  AddCommon(pipeline, f);
  AddIngest(pipeline, f, false);
  pipeline->add_option("--categories", f.config.categories, "Categories TSV")
      ->required();
  pipeline->add_option("--test-mentions", f.config.test_mentions,
                       "Test mentions JSONL")
      ->required();
  pipeline->add_option("--workdir", f.workdir,
                       "Directory for every stage output")
      ->required();
  pipeline->add_option("--typing-threshold", f.config.typing_threshold,
                       "Posterior threshold for a predicted category");
  AddBuildPrior(pipeline, f);
  AddPriorInputs(pipeline, f);
  AddVocab(pipeline, f);
  AddTrain(pipeline, f);
  AddContext(pipeline, f);
  AddLink(pipeline, f);
  pipeline->callback([&] {
    action = [&] {
      std::filesystem::create_directories(f.workdir);
      f.config.SetWorkdir(f.workdir);
      et4el::RunPipeline(f.config, std::cerr);
    };
  });

  auto *fixture = app.add_subcommand(
      "gen-fixture", "Write a synthetic linking benchmark");
  fixture->add_option("--out", f.fixture_dir, "Output directory")->required();
  fixture->add_option("--seed", f.config.seed, "Generator seed");
  fixture->add_option("--train-sentences", f.fixture_sentences,
                      "Linked sentences in the article corpus");
  fixture->add_option("--test-examples", f.fixture_tests,
                      "Held-out test mentions");
  fixture->callback([&] {
    action = [&] {
      et4el::SyntheticConfig config;
      config.seed = f.config.seed;
      config.train_sentences = f.fixture_sentences;
      config.test_examples = f.fixture_tests;
      et4el::WriteSyntheticCorpus(et4el::GenerateSyntheticCorpus(config),
                                  f.fixture_dir);
    };
  });

  CLI11_PARSE(app, argc, argv);

  try {
    Finalize(f);
    if (action) action();
  } catch (const et4el::Error &e) {
    std::cerr << "error " << et4el::ErrorCodeName(e.code()) << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error INTERNAL: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
