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

#include "et4el/pipeline.h"

#include <fstream>
#include <ostream>
#include <unordered_map>

#include "et4el/error.h"
#include "et4el/parallel.h"
#include "et4el/prior_store.h"
#include "et4el/random.h"
#include "et4el/text.h"
#include "et4el/wiki_ingest.h"

namespace et4el {
namespace {

// Sub-streams of the single user seed.
enum SeedStream : uint64_t {
  kSampleStream = 1,
  kHashStream = 2,
  kTrainStream = 3,
};

std::vector<CandidateSet> CandidatesFor(
    const PipelineConfig &config, const std::vector<MentionExample> &examples,
    const PriorTable &prior) {
  if (config.candidates) {
    std::vector<CandidateSet> sets = ReadCandidateSets(*config.candidates);
    if (sets.size() != examples.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate file has " + std::to_string(sets.size()) +
                      " lines for " + std::to_string(examples.size()) +
                      " test mentions");
    }
    return sets;
  }
  std::vector<CandidateSet> sets;
  sets.reserve(examples.size());
  for (const auto &example : examples) {
    sets.push_back(prior.Candidates(example.mention, config.threshold));
  }
  return sets;
}

void WriteLines(const std::filesystem::path &path,
                const std::vector<std::string> &lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  for (const auto &line : lines) out << line << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
}

std::vector<PredictionRecord> ReadPredictions(
    const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  std::vector<PredictionRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    records.push_back(PredictionFromJson(line));
  }
  return records;
}

TypingModel LoadModel(const PipelineConfig &config) {
  if (config.model.empty() || !std::filesystem::exists(config.model)) {
    throw Error(ErrorCode::kModelNotFound,
                "model file '" + config.model.string() + "' not found");
  }
  return TypingModel::Load(config.model);
}

}  // namespace

void PipelineConfig::SetWorkdir(const std::filesystem::path &dir) {
  mentions = dir / "mentions.jsonl";
  prior = dir / "prior.tsv";
  vocab = dir / "vocab.txt";
  model = dir / "model.json";
  dev = dir / "dev.jsonl";
  predictions = dir / "predictions.jsonl";
  report = dir / "report.json";
  report_table = dir / "report.txt";
}

void PipelineConfig::Validate() const {
  auto fail = [](const std::string &message) {
    throw Error(ErrorCode::kInvalidArgument, message);
  };
  if (vocab_size == 0) fail("--vocab-size must be > 0");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    fail("--threshold must be in [0, 1]");
  }
  if (!(typing_threshold >= 0.0 && typing_threshold <= 1.0)) {
    fail("--typing-threshold must be in [0, 1]");
  }
  if (hash_bits < 1 || hash_bits > 31) fail("--hash-bits must be in [1, 31]");
  if (!(link.tie_epsilon >= 0.0)) fail("--tie-eps must be >= 0");
  if (workers < 1) fail("--workers must be >= 1");
  train.Validate();
}

void RunIngest(const PipelineConfig &config, std::ostream &log) {
  std::vector<RawArticle> articles = ReadArticles(config.articles);
  ExtractOptions options;
  options.split_sentences = config.split_sentences;
  options.context_window = config.context_window;
  IngestDiagnostics diagnostics;
  std::vector<MentionExample> examples =
      ExtractAllExamples(articles, options, config.workers, &diagnostics);
  WriteMentionsJsonl(config.mentions, examples);
  log << "ingest: " << articles.size() << " articles, " << examples.size()
      << " link examples, " << diagnostics.skipped_links()
      << " skipped links (unclosed " << diagnostics.unclosed_links
      << ", nested " << diagnostics.nested_links << ", empty target "
      << diagnostics.empty_targets << ")\n";
}

void RunBuildPrior(const PipelineConfig &config, std::ostream &log) {
  std::vector<MentionExample> examples = ReadMentionsJsonl(config.mentions);
  std::vector<AnchorLink> links;
  links.reserve(examples.size());
  for (const auto &example : examples) {
    if (example.entity) links.emplace_back(example.mention, *example.entity);
  }
  PriorTable table =
      AccumulateParallel(links, config.workers, config.fold_case);
  if (config.extra_counts) {
    table.Merge(PriorTable::Load(*config.extra_counts, config.fold_case));
  }
  table.Save(config.prior);
  log << "build-prior: " << links.size() << " anchors, "
      << table.num_mentions() << " distinct mentions\n";
}

void RunBuildVocab(const PipelineConfig &config, std::ostream &log) {
  std::vector<MentionExample> examples =
      ReadMentionsJsonl(config.test_mentions);
  PriorTable prior = PriorTable::Load(config.prior, config.fold_case);
  CategoryAssignments assignments = ReadCategoryAssignments(config.categories);
  std::vector<CandidateSet> candidates =
      CandidatesFor(config, examples, prior);

  const PrepositionList preps = PrepositionList::Default();
  std::unordered_map<std::string, std::vector<std::string>> expanded;
  for (const auto &[entity, assignment] : assignments) {
    auto &out = expanded[entity];
    for (const auto &raw : assignment.raw_categories) {
      for (auto &category : ExpandCategory(raw, preps)) {
        out.push_back(std::move(category));
      }
    }
  }

  // Only candidate lists are consulted; gold labels never are.
  std::vector<CategoryMentionCounter> shards(
      NumShards(candidates.size(), config.workers));
  ParallelShards(candidates.size(), config.workers,
                 [&](size_t shard, size_t begin, size_t end) {
                   for (size_t i = begin; i < end; ++i) {
                     for (const auto &c : candidates[i].candidates) {
                       auto it = expanded.find(c.entity);
                       if (it == expanded.end()) continue;
                       shards[shard].Add(candidates[i].mention, it->second);
                     }
                   }
                 });
  CategoryMentionCounter counter;
  for (const auto &shard : shards) counter.Merge(shard);
  CategoryVocab vocab = counter.Select(config.vocab_size);
  vocab.Save(config.vocab);
  log << "build-vocab: " << counter.num_categories()
      << " candidate categories, kept " << vocab.size() << "\n";
}

void RunTrain(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  std::vector<MentionExample> links = ReadMentionsJsonl(config.mentions);
  CategoryAssignments assignments = ReadCategoryAssignments(config.categories);
  CategoryVocab vocab = CategoryVocab::Load(config.vocab);
  IngestDiagnostics diagnostics;
  std::vector<MentionExample> labeled = AttachCategories(
      links, assignments, vocab, PrepositionList::Default(), &diagnostics);
  log << "train: " << labeled.size() << " labeled examples ("
      << diagnostics.missing_assignments << " without category records, "
      << diagnostics.no_vocab_categories << " without vocabulary categories)\n";

  TrainDevSplit split =
      SampleTrainingSet(labeled, config.n_train, config.n_dev,
                        DeriveSeed(config.seed, kSampleStream));
  WriteMentionsJsonl(config.dev, split.dev);

  const uint32_t dim = config.dim();
  const uint64_t hash_seed = DeriveSeed(config.seed, kHashStream);
  auto featurize = [&](const std::vector<MentionExample> &examples) {
    std::vector<TrainingExample> out(examples.size());
    ParallelShards(examples.size(), config.workers,
                   [&](size_t, size_t begin, size_t end) {
                     for (size_t i = begin; i < end; ++i) {
                       MentionExample context = BuildContext(
                           examples[i], config.context_mode,
                           config.context_window);
                       out[i].features = Featurize(context, dim, hash_seed);
                       out[i].labels = LabelsFor(examples[i], vocab);
                     }
                   });
    return out;
  };
  std::vector<TrainingExample> train = featurize(split.train);
  std::vector<TrainingExample> dev = featurize(split.dev);

  TrainConfig train_config = config.train;
  train_config.seed = DeriveSeed(config.seed, kTrainStream);
  train_config.workers = config.workers;
  TrainReport report;
  TypingModel model =
      Train(train, vocab, dim, hash_seed, train_config, dev, &report);
  for (size_t e = 0; e < report.epoch_train_losses.size(); ++e) {
    log << "train: epoch " << e + 1 << " train loss "
        << report.epoch_train_losses[e];
    if (e < report.epoch_dev_losses.size()) {
      log << " dev loss " << report.epoch_dev_losses[e];
    }
    log << "\n";
  }
  model.Save(config.model);
}

void RunLink(const PipelineConfig &config, std::ostream &log) {
  TypingModel model = LoadModel(config);
  std::vector<MentionExample> examples =
      ReadMentionsJsonl(config.test_mentions);
  PriorTable prior = PriorTable::Load(config.prior, config.fold_case);
  CategoryAssignments assignments = ReadCategoryAssignments(config.categories);
  EntityCategoryIndex index =
      EntityCategoryIndex::Build(assignments, model.vocab());
  std::vector<CandidateSet> candidates =
      CandidatesFor(config, examples, prior);

  LinkDiagnostics diagnostics;
  std::vector<std::string> lines(examples.size());
  ParallelShards(examples.size(), config.workers,
                 [&](size_t, size_t begin, size_t end) {
                   for (size_t i = begin; i < end; ++i) {
                     if (candidates[i].empty()) {
                       lines[i] = PredictionToJson(std::nullopt,
                                                   examples[i].mention);
                       continue;
                     }
                     TypePosterior posterior =
                         model.PredictExample(BuildContext(
                             examples[i], config.context_mode,
                             config.context_window));
                     LinkPrediction prediction =
                         Link(posterior, candidates[i], index, &prior,
                              config.link, &diagnostics);
                     lines[i] = PredictionToJson(prediction,
                                                 examples[i].mention);
                   }
                 });
  WriteLines(config.predictions, lines);
  log << "link: " << examples.size() << " mentions, " << diagnostics.backoffs
      << " prior backoffs, " << diagnostics.unindexed_candidates
      << " candidates without category records\n";
}

EvalReport RunEval(const PipelineConfig &config, std::ostream &log) {
  std::vector<MentionExample> examples =
      ReadMentionsJsonl(config.test_mentions);
  std::vector<PredictionRecord> predictions =
      ReadPredictions(config.predictions);
  if (predictions.size() != examples.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::to_string(predictions.size()) + " predictions for " +
                    std::to_string(examples.size()) + " test mentions");
  }
  PriorTable prior = PriorTable::Load(config.prior, config.fold_case);
  std::vector<CandidateSet> candidates =
      CandidatesFor(config, examples, prior);

  std::vector<std::pair<std::string, std::string>> linked, frequent;
  std::vector<std::pair<CandidateSet, std::string>> recall;
  size_t backoffs = 0;
  for (size_t i = 0; i < examples.size(); ++i) {
    if (!examples[i].entity) {
      throw Error(ErrorCode::kMissingField,
                  "test mention " + std::to_string(i + 1) +
                      " has no gold entity");
    }
    const std::string &gold = *examples[i].entity;
    linked.emplace_back(predictions[i].chosen.value_or(""), gold);
    frequent.emplace_back(
        candidates[i].empty() ? "" : MostFrequentEntity(candidates[i]), gold);
    recall.emplace_back(candidates[i], gold);
    backoffs += predictions[i].used_backoff;
  }

  EvalReport report;
  report.num_examples = examples.size();
  report.linking_accuracy = LinkingAccuracy(linked);
  report.most_frequent_entity_accuracy = LinkingAccuracy(frequent);
  report.gold_recall = GoldRecall(recall);
  report.backoff_rate =
      static_cast<double>(backoffs) / static_cast<double>(examples.size());

  if (!config.dev.empty() && std::filesystem::exists(config.dev)) {
    TypingModel model = LoadModel(config);
    std::vector<MentionExample> dev = ReadMentionsJsonl(config.dev);
    std::vector<TypePosterior> posteriors(dev.size());
    std::vector<LabelSet> golds(dev.size());
    ParallelShards(dev.size(), config.workers,
                   [&](size_t, size_t begin, size_t end) {
                     for (size_t i = begin; i < end; ++i) {
                       posteriors[i] = model.PredictExample(BuildContext(
                           dev[i], config.context_mode,
                           config.context_window));
                       golds[i] = LabelsFor(dev[i], model.vocab());
                     }
                   });
    report.typing = TypingMetrics(posteriors, golds, model.vocab(),
                                  config.typing_threshold);
  }

  WriteText(config.report, EvalReportToJson(report));
  std::string table = FormatEvalReport(report);
  if (!config.report_table.empty()) WriteText(config.report_table, table);
  log << table;
  return report;
}

EvalReport RunPipeline(const PipelineConfig &config, std::ostream &log) {
  config.Validate();
  RunIngest(config, log);
  RunBuildPrior(config, log);
  RunBuildVocab(config, log);
  RunTrain(config, log);
  RunLink(config, log);
  return RunEval(config, log);
}

}  // namespace et4el
