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

#include "et4el/linker.h"

#include <algorithm>
#include <cmath>

#include "et4el/error.h"
#include "json.hpp"

namespace et4el {
namespace {

const std::vector<uint32_t> kNoCategories;

double PriorOf(const CandidateSet &candidates, const Candidate &candidate,
               const PriorTable *prior) {
  return prior != nullptr ? prior->Probability(candidates.mention,
                                               candidate.entity)
                          : candidate.prior;
}

void RequireCandidates(const CandidateSet &candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "empty candidate set for mention '" + candidates.mention + "'");
  }
}

}  // namespace

void EntityCategoryIndex::Set(std::string entity,
                              std::vector<uint32_t> category_ids) {
  std::sort(category_ids.begin(), category_ids.end());
  category_ids.erase(std::unique(category_ids.begin(), category_ids.end()),
                     category_ids.end());
  entities_[std::move(entity)] = std::move(category_ids);
}

const std::vector<uint32_t> *EntityCategoryIndex::Find(
    std::string_view entity) const {
  auto it = entities_.find(std::string(entity));
  return it == entities_.end() ? nullptr : &it->second;
}

EntityCategoryIndex EntityCategoryIndex::Build(
    const CategoryAssignments &assignments, const CategoryVocab &vocab,
    const PrepositionList &preps) {
  EntityCategoryIndex index;
  for (const auto &[entity, assignment] : assignments) {
    std::vector<uint32_t> ids;
    for (const auto &raw : assignment.raw_categories) {
      for (const auto &category : ExpandCategory(raw, preps)) {
        if (auto id = vocab.Find(category)) ids.push_back(*id);
      }
    }
    index.Set(entity, std::move(ids));
  }
  return index;
}

std::string_view ScoringModeName(ScoringMode mode) {
  switch (mode) {
    case ScoringMode::kSum: return "sum";
    case ScoringMode::kMean: return "mean";
    case ScoringMode::kLogOdds: return "log_odds";
  }
  return "sum";
}

ScoringMode ParseScoringMode(std::string_view name) {
  if (name == "sum") return ScoringMode::kSum;
  if (name == "mean") return ScoringMode::kMean;
  if (name == "log_odds") return ScoringMode::kLogOdds;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scoring mode '" + std::string(name) + "'");
}

std::vector<ScoredCandidate> ScoreCandidates(const TypePosterior &posterior,
                                             const CandidateSet &candidates,
                                             const EntityCategoryIndex &index,
                                             ScoringMode mode,
                                             LinkDiagnostics *diagnostics) {
  RequireCandidates(candidates);
  std::vector<ScoredCandidate> scores;
  scores.reserve(candidates.size());
  for (const auto &candidate : candidates.candidates) {
    const std::vector<uint32_t> *ids = index.Find(candidate.entity);
    if (ids == nullptr) {
      if (diagnostics != nullptr) ++diagnostics->unindexed_candidates;
      ids = &kNoCategories;
    }
    double score = 0.0;
    for (uint32_t id : *ids) {
      if (id >= posterior.size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "category id " + std::to_string(id) +
                        " outside the posterior vector");
      }
      double t = posterior.probs[id];
      score += mode == ScoringMode::kLogOdds ? std::log(t / (1.0 - t)) : t;
    }
    if (mode == ScoringMode::kMean && !ids->empty()) {
      score /= static_cast<double>(ids->size());
    }
    scores.push_back({candidate.entity, score});
  }
  return scores;
}

LinkPrediction Link(const TypePosterior &posterior,
                    const CandidateSet &candidates,
                    const EntityCategoryIndex &index, const PriorTable *prior,
                    const LinkOptions &options,
                    LinkDiagnostics *diagnostics) {
  RequireCandidates(candidates);
  std::vector<ScoredCandidate> scores =
      ScoreCandidates(posterior, candidates, index, options.mode, diagnostics);

  struct Ranked {
    const ScoredCandidate *scored;
    double prior;
    size_t num_categories;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(scores.size());
  for (size_t c = 0; c < scores.size(); ++c) {
    const auto *ids = index.Find(scores[c].entity);
    ranked.push_back({&scores[c],
                      PriorOf(candidates, candidates.candidates[c], prior),
                      ids == nullptr ? 0 : ids->size()});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked &a, const Ranked &b) {
    if (a.scored->score != b.scored->score) {
      return a.scored->score > b.scored->score;
    }
    if (a.prior != b.prior) return a.prior > b.prior;
    return a.scored->entity < b.scored->entity;
  });

  LinkPrediction prediction;
  prediction.mention = candidates.mention;
  const Ranked &top = ranked.front();
  bool sparse = top.num_categories < options.backoff_min_categories;
  bool tied = ranked.size() >= 2 &&
              top.scored->score - ranked[1].scored->score <=
                  options.tie_epsilon;
  if (sparse || tied) {
    auto best = std::min_element(
        ranked.begin(), ranked.end(), [](const Ranked &a, const Ranked &b) {
          if (a.prior != b.prior) return a.prior > b.prior;
          return a.scored->entity < b.scored->entity;
        });
    prediction.chosen = best->scored->entity;
    prediction.used_backoff = true;
    if (diagnostics != nullptr) ++diagnostics->backoffs;
  } else {
    prediction.chosen = top.scored->entity;
  }
  prediction.scores.reserve(ranked.size());
  for (const auto &r : ranked) prediction.scores.push_back(*r.scored);
  return prediction;
}

std::string MostFrequentEntity(const CandidateSet &candidates) {
  RequireCandidates(candidates);
  auto best = std::min_element(
      candidates.candidates.begin(), candidates.candidates.end(),
      [](const Candidate &a, const Candidate &b) {
        if (a.prior != b.prior) return a.prior > b.prior;
        return a.entity < b.entity;
      });
  return best->entity;
}

std::string PredictionToJson(const std::optional<LinkPrediction> &prediction,
                             std::string_view mention) {
  nlohmann::ordered_json j;
  j["mention"] = std::string(mention);
  if (prediction) {
    j["chosen"] = prediction->chosen;
    j["used_backoff"] = prediction->used_backoff;
  } else {
    j["chosen"] = nullptr;
    j["used_backoff"] = false;
  }
  j["scores"] = nlohmann::ordered_json::array();
  if (prediction) {
    for (const auto &s : prediction->scores) {
      j["scores"].push_back({s.entity, s.score});
    }
  }
  return j.dump();
}

PredictionRecord PredictionFromJson(std::string_view line) {
  try {
    auto j = nlohmann::json::parse(line);
    PredictionRecord record;
    record.mention = j.at("mention").get<std::string>();
    if (!j.at("chosen").is_null()) {
      record.chosen = j.at("chosen").get<std::string>();
    }
    record.used_backoff = j.at("used_backoff").get<bool>();
    for (const auto &s : j.at("scores")) {
      record.scores.push_back({s.at(0).get<std::string>(),
                               s.at(1).get<double>()});
    }
    return record;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed prediction: ") + e.what());
  }
}

}  // namespace et4el
