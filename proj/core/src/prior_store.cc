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

#include "et4el/prior_store.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "et4el/error.h"
#include "et4el/parallel.h"
#include "et4el/text.h"
#include "json.hpp"

namespace et4el {

bool CandidateSet::Contains(std::string_view entity) const {
  return std::any_of(candidates.begin(), candidates.end(),
                     [&](const Candidate &c) { return c.entity == entity; });
}

std::string PriorTable::Key(std::string_view mention) const {
  return fold_case_ ? AsciiLower(mention) : std::string(mention);
}

const PriorTable::Row *PriorTable::FindRow(std::string_view mention) const {
  auto it = rows_.find(Key(mention));
  return it == rows_.end() ? nullptr : &it->second;
}

void PriorTable::Add(std::string_view mention, std::string_view entity,
                     uint64_t count) {
  if (count == 0) return;
  Row &row = rows_[Key(mention)];
  row.counts[std::string(entity)] += count;
  row.total += count;
}

void PriorTable::Merge(const PriorTable &other) {
  for (const auto &[mention, row] : other.rows_) {
    for (const auto &[entity, count] : row.counts) Add(mention, entity, count);
  }
}

uint64_t PriorTable::Count(std::string_view mention,
                           std::string_view entity) const {
  const Row *row = FindRow(mention);
  if (row == nullptr) return 0;
  auto it = row->counts.find(std::string(entity));
  return it == row->counts.end() ? 0 : it->second;
}

uint64_t PriorTable::Total(std::string_view mention) const {
  const Row *row = FindRow(mention);
  return row == nullptr ? 0 : row->total;
}

double PriorTable::Probability(std::string_view mention,
                               std::string_view entity) const {
  const Row *row = FindRow(mention);
  if (row == nullptr) return 0.0;
  auto it = row->counts.find(std::string(entity));
  if (it == row->counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(row->total);
}

CandidateSet PriorTable::Candidates(std::string_view mention,
                                    double threshold) const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "candidate threshold must be in [0, 1]");
  }
  CandidateSet set;
  set.mention = std::string(mention);
  const Row *row = FindRow(mention);
  if (row == nullptr) return set;
  for (const auto &[entity, count] : row->counts) {
    double p = static_cast<double>(count) / static_cast<double>(row->total);
    if (p >= threshold) set.candidates.push_back({entity, p});
  }
  std::sort(set.candidates.begin(), set.candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              if (a.prior != b.prior) return a.prior > b.prior;
              return a.entity < b.entity;
            });
  return set;
}

std::vector<std::tuple<std::string, std::string, uint64_t>>
PriorTable::Triples() const {
  std::vector<std::tuple<std::string, std::string, uint64_t>> triples;
  for (const auto &[mention, row] : rows_) {
    for (const auto &[entity, count] : row.counts) {
      triples.emplace_back(mention, entity, count);
    }
  }
  std::sort(triples.begin(), triples.end());
  return triples;
}

void PriorTable::Write(std::ostream &out) const {
  for (const auto &[mention, entity, count] : Triples()) {
    out << mention << '\t' << entity << '\t' << count << '\n';
  }
}

void PriorTable::Save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  Write(out);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

PriorTable PriorTable::Read(std::istream &in, bool fold_case) {
  PriorTable table(fold_case);
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitFields(line, '\t');
    uint64_t count = 0;
    bool ok = fields.size() == 3 && !fields[0].empty() && !fields[1].empty();
    if (ok) {
      auto [ptr, ec] = std::from_chars(
          fields[2].data(), fields[2].data() + fields[2].size(), count);
      ok = ec == std::errc() && ptr == fields[2].data() + fields[2].size() &&
           count > 0;
    }
    if (!ok) {
      throw Error(ErrorCode::kParseError,
                  "prior line " + std::to_string(line_number) +
                      ": expected mention<TAB>entity<TAB>positive count");
    }
    table.Add(fields[0], fields[1], count);
  }
  return table;
}

PriorTable PriorTable::Load(const std::filesystem::path &path,
                            bool fold_case) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  return Read(in, fold_case);
}

bool PriorTable::operator==(const PriorTable &other) const {
  return fold_case_ == other.fold_case_ && Triples() == other.Triples();
}

PriorTable Accumulate(std::span<const AnchorLink> links, bool fold_case) {
  PriorTable table(fold_case);
  for (const auto &[mention, entity] : links) table.Add(mention, entity);
  return table;
}

PriorTable AccumulateParallel(std::span<const AnchorLink> links, int workers,
                              bool fold_case) {
  std::vector<PriorTable> shards(NumShards(links.size(), workers),
                                 PriorTable(fold_case));
  ParallelShards(links.size(), workers,
                 [&](size_t shard, size_t begin, size_t end) {
                   shards[shard] =
                       Accumulate(links.subspan(begin, end - begin), fold_case);
                 });
  PriorTable table(fold_case);
  for (const auto &shard : shards) table.Merge(shard);
  return table;
}

double GoldRecall(
    std::span<const std::pair<CandidateSet, std::string>> records) {
  if (records.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "gold recall of empty input");
  }
  size_t hits = 0;
  for (const auto &[set, gold] : records) {
    if (set.Contains(gold)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

std::string CandidateSetToJson(const CandidateSet &set) {
  nlohmann::ordered_json j;
  j["mention"] = set.mention;
  j["candidates"] = nlohmann::ordered_json::array();
  for (const auto &c : set.candidates) {
    j["candidates"].push_back({c.entity, c.prior});
  }
  return j.dump();
}

CandidateSet CandidateSetFromJson(std::string_view line) {
  try {
    auto j = nlohmann::json::parse(line);
    CandidateSet set;
    set.mention = j.at("mention").get<std::string>();
    for (const auto &c : j.at("candidates")) {
      if (!c.is_array() || c.size() != 2) {
        throw Error(ErrorCode::kParseError,
                    "candidate must be [entity, prior]");
      }
      set.candidates.push_back({c[0].get<std::string>(), c[1].get<double>()});
    }
    std::stable_sort(set.candidates.begin(), set.candidates.end(),
                     [](const Candidate &a, const Candidate &b) {
                       if (a.prior != b.prior) return a.prior > b.prior;
                       return a.entity < b.entity;
                     });
    return set;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed candidate set: ") + e.what());
  }
}

std::vector<CandidateSet> ReadCandidateSets(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  std::vector<CandidateSet> sets;
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    sets.push_back(CandidateSetFromJson(line));
  }
  return sets;
}

void WriteCandidateSets(const std::filesystem::path &path,
                        std::span<const CandidateSet> sets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  for (const auto &set : sets) out << CandidateSetToJson(set) << '\n';
}

}  // namespace et4el
